use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: {constraint}")]
    InvalidRank {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("node index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// Signals a bug in the pipeline rather than bad input.
    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("classes live over different root systems")]
    AmbientMismatch,

    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NonSquare { rows: usize, row: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
