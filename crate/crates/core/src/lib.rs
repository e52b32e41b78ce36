//! Exact certification of the equivariant cohomology ring of the Peterson
//! variety in every Lie type.
//!
//! The ring is built twice: once as a GKM restriction model (Schubert classes
//! localized at the `2^n` torus-fixed points `w_K`), and once as the quotient
//! `Q[x_1, .., x_n, t] / J` by quadrics read off the Cartan matrix. The
//! [`certify`] module checks that the two agree.

pub mod billey;
pub mod certify;
pub mod commalg;
pub mod error;
pub mod peterson;
pub mod record;
pub mod rootpoly;
pub mod roots;
pub mod tpoly;
pub mod weyl;

pub use error::{Error, Result};
