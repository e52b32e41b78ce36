use serde::Serialize;
use serde_json::Value;

/// Outcome of one exact check, in the shape written to JSON reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationRecord {
    pub check: String,
    pub lie_type: String,
    pub parameters: Value,
    pub witness: Value,
    pub pass: bool,
}

impl CertificationRecord {
    pub fn new(check: &str, lie_type: &str, parameters: Value, witness: Value, pass: bool) -> Self {
        CertificationRecord {
            check: check.to_string(),
            lie_type: lie_type.to_string(),
            parameters,
            witness,
            pass,
        }
    }
}
