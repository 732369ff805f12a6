use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OspError {
    #[error("variable signatures do not match")]
    SignatureMismatch,
    #[error("operand is not parity homogeneous")]
    MixedParity,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("not a weight vector")]
    NotAWeightVector,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("index tuple violates clause: {0}")]
    Clause(String),
}

pub type Result<T> = std::result::Result<T, OspError>;
