use thiserror::Error;

/// Errors raised by the algebra constructors and verifiers.
///
/// A nonzero residual from an identity check is reported through a verdict,
/// never through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("graph vertex {vertex} is malformed: {reason}")]
    MalformedGraph { vertex: usize, reason: String },
    #[error("partition rejected: {0}")]
    InvalidPartition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
