use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural error: {0}")]
    Structure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bound too small: {0}")]
    BoundTooSmall(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structure(msg: impl Into<String>) -> Error {
    Error::Structure(msg.into())
}
