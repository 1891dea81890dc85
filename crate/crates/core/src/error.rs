//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("integer overflow while {0}")]
    Overflow(String),

    #[error("fit failure: {0}")]
    FitFailure(String),

    #[error("quadrature failure: observed discrepancy {observed:e} exceeds allowed {allowed:e}")]
    QuadratureFailure { observed: f64, allowed: f64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("cache invalid: {0}")]
    CacheInvalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }
}
