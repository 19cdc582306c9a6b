use thiserror::Error;

use crate::decomposition::{LayeringViolation, TdViolation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported object pair: {0}")]
    UnsupportedPair(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("{what} exceeds guard ({actual} > {limit})")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("invalid tree decomposition: {0}")]
    InvalidTd(#[from] TdViolation),
    #[error("invalid layering: {0}")]
    InvalidLayering(#[from] LayeringViolation),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors raised by a size or state guard.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    /// True for errors that report a failed certificate check.
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            Error::InvalidTd(_) | Error::InvalidLayering(_) | Error::BoundViolated(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
