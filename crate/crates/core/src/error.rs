use thiserror::Error;

/// Errors reported by the library.
///
/// `Internal` marks a violated invariant that valid input can never trigger;
/// everything else is a problem with the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("evaluation step limit of {0} exceeded")]
    StepLimit(u64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::StepLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
