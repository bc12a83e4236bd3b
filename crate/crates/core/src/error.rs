use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("inversion vector coordinate {index} is {value}, must lie in 0..={max}")]
    CoordinateOutOfRange {
        index: usize,
        value: usize,
        max: usize,
    },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("{param} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        param: &'static str,
        value: String,
        cap: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("malformed codebook file: {0}")]
    Format(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn cap(param: &'static str, value: impl ToString, cap: impl ToString) -> Error {
    Error::CapExceeded {
        param,
        value: value.to_string(),
        cap: cap.to_string(),
    }
}
