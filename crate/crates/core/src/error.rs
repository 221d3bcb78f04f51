use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),
    /// A configured pair-count or degree bound was exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// A cross-check between independent computations failed. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    /// The requested invariant is only defined for Cohen-Macaulay rings.
    #[error("undefined: {0}")]
    Undefined(String),
    /// Asked for something outside the supported range (e.g. cone dimension).
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
