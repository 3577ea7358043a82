use thiserror::Error;

/// Errors raised by constructions, index evaluation and configuration parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    /// The prime is too small for the requested construction to be nondegenerate.
    #[error("degenerate scale: {0}")]
    DegenerateScale(String),

    /// A construction produced a claimed exceptional direction that fails the exact test.
    #[error("claim rejected: {0}")]
    ClaimRejected(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
