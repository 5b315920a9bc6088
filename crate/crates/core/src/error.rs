use thiserror::Error;

/// Errors raised by the arithmetic kernels and the epsilon-factor routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("unsupported prime {0}: only odd primes are handled")]
    UnsupportedPrime(u64),

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// A mathematical guarantee failed to hold. Seeing this means a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
