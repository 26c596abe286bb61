use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^16")]
    InvalidModulus(u64),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("ideal is not m-primary and no degree cap was supplied")]
    NotMPrimary,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear algebra: {0}")]
    Linear(String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("exponent cap exceeded: {0}")]
    CapExceeded(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
