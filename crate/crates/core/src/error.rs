use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator-set mismatch: {0}")]
    GeneratorMismatch(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("negative exponent on non-Laurent generator `{0}`")]
    NegativeExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("not a highest weight vector: {0}")]
    NotHighestWeight(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("truncation window too small: {0}")]
    WindowTooSmall(String),
    #[error("convention error: {0}")]
    Convention(String),
}

pub type Result<T> = std::result::Result<T, Error>;
