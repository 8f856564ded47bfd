use thiserror::Error;

/// Errors raised by the exact kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// An argument violated the documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A matrix did not have the advertised shape.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A textual rational could not be parsed.
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
