use thiserror::Error;

/// Internal-consistency failures of the level-graph machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// A graph violated a structural invariant.
    #[error("invalid level graph: {0}")]
    Invalid(String),
    /// A graph expected in an enumeration was not found there.
    #[error("internal consistency: {0}")]
    Consistency(String),
    /// Arithmetic failure in an index computation.
    #[error("arithmetic: {0}")]
    Arithmetic(String),
}

impl From<exact::ExactError> for GraphError {
    fn from(e: exact::ExactError) -> Self {
        GraphError::Arithmetic(e.to_string())
    }
}
