use tautring::TautError;
use thiserror::Error;

/// Failures of evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// A failure of the tautological calculus, including missing fixtures.
    #[error(transparent)]
    Taut(#[from] TautError),
    /// Two fixtures disagree on the same key.
    #[error("fixture collision for {key}: {existing} ({existing_provenance}) vs {new} ({new_provenance})")]
    FixtureCollision {
        /// The key, rendered.
        key: String,
        /// The registered value.
        existing: String,
        /// Where it came from.
        existing_provenance: String,
        /// The rejected value.
        new: String,
        /// Where it came from.
        new_provenance: String,
    },
    /// A fixture file could not be read.
    #[error("fixture file: {0}")]
    FixtureFormat(String),
}

impl EvalError {
    /// Whether the error is a missing evaluation rule (as opposed to an
    /// internal inconsistency).
    pub fn is_unevaluatable(&self) -> bool {
        matches!(self, EvalError::Taut(TautError::Unevaluatable { .. }))
    }
}
