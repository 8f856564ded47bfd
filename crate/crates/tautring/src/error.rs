use levelgraphs::GraphError;
use thiserror::Error;

/// Failures of the tautological calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautError {
    /// A failure in the level-graph layer.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// No rule or fixture evaluates the integral; `chain` lists the
    /// integrals whose evaluation required it, innermost first.
    #[error("cannot evaluate {integrand} on {spec}{}", render_chain(.chain))]
    Unevaluatable {
        /// The stratum, as spec JSON.
        spec: String,
        /// The integrand.
        integrand: String,
        /// Enclosing integrals.
        chain: Vec<String>,
    },
    /// A caller violated a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Two computations that must agree did not.
    #[error("internal consistency: {0}")]
    Consistency(String),
}

fn render_chain(chain: &[String]) -> String {
    chain.iter().map(|c| format!("\n  required by {c}")).collect()
}

impl TautError {
    /// Records that this error occurred while evaluating `context`.
    pub fn within(mut self, context: impl FnOnce() -> String) -> Self {
        if let TautError::Unevaluatable { chain, .. } = &mut self {
            if chain.len() < 32 {
                chain.push(context());
            }
        }
        self
    }
}
