use thiserror::Error;

/// A violated stratum invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    /// The orders on a component do not sum to `2g - 2`.
    #[error("component {component}: orders sum to {sum}, but 2g-2 = {expected}")]
    Degree {
        /// Component index.
        component: usize,
        /// Actual sum of orders.
        sum: i64,
        /// Required sum.
        expected: i64,
    },
    /// A component has `2g - 2 + n <= 0`.
    #[error("component {0} is unstable (2g-2+n <= 0)")]
    Unstable(usize),
    /// A residue part refers to a point that does not exist.
    #[error("residue part {part} refers to missing point ({comp}, {idx})")]
    MissingPoint {
        /// Part index.
        part: usize,
        /// Component index of the reference.
        comp: usize,
        /// Point index of the reference.
        idx: usize,
    },
    /// A residue part contains a point that is not a pole of order at most -2.
    #[error("residue part {part} contains ({comp}, {idx}) of order {order}; parts may only contain poles of order <= -2")]
    NotAHigherPole {
        /// Part index.
        part: usize,
        /// Component index.
        comp: usize,
        /// Point index.
        idx: usize,
        /// The offending order.
        order: i64,
    },
    /// Two parts share a point, or a part repeats a point.
    #[error("point ({comp}, {idx}) appears in more than one residue part slot")]
    NotDisjoint {
        /// Component index.
        comp: usize,
        /// Point index.
        idx: usize,
    },
    /// A residue part is empty.
    #[error("residue part {0} is empty")]
    EmptyPart(usize),
    /// The spec has no components.
    #[error("a stratum needs at least one component")]
    NoComponents,
    /// Malformed JSON.
    #[error("cannot parse stratum spec: {0}")]
    Parse(String),
}
