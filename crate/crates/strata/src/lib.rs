//! Generalized strata of abelian differentials.
//!
//! A [`StratumSpec`] is a finite list of connected components, each with a
//! genus and a list of zero/pole orders, together with a partition of some
//! poles into residue parts. Parts flagged `constrained` impose "the residues
//! in this part sum to zero"; other parts are stored but inert.
//!
//! Marked points are addressed globally by [`Point`] `(component, index)`.
//! Downstream crates never renumber points behind the caller's back: when a
//! relabelling is needed (for cache keys) it is returned explicitly.

mod error;
mod spec;

pub use error::StrataError;
pub use spec::{Component, ComponentKind, DimensionData, Point, ResiduePart, StratumSpec};
