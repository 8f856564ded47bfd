//! Top-degree integrals on generalized strata of differentials.
//!
//! [`Integrator`] evaluates classes of the tautological calculus by
//! recursion over boundary divisors, residue conditions and the relation
//! between `xi` and cotangent classes. Top `xi`-powers of connected strata
//! without residue conditions are supplied by a [`BackendRegistry`] of
//! named closed forms and [`FixtureRegistry`] lookups.

mod backend;
mod error;
mod fixtures;
mod integrator;

pub use backend::{
    BackendRegistry, DimensionZero, Fixtures, GenusOneClosedForms, GenusZeroSinglePole, HolomorphicVanishing,
    XiTopBackend,
};
pub use error::EvalError;
pub use fixtures::{EvalKey, FixtureEntry, FixtureRegistry, Integrand};
pub use integrator::{Integrator, RULE_RECURSION, RULE_RESIDUE_REMOVAL};
