//! The tautological calculus on compactified generalized strata.
//!
//! Classes on a stratum are polynomials in `xi`, the top-level correction
//! class `L`, cotangent classes `psi_p` and boundary divisors `[D_G]`
//! ([`TautClass`]). Products are kept formal; they are resolved by
//! restricting to one boundary divisor at a time ([`DivisorData::restrict`]),
//! which turns a class on the ambient stratum into a sum of products of
//! classes on the two level strata of the divisor ([`SplitClass`]).
//!
//! The relations provided are the expression of `xi` through a `psi` class
//! ([`xi_as_psi`]), the two expressions of the normal bundle of a divisor
//! ([`DivisorData::normal_bundle`], [`DivisorData::normal_bundle_via_edge`])
//! and the removal of a residue condition ([`remove_residue_condition`]).
//! Integration of level classes is delegated to a [`LevelIntegrator`].

mod class;
mod error;
mod generator;
mod relations;
mod ring;

pub use class::{Atom, ClassTerm, Monomial, SplitClass, TautClass};
pub use error::TautError;
pub use generator::{evaluate_generator, integrate_on_graph, integrate_split, AddGen, LevelIntegrator};
pub use relations::{
    boundary_term_of_removal, correction_class, psi_as_xi, remove_residue_condition, xi_as_psi, ResidueRemoval,
};
pub use ring::{DivisorData, GraphRings, RingCache, StratumRing};
