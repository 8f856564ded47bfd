//! Exact arithmetic kernels shared by every other crate in the workspace.
//!
//! Everything here is a pure function over arbitrary-precision integers or
//! rationals: there is no floating point anywhere. The crate provides
//!
//! * [`Rational`], a lowest-terms rational that serializes as `"p/q"`;
//! * [`lcm_list`], [`multinomial`] and [`binomial`] for the combinatorial
//!   constants that appear in intersection numbers;
//! * [`IntegerMatrix`], [`smith_diagonal`], [`lattice_index`] and
//!   [`orbit_count`] for twist-group indices;
//! * [`rank`] and [`in_row_space`] for linear algebra over the rationals.

mod comb;
mod error;
mod lattice;
mod linalg;
mod rational;

pub use comb::{binomial, factorial, lcm_list, multinomial};
pub use error::ExactError;
pub use lattice::{lattice_index, orbit_count, smith_diagonal, IntegerMatrix, LatticeIndex};
pub use linalg::{in_row_space, rank};
pub use num_bigint::{BigInt, BigUint};
pub use rational::Rational;
