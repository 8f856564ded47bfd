//! Invariants of generalized strata of differentials.
//!
//! * [`euler_characteristic`]: the orbifold Euler characteristic as a sum
//!   over all boundary graphs of products of top `xi`-powers of the levels;
//! * [`c1_log_cotangent`], [`chern_class`], [`chern_polynomial`]: Chern
//!   classes of the logarithmic cotangent bundle, with the top class checked
//!   against the Euler characteristic;
//! * [`chern_character`] and [`exponential_boundary`]: the Chern character
//!   and the exponential of the correction class as push-forwards of
//!   inverse Todd classes;
//! * [`hyperelliptic_chi`] and [`cross_check`]: closed forms and gluing
//!   identities between published values.

mod boundary;
mod checks;
mod chern;
mod euler;

pub use boundary::{all_graphs, degree_part, inverse_todd, k_over_aut, PushforwardClass, PushforwardTerm};
pub use checks::{cross_check, hyperelliptic_chi, ChiTable, CrossCheckLedger, CrossCheckRow, HyperellipticVariant};
pub use chern::{c1_log_cotangent, chern_character, chern_class, chern_polynomial, exponential_boundary, ChernReport};
pub use euler::{align, euler_characteristic, EulerReport, EulerRow, LevelFactor};
