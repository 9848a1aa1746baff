//! Permutation groups through transversal systems.
//!
//! A [`TransversalSystem`] stores, for each level `k`, coset representatives
//! that fix every point above `k` and a list of generators for that level.
//! [`sims::build`] fills it from an ordered generator list; afterwards
//! membership is a sift and the group order is the product of the level sizes.
//! Every multiplication performed during construction is charged to
//! [`BuildStats`], which the [`analysis`] module uses to check growth rates
//! and structural bounds.

pub mod analysis;
pub mod families;
pub mod perm;
pub mod sims;
pub mod transversal;

pub use analysis::{check_bounds, growth_fit, minimal_product, theta, BoundReport, GrowthFit};
pub use families::{brute_force_closure, FamilySpec, GeneratorSet, StaircaseKind};
pub use num_bigint::BigUint;
pub use perm::{parse_cycles, InverseRep, Perm, PermError};
pub use sims::{build, BuildStats, SimsError, Strategy};
pub use transversal::{MembershipTrace, TransversalSystem};
