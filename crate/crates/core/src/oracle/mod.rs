//! Ground truth computed without the classification: exhaustive search over
//! tiny finite fields, randomized stability testing, and the cross-check
//! report.

mod exhaustive;
mod randomized;
mod report;

pub use exhaustive::{
    enumerate_automorphisms, enumerate_automorphisms_within, enumerate_subspaces, enumerate_subspaces_within,
    exhaustive_stable_set, gaussian_binomial, subspace_count, SubspaceStream, DEFAULT_BUDGET,
};
pub use randomized::{randomized_stability, RandomizedReport, StabilityTester};
pub use report::{cross_validate, CheckLine, Report, ValidationMode, FULL_CHECK_MAX_N};
