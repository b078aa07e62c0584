//! Aut-stable subspaces and subalgebras: canonical forms and their
//! realizations, the stability decision with certificates, stable hulls, and
//! subalgebra enumeration with a discrepancy report.

mod forms;
mod stability;
mod subalgebra;

pub use crate::grassmann::GradedProfile;
pub use forms::{
    dedupe_by_shape, describe_shape, first_grade_violation, grade_closure, is_grade_closed, realize,
    subalgebra_candidates, subalgebra_condition, subspace_candidates, CanonicalForm, GradeShape,
};
pub use stability::{
    decide_stable, decide_stable_with, enumerate_stable_subspaces, enumerate_stable_subspaces_with_report,
    find_witness, match_form, stable_hull, Discrepancy, DiscrepancyKind, Enumeration, StabilityCertificate, Witness,
    WitnessBudget,
};
pub use subalgebra::{
    check_subalgebra_candidate, closure_failure, enumerate_stable_subalgebras,
    enumerate_stable_subalgebras_with_report, is_wedge_closed, ClosureFailure,
};

/// `GradedProfile` of a subspace: which full components it contains.
pub fn graded_profile(b: &crate::fieldlin::Subspace) -> GradedProfile {
    GradedProfile::of(b)
}
