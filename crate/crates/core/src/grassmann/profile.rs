use std::collections::BTreeSet;

use super::{binomial, Algebra, BasisMask, Multivector};
use crate::fieldlin::Subspace;

/// Which full graded components a subspace contains.
///
/// `exact` holds when the subspace is precisely the direct sum of the listed
/// components (and ℰ₀ when `contains_unit`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedProfile {
    pub n: usize,
    pub contains_unit: bool,
    pub grades: BTreeSet<usize>,
    pub exact: bool,
}

impl GradedProfile {
    pub fn of(b: &Subspace) -> GradedProfile {
        let alg: Algebra = b.algebra();
        let n = alg.n();
        let contains_unit = b.contains(&Multivector::one(alg)).expect("same algebra");
        let grades: BTreeSet<usize> = (1..=n)
            .filter(|&g| {
                BasisMask::of_grade(n, g).all(|m| b.contains(&Multivector::basis(alg, m)).expect("same algebra"))
            })
            .collect();
        let graded_dim = contains_unit as usize + grades.iter().map(|&g| binomial(n, g)).sum::<usize>();
        GradedProfile {
            n,
            contains_unit,
            exact: graded_dim == b.dim(),
            grades,
        }
    }
}
