use std::collections::{BTreeMap, BTreeSet};

use super::forms::{describe_shape, subalgebra_candidates, CanonicalForm, GradeShape};
use super::stability::{
    decide_stable, enumerate_stable_subspaces, grade_detail, Discrepancy, DiscrepancyKind, Enumeration,
};
use crate::fieldlin::Subspace;
use crate::grassmann::{Algebra, BasisMask, GradedProfile, Multivector};

/// A pair of basis vectors whose product leaves `b`, or the missing unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureFailure {
    MissingUnit,
    Escapes(Multivector, Multivector),
}

/// Checks u∧v ∈ B for every pair of basis vectors, and 1 ∈ B if `unital`.
pub fn is_wedge_closed(b: &Subspace, unital: bool) -> bool {
    closure_failure(b, unital).is_none()
}

pub fn closure_failure(b: &Subspace, unital: bool) -> Option<ClosureFailure> {
    let alg = b.algebra();
    if unital && !b.contains(&Multivector::one(alg)).expect("same algebra") {
        return Some(ClosureFailure::MissingUnit);
    }
    let basis = b.basis();
    // Monomial bases (all component sums) reduce membership to a mask lookup.
    let monomials: Option<BTreeSet<BasisMask>> = basis
        .iter()
        .map(|v| {
            let mut terms = v.terms();
            match (terms.next(), terms.next()) {
                (Some((m, _)), None) => Some(m),
                _ => None,
            }
        })
        .collect();
    for u in &basis {
        for v in &basis {
            let w = u * v;
            let inside = match &monomials {
                Some(set) => w.terms().all(|(m, _)| set.contains(&m)),
                None => b.contains(&w).expect("same algebra"),
            };
            if !inside {
                return Some(ClosureFailure::Escapes(u.clone(), v.clone()));
            }
        }
    }
    None
}

fn closure_detail(f: &ClosureFailure) -> String {
    match f {
        ClosureFailure::MissingUnit => "1 is missing".into(),
        ClosureFailure::Escapes(u, v) => {
            let (gu, gv) = (u.grades(), v.grades());
            format!(
                "product of basis vectors in grades {:?} and {:?} escapes",
                gu.into_iter().collect::<Vec<_>>(),
                gv.into_iter().collect::<Vec<_>>()
            )
        }
    }
}

/// Verifies one subalgebra candidate directly: closure under ∧ by basis
/// pairs and Aut-stability. `None` means both hold.
pub fn check_subalgebra_candidate(alg: Algebra, form: &CanonicalForm) -> crate::error::Result<Option<Discrepancy>> {
    let shape = form.shape(alg.n())?;
    let b = Subspace::graded(alg, shape.0, shape.1.iter().copied());
    let unital = shape.0;
    let closure = closure_failure(&b, unital);
    let stable = decide_stable(&b)?.is_stable();
    let kind = match (closure.is_some(), stable) {
        (false, true) => return Ok(None),
        (true, true) => DiscrepancyKind::NotClosed,
        (false, false) => DiscrepancyKind::NotStable,
        (true, false) => DiscrepancyKind::NotClosedNotStable,
    };
    let mut details = Vec::new();
    if let Some(f) = &closure {
        details.push(closure_detail(f));
    }
    if !stable {
        details.push(grade_detail(alg.n(), &shape.1).unwrap_or_else(|| "moved by an automorphism".into()));
    }
    Ok(Some(Discrepancy { n: alg.n(), form: Some(form.clone()), shape, kind, detail: details.join("; ") }))
}

/// Aut-stable subalgebras generated from the subalgebra shapes.
///
/// Candidates that satisfy the additive condition on S are kept only if their
/// realization is verified closed under ∧ and Aut-stable; the rest are
/// reported. Stable closed subspaces that no candidate produces are reported
/// as uncovered.
pub fn enumerate_stable_subalgebras(alg: Algebra, unital: bool) -> Vec<(CanonicalForm, Subspace)> {
    enumerate_stable_subalgebras_with_report(alg, unital).entries
}

pub fn enumerate_stable_subalgebras_with_report(alg: Algebra, unital: bool) -> Enumeration {
    let n = alg.n();
    let mut by_shape: BTreeMap<GradeShape, CanonicalForm> = BTreeMap::new();
    for f in subalgebra_candidates(n, unital) {
        let shape = f.shape(n).expect("generated forms are valid");
        by_shape.entry(shape).or_insert(f);
    }
    let mut entries = Vec::new();
    let mut discrepancies = Vec::new();
    for (shape, form) in &by_shape {
        match check_subalgebra_candidate(alg, form).expect("generated forms are valid") {
            None => entries.push((form.clone(), Subspace::graded(alg, shape.0, shape.1.iter().copied()))),
            Some(d) => discrepancies.push(d),
        }
    }
    for (_, b) in enumerate_stable_subspaces(alg) {
        if b.is_zero() {
            continue;
        }
        let profile = GradedProfile::of(&b);
        if unital && !profile.contains_unit {
            continue;
        }
        let shape = (profile.contains_unit, profile.grades);
        if by_shape.contains_key(&shape) || !is_wedge_closed(&b, unital) {
            continue;
        }
        discrepancies.push(Discrepancy {
            n,
            form: None,
            detail: format!("{} is Aut-stable and closed but matches no candidate", describe_shape(&shape)),
            shape,
            kind: DiscrepancyKind::Uncovered,
        });
    }
    entries.sort_by(|a, b| a.1.cmp(&b.1));
    Enumeration { entries, discrepancies }
}
