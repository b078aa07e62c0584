use std::collections::BTreeSet;
use std::fmt;

use super::forms::{
    dedupe_by_shape, describe_shape, first_grade_violation, grade_closure, is_grade_closed, subspace_candidates,
    CanonicalForm, GradeShape,
};
use crate::error::{Error, Result};
use crate::fieldlin::Subspace;
use crate::grassmann::{Algebra, GradedProfile, Multivector};
use crate::morphism::{witness_family, AlgebraMap, AutomorphismSampler, NamedMap, SamplingProfile};

/// Why a candidate was set aside instead of being reported as a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiscrepancyKind {
    /// A candidate-form realization some automorphism moves.
    NotStable,
    /// A subalgebra candidate whose realization is not closed under ∧.
    NotClosed,
    NotClosedNotStable,
    /// A stable, closed subspace no subalgebra candidate realizes.
    Uncovered,
}

impl DiscrepancyKind {
    pub fn tag(self) -> &'static str {
        match self {
            DiscrepancyKind::NotStable => "not-stable",
            DiscrepancyKind::NotClosed => "not-wedge-closed",
            DiscrepancyKind::NotClosedNotStable => "not-wedge-closed,not-stable",
            DiscrepancyKind::Uncovered => "stable-closed-uncovered",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub n: usize,
    pub form: Option<CanonicalForm>,
    pub shape: GradeShape,
    pub kind: DiscrepancyKind,
    pub detail: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = self.form.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string());
        write!(
            f,
            "DISCREPANCY n={} form={} realization={} reason={}: {}",
            self.n,
            form,
            describe_shape(&self.shape),
            self.kind.tag(),
            self.detail
        )
    }
}

/// Output of an enumeration together with the candidates it set aside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub entries: Vec<(CanonicalForm, Subspace)>,
    pub discrepancies: Vec<Discrepancy>,
}

pub(crate) fn grade_detail(n: usize, grades: &BTreeSet<usize>) -> Option<String> {
    first_grade_violation(n, grades).map(|(s, t)| format!("E{s} is present but E{t} is not"))
}

/// Stable shapes with their representative forms, sorted by shape.
pub(crate) fn stable_shapes(n: usize) -> Vec<(GradeShape, CanonicalForm)> {
    dedupe_by_shape(n, subspace_candidates(n))
        .into_iter()
        .filter(|(shape, _)| is_grade_closed(n, &shape.1))
        .collect()
}

/// All Aut-stable subspaces with a representative form each, sorted by
/// dimension and then by RREF rows.
pub fn enumerate_stable_subspaces(alg: Algebra) -> Vec<(CanonicalForm, Subspace)> {
    enumerate_stable_subspaces_with_report(alg).entries
}

/// As `enumerate_stable_subspaces`, also listing candidate-form realizations that
/// fail the grade rules (and therefore are moved by some automorphism).
pub fn enumerate_stable_subspaces_with_report(alg: Algebra) -> Enumeration {
    let n = alg.n();
    let mut entries = Vec::new();
    let mut discrepancies = Vec::new();
    for (shape, form) in dedupe_by_shape(n, subspace_candidates(n)) {
        match grade_detail(n, &shape.1) {
            None => entries.push((form, Subspace::graded(alg, shape.0, shape.1.iter().copied()))),
            Some(detail) => discrepancies.push(Discrepancy {
                n,
                form: Some(form),
                shape,
                kind: DiscrepancyKind::NotStable,
                detail,
            }),
        }
    }
    entries.sort_by(|a, b| a.1.cmp(&b.1));
    Enumeration { entries, discrepancies }
}

/// σ together with v ∈ B such that σ(v) ∉ B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub sigma: AlgebraMap,
    pub v: Multivector,
    pub image: Multivector,
}

impl Witness {
    /// Re-evaluates σ(v) and both memberships from scratch.
    pub fn verify(&self, b: &Subspace) -> bool {
        matches!(b.contains(&self.v), Ok(true))
            && self.sigma.is_automorphism()
            && self.sigma.apply(&self.v).is_ok_and(|w| w == self.image && matches!(b.contains(&w), Ok(false)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityCertificate {
    Stable(CanonicalForm),
    Unstable(Box<Witness>),
}

impl StabilityCertificate {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityCertificate::Stable(_))
    }

    pub fn form(&self) -> Option<&CanonicalForm> {
        match self {
            StabilityCertificate::Stable(f) => Some(f),
            StabilityCertificate::Unstable(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            StabilityCertificate::Stable(_) => None,
            StabilityCertificate::Unstable(w) => Some(w),
        }
    }
}

/// How many seeded random automorphisms to try after the fixed family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBudget {
    pub random_trials: usize,
    pub seed: u64,
    pub profile: SamplingProfile,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget { random_trials: 200, seed: 1, profile: SamplingProfile::mixed() }
    }
}

/// First σ in `maps` and basis vector v of `b` with σ(v) ∉ b.
pub fn find_witness<'a, I>(b: &Subspace, maps: I) -> Option<Witness>
where
    I: IntoIterator<Item = &'a NamedMap>,
{
    let basis = b.basis();
    for m in maps {
        if let Some(w) = witness_for(b, &basis, &m.label, &m.map) {
            return Some(w);
        }
    }
    None
}

fn witness_for(b: &Subspace, basis: &[Multivector], label: &str, sigma: &AlgebraMap) -> Option<Witness> {
    for v in basis {
        let image = sigma.apply(v).expect("same algebra");
        if !b.contains(&image).expect("same algebra") {
            return Some(Witness { label: label.to_string(), sigma: sigma.clone(), v: v.clone(), image });
        }
    }
    None
}

/// The representative form if `b` is exactly a stable sum of components.
pub fn match_form(b: &Subspace) -> Option<CanonicalForm> {
    let profile = GradedProfile::of(b);
    if !profile.exact || !is_grade_closed(profile.n, &profile.grades) {
        return None;
    }
    let shape = (profile.contains_unit, profile.grades);
    stable_shapes(profile.n).into_iter().find(|(s, _)| *s == shape).map(|(_, f)| f)
}

pub fn decide_stable(b: &Subspace) -> Result<StabilityCertificate> {
    decide_stable_with(b, &WitnessBudget::default())
}

/// Decides by matching against the classification, then searches for a
/// witness to certify instability. Failing to find one is an anomaly.
pub fn decide_stable_with(b: &Subspace, budget: &WitnessBudget) -> Result<StabilityCertificate> {
    if let Some(form) = match_form(b) {
        return Ok(StabilityCertificate::Stable(form));
    }
    let alg = b.algebra();
    if let Some(w) = find_witness(b, &witness_family(alg)) {
        return Ok(StabilityCertificate::Unstable(Box::new(w)));
    }
    let basis = b.basis();
    let mut sampler = AutomorphismSampler::new(alg, budget.seed, budget.profile.clone());
    for t in 0..budget.random_trials {
        let sigma = sampler.automorphism();
        let label = format!("random(seed={},trial={t})", budget.seed);
        if let Some(w) = witness_for(b, &basis, &label, &sigma) {
            return Ok(StabilityCertificate::Unstable(Box::new(w)));
        }
    }
    Err(Error::ClassificationAnomaly {
        dim: b.dim(),
        form_status: "matches no canonical form".into(),
        matched: None,
    })
}

/// Smallest Aut-stable subspace containing `b`.
///
/// Each round adds the full component ℰ_g for every grade g in which some
/// element of the current space is nonzero, closes the grade set under the
/// odd→+1 and +2 rules, and adds the images of the basis under the witness
/// family; it stops once a round adds nothing.
pub fn stable_hull(b: &Subspace) -> Subspace {
    let alg = b.algebra();
    let family = witness_family(alg);
    let mut current = b.clone();
    loop {
        let mut present: BTreeSet<usize> = BTreeSet::new();
        for v in current.basis() {
            present.extend(v.grades());
        }
        let unit = present.remove(&0);
        let closed = grade_closure(alg.n(), &present);
        let mut next = current.sum(&Subspace::graded(alg, unit, closed)).expect("same algebra");
        let basis = next.basis();
        for m in &family {
            for v in &basis {
                next.insert(&m.map.apply(v).expect("same algebra")).expect("same algebra");
            }
        }
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlin::Field;
    use crate::grassmann::BasisMask;

    fn alg(n: usize) -> Algebra {
        Algebra::new(n, Field::Rational).unwrap()
    }

    fn e(a: Algebra, idx: &[usize]) -> Multivector {
        Multivector::basis(a, BasisMask::from_indices(idx))
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_stable_subspaces(alg(1)).len(), 4);
        assert_eq!(enumerate_stable_subspaces(alg(2)).len(), 6);
        let r3 = enumerate_stable_subspaces_with_report(alg(3));
        assert_eq!(r3.entries.len(), 10);
        assert_eq!(r3.discrepancies.len(), 2);
    }

    #[test]
    fn enumeration_n2_members() {
        let a = alg(2);
        let got: Vec<Subspace> = enumerate_stable_subspaces(a).into_iter().map(|x| x.1).collect();
        let mut want = vec![
            Subspace::zero(a),
            Subspace::graded(a, true, []),
            Subspace::graded(a, false, [2]),
            Subspace::graded(a, true, [2]),
            Subspace::graded(a, false, [1, 2]),
            Subspace::full(a),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn decide_examples() {
        let a = alg(2);
        let e2 = Subspace::graded(a, false, [2]);
        assert_eq!(decide_stable(&e2).unwrap(), StabilityCertificate::Stable(CanonicalForm::A { j: 2 }));

        let e1 = Subspace::graded(a, false, [1]);
        let cert = decide_stable(&e1).unwrap();
        assert!(cert.witness().unwrap().verify(&e1));

        let line = Subspace::span(a, [&(&e(a, &[1]) + &e(a, &[2]))]).unwrap();
        let cert = decide_stable(&line).unwrap();
        let w = cert.witness().unwrap();
        assert_eq!(w.label, "flip({1})");
        assert_eq!(w.image, &e(a, &[2]) - &e(a, &[1]));
        assert!(w.verify(&line));
    }

    #[test]
    fn candidate_form_outside_rules_gets_witness() {
        let a = alg(3);
        let b = Subspace::graded(a, false, [1, 2]);
        let cert = decide_stable(&b).unwrap();
        let w = cert.witness().unwrap();
        assert!(w.verify(&b));
        assert!(w.sigma.is_parity_preserving());
    }

    #[test]
    fn hull_examples() {
        let a = alg(3);
        let k = Subspace::graded(a, true, []);
        assert_eq!(stable_hull(&k), k);
        let a4 = alg(4);
        let b = Subspace::span(a4, [&e(a4, &[1, 2])]).unwrap();
        assert_eq!(stable_hull(&b), Subspace::graded(a4, false, [2, 4]));
        let c = Subspace::span(a, [&e(a, &[1])]).unwrap();
        assert_eq!(stable_hull(&c), Subspace::graded(a, false, [1, 2, 3]));
    }

    #[test]
    fn discrepancy_line() {
        let r = enumerate_stable_subspaces_with_report(alg(3));
        let line = r.discrepancies[0].to_string();
        assert!(line.starts_with("DISCREPANCY n=3 form=B(j=1,S={1},i=2) realization=E1 + E2 reason=not-stable"), "{line}");
    }
}
