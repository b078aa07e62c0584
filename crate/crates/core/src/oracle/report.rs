use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use super::exhaustive::{enumerate_automorphisms, enumerate_subspaces, preserved_by, subspace_count};
use super::randomized::StabilityTester;
use crate::classify::{
    check_subalgebra_candidate, decide_stable, enumerate_stable_subalgebras_with_report, enumerate_stable_subspaces,
    is_wedge_closed, CanonicalForm,
};
use crate::error::Result;
use crate::fieldlin::{Field, Subspace};
use crate::grassmann::{center_of, commutator_subalgebra, Algebra, BasisMask, CenterMethod, Multivector, Parity};
use crate::morphism::{factor_n1_f0, AlgebraMap, AutomorphismSampler, SamplingProfile};

/// Largest n for which the subspace and subalgebra checks run; above it only
/// the structural checks are emitted.
pub const FULL_CHECK_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMode {
    /// Whole automorphism group and every subspace; tiny (n, p) only.
    Exhaustive,
    Randomized { seed: u64, trials: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub n: usize,
    pub field: Field,
    pub seed: Option<u64>,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(
            f,
            "CHECK {} n={} field={} seed={} -> {} {}",
            self.name,
            self.n,
            self.field,
            seed,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

struct Builder {
    alg: Algebra,
    seed: Option<u64>,
    lines: Vec<CheckLine>,
}

impl Builder {
    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.lines.push(CheckLine {
            name: name.to_string(),
            n: self.alg.n(),
            field: self.alg.field(),
            seed: self.seed,
            pass,
            detail,
        });
    }
}

fn even_span(alg: Algebra) -> Subspace {
    Subspace::coordinate(alg, (0..alg.dim() as u32).map(BasisMask).filter(|m| m.grade() % 2 == 0))
}

fn odd_monomials(alg: Algebra) -> Vec<Multivector> {
    (0..alg.dim() as u32)
        .map(BasisMask)
        .filter(|m| m.grade() % 2 == 1)
        .map(|m| Multivector::basis(alg, m))
        .collect()
}

/// [a, [b, x]] for the given triple.
fn double_bracket(a: &Multivector, b: &Multivector, x: &Multivector) -> Multivector {
    a.commutator(&b.commutator(x).expect("same algebra")).expect("same algebra")
}

fn factor_ok(m: &AlgebraMap) -> std::result::Result<(), String> {
    let fac = factor_n1_f0(m).map_err(|e| e.to_string())?;
    if !fac.a.is_parity(Parity::Odd) || !fac.f.is_parity_preserving() {
        return Err("factor parities wrong".into());
    }
    if &fac.recompose().map_err(|e| e.to_string())? != m {
        return Err("recomposition differs".into());
    }
    Ok(())
}

/// Runs every structural and classification check for `alg` and reports one
/// line per check. Failures are report lines, never errors; only an
/// exhaustive request outside the search budget returns `Err`.
pub fn cross_validate(alg: Algebra, mode: ValidationMode) -> Result<Report> {
    let seed = match mode {
        ValidationMode::Exhaustive => None,
        ValidationMode::Randomized { seed, .. } => Some(seed),
    };
    let mut r = Builder { alg, seed, lines: Vec::new() };
    let n = alg.n();

    let autos = match mode {
        ValidationMode::Exhaustive => Some(enumerate_automorphisms(alg)?),
        ValidationMode::Randomized { .. } => None,
    };

    // Center and commutator subalgebra.
    let brute = center_of(alg, CenterMethod::BruteForce);
    let formula = center_of(alg, CenterMethod::Formula);
    r.push("center", brute == formula, format!("dim={}", brute.dim()));
    let com = commutator_subalgebra(alg);
    let mut ok = com == even_span(alg);
    if n.is_multiple_of(2) {
        ok &= com == brute;
    }
    r.push("commutator-subalgebra", ok, format!("dim={}", com.dim()));

    // [a, [b, x]] = 0 for odd a, b.
    let (checked, bad) = match mode {
        ValidationMode::Randomized { seed, trials } if n > 4 => {
            let mut s = AutomorphismSampler::new(alg, seed, SamplingProfile::mixed());
            let mut bad = 0;
            for _ in 0..trials {
                let (a, b, x) = (s.odd(), s.odd(), s.multivector());
                bad += !double_bracket(&a, &b, &x).is_zero() as usize;
            }
            (trials, bad)
        }
        _ => {
            let odd = odd_monomials(alg);
            let all: Vec<Multivector> = (0..alg.dim() as u32).map(|m| Multivector::basis(alg, BasisMask(m))).collect();
            let mut bad = 0;
            for a in &odd {
                for b in &odd {
                    for x in &all {
                        bad += !double_bracket(a, b, x).is_zero() as usize;
                    }
                }
            }
            (odd.len() * odd.len() * all.len(), bad)
        }
    };
    r.push("double-bracket-vanishes", bad == 0, format!("triples={checked} nonzero={bad}"));

    // N₁ ⋊ F₀ factorization.
    let sample: Vec<AlgebraMap> = match (&autos, mode) {
        (Some(list), _) => list.clone(),
        (None, ValidationMode::Randomized { seed, trials }) => {
            let mut s = AutomorphismSampler::new(alg, seed ^ 0x9e37_79b9, SamplingProfile::mixed());
            (0..trials.min(200)).map(|_| s.automorphism()).collect()
        }
        (None, ValidationMode::Exhaustive) => unreachable!("exhaustive mode always enumerates"),
    };
    let failures: Vec<String> = sample.par_iter().filter_map(|m| factor_ok(m).err()).collect();
    r.push(
        "factorization",
        failures.is_empty(),
        match failures.first() {
            None => format!("maps={}", sample.len()),
            Some(e) => format!("maps={} failed={} first: {e}", sample.len(), failures.len()),
        },
    );

    if let Some(list) = &autos {
        let p = alg.field().characteristic();
        let gl = gl_order(n, p);
        r.push(
            "automorphism-count",
            (list.len() as u128).is_multiple_of(gl),
            format!("count={} |GL({n},{p})|={gl}", list.len()),
        );
    }

    if n <= FULL_CHECK_MAX_N {
        subspace_checks(&mut r, alg, mode, autos.as_deref())?;
    }
    if n >= 9 {
        let form = CanonicalForm::SubalgB { j: 3, s: BTreeSet::from([3, 7]), i: 4, unital: false };
        match check_subalgebra_candidate(alg, &form) {
            Ok(Some(d)) => r.push("subalgebra-condition-probe", true, d.to_string()),
            Ok(None) => r.push("subalgebra-condition-probe", false, format!("{form} unexpectedly verified")),
            Err(e) => r.push("subalgebra-condition-probe", false, e.to_string()),
        }
    }
    Ok(Report { lines: r.lines })
}

fn gl_order(n: usize, p: u64) -> u128 {
    let q = p as u128;
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}

fn subspace_checks(r: &mut Builder, alg: Algebra, mode: ValidationMode, autos: Option<&[AlgebraMap]>) -> Result<()> {
    let n = alg.n();
    let stable: Vec<Subspace> = enumerate_stable_subspaces(alg).into_iter().map(|x| x.1).collect();
    let tester = match mode {
        ValidationMode::Randomized { seed, trials } => Some(StabilityTester::new(alg, trials, seed)),
        ValidationMode::Exhaustive => None,
    };
    let is_preserved = |b: &Subspace| match (&tester, autos) {
        (Some(t), _) => t.check(b).is_none(),
        (None, Some(a)) => preserved_by(b, a),
        (None, None) => unreachable!("one source of automorphisms is always present"),
    };

    let moved = stable.par_iter().filter(|b| !is_preserved(b)).count();
    r.push("enumeration-soundness", moved == 0, format!("stable={} moved={moved}", stable.len()));

    // Every sum of full components, with and without k.
    let mut disagreements = 0;
    let mut anomalies = 0;
    let shapes: Vec<(bool, Vec<usize>)> = (0u32..1 << (n + 1))
        .map(|bits| (bits & 1 == 1, (1..=n).filter(|g| bits >> g & 1 == 1).collect()))
        .collect();
    let verdicts: Vec<(Option<bool>, bool)> = shapes
        .par_iter()
        .map(|(unit, grades)| {
            let b = Subspace::graded(alg, *unit, grades.iter().copied());
            (decide_stable(&b).ok().map(|c| c.is_stable()), is_preserved(&b))
        })
        .collect();
    for (decided, preserved) in verdicts {
        match decided {
            None => anomalies += 1,
            Some(d) if d != preserved => disagreements += 1,
            Some(_) => {}
        }
    }
    r.push(
        "graded-completeness",
        disagreements == 0 && anomalies == 0,
        format!("shapes={} disagreements={disagreements} anomalies={anomalies}", shapes.len()),
    );

    if let Some(a) = autos {
        let total = subspace_count(alg.dim(), alg.field().characteristic()).unwrap_or(0);
        let stream: Vec<Subspace> = enumerate_subspaces(alg)?.collect();
        let mut truth: Vec<Subspace> = stream.par_iter().filter(|b| preserved_by(b, a)).cloned().collect();
        truth.sort();
        let mut expected = stable.clone();
        expected.sort();
        r.push(
            "subspace-count",
            stream.len() as u128 == total,
            format!("enumerated={} gaussian={total}", stream.len()),
        );
        r.push(
            "ground-truth",
            truth == expected,
            format!("preserved={} classified={}", truth.len(), expected.len()),
        );
    }

    for unital in [false, true] {
        let e = enumerate_stable_subalgebras_with_report(alg, unital);
        let bad = e
            .entries
            .par_iter()
            .filter(|(_, b)| !is_wedge_closed(b, unital) || !is_preserved(b))
            .count();
        r.push(
            if unital { "subalgebras-unital" } else { "subalgebras" },
            bad == 0,
            format!("outputs={} failing={bad} discrepancies={}", e.entries.len(), e.discrepancies.len()),
        );
    }
    Ok(())
}
