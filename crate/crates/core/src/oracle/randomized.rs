use std::fmt;

use crate::classify::{find_witness, Witness};
use crate::expr::format_multivector;
use crate::fieldlin::Subspace;
use crate::grassmann::Algebra;
use crate::morphism::{witness_family, AutomorphismSampler, NamedMap, SamplingProfile};

/// A fixed list of automorphisms (the witness family followed by seeded
/// random samples), built once and reused across many subspaces.
#[derive(Clone, Debug)]
pub struct StabilityTester {
    alg: Algebra,
    seed: u64,
    trials: usize,
    maps: Vec<NamedMap>,
}

impl StabilityTester {
    pub fn new(alg: Algebra, trials: usize, seed: u64) -> Self {
        let mut maps = witness_family(alg);
        let mut sampler = AutomorphismSampler::new(alg, seed, SamplingProfile::mixed());
        for t in 0..trials {
            maps.push(NamedMap { label: format!("random(seed={seed},trial={t})"), map: sampler.automorphism() });
        }
        StabilityTester { alg, seed, trials, maps }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn maps(&self) -> &[NamedMap] {
        &self.maps
    }

    /// First violation σ(v) ∉ B over the stored maps.
    pub fn check(&self, b: &Subspace) -> Option<Witness> {
        find_witness(b, &self.maps)
    }

    pub fn report(&self, b: &Subspace) -> RandomizedReport {
        RandomizedReport {
            seed: self.seed,
            trials: self.trials,
            family: self.maps.len() - self.trials,
            violation: self.check(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomizedReport {
    pub seed: u64,
    pub trials: usize,
    pub family: usize,
    pub violation: Option<Witness>,
}

impl fmt::Display for RandomizedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "no violation found (family={}, random={}, seed={})",
                self.family, self.trials, self.seed
            ),
            Some(w) => write!(
                f,
                "violation: sigma={} v={} sigma(v)={} (seed={})",
                w.label,
                format_multivector(&w.v),
                format_multivector(&w.image),
                self.seed
            ),
        }
    }
}

/// Tests `b` against the witness family and `trials` random automorphisms.
pub fn randomized_stability(b: &Subspace, trials: usize, seed: u64) -> RandomizedReport {
    StabilityTester::new(b.algebra(), trials, seed).report(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{realize, CanonicalForm};
    use crate::fieldlin::Field;

    #[test]
    fn ladder_survives() {
        let a = Algebra::new(4, Field::Rational).unwrap();
        let b = realize(&CanonicalForm::A { j: 2 }, a).unwrap();
        let r = randomized_stability(&b, 500, 9);
        assert!(r.violation.is_none(), "{r}");
    }

    #[test]
    fn grade_one_fails_in_family() {
        let a = Algebra::new(2, Field::Rational).unwrap();
        let b = Subspace::graded(a, false, [1]);
        let r = randomized_stability(&b, 0, 1);
        let w = r.violation.as_ref().unwrap();
        assert!(w.verify(&b));
        assert!(w.label.starts_with("inner"));
        assert_eq!(r.to_string(), randomized_stability(&b, 0, 1).to_string());
    }
}
