use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::map::AlgebraMap;
use super::named::inner_automorphism;
use crate::fieldlin::{rank, Field, Scalar};
use crate::grassmann::{Algebra, BasisMask, Multivector, Parity};

/// Mixture of factor kinds used when sampling an automorphism.
///
/// Each sample is a composition of `1..=max_depth` factors, each drawn with
/// probability proportional to its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingProfile {
    /// Invertible linear substitution of the generators.
    pub linear: u32,
    /// eᵢ ↦ eᵢ + odd terms of grade ≥ 3 (parity-preserving, unipotent).
    pub odd_shear: u32,
    /// Id + [a, −] for a random odd a.
    pub inner: u32,
    pub max_depth: usize,
    /// Integer coefficients are drawn from −bound..=bound.
    pub coeff_bound: i64,
}

impl SamplingProfile {
    pub fn mixed() -> Self {
        SamplingProfile { linear: 1, odd_shear: 1, inner: 1, max_depth: 3, coeff_bound: 3 }
    }

    pub fn linear_only() -> Self {
        SamplingProfile { linear: 1, odd_shear: 0, inner: 0, max_depth: 1, coeff_bound: 3 }
    }

    pub fn inner_only() -> Self {
        SamplingProfile { linear: 0, odd_shear: 0, inner: 1, max_depth: 1, coeff_bound: 3 }
    }
}

impl Default for SamplingProfile {
    fn default() -> Self {
        Self::mixed()
    }
}

/// Deterministic stream of random elements and automorphisms from one seed.
#[derive(Clone, Debug)]
pub struct AutomorphismSampler {
    alg: Algebra,
    profile: SamplingProfile,
    rng: ChaCha8Rng,
}

impl AutomorphismSampler {
    pub fn new(alg: Algebra, seed: u64, profile: SamplingProfile) -> Self {
        assert!(
            profile.linear + profile.odd_shear + profile.inner > 0,
            "sampling profile has all weights zero"
        );
        AutomorphismSampler { alg, profile, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> Scalar {
        random_scalar(self.alg.field(), self.profile.coeff_bound, &mut self.rng)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let c = self.scalar();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn multivector(&mut self) -> Multivector {
        random_multivector(self.alg, &mut self.rng, None, self.profile.coeff_bound)
    }

    pub fn odd(&mut self) -> Multivector {
        random_multivector(self.alg, &mut self.rng, Some(Parity::Odd), self.profile.coeff_bound)
    }

    pub fn automorphism(&mut self) -> AlgebraMap {
        let depth = self.rng.gen_range(1..=self.profile.max_depth.max(1));
        let mut acc = self.factor();
        for _ in 1..depth {
            let next = self.factor();
            acc = next.compose(&acc).expect("same algebra");
        }
        acc
    }

    fn factor(&mut self) -> AlgebraMap {
        let p = &self.profile;
        let total = p.linear + p.odd_shear + p.inner;
        let roll = self.rng.gen_range(0..total);
        if roll < p.linear {
            self.linear_substitution()
        } else if roll < p.linear + p.odd_shear {
            self.odd_shear()
        } else {
            let a = self.odd();
            inner_automorphism(&a).expect("odd element")
        }
    }

    fn linear_substitution(&mut self) -> AlgebraMap {
        let n = self.alg.n();
        let field = self.alg.field();
        loop {
            let m: Vec<Vec<Scalar>> = (0..n)
                .map(|_| (0..n).map(|_| random_scalar(field, self.profile.coeff_bound, &mut self.rng)).collect())
                .collect();
            if rank(field, &m) != n {
                continue;
            }
            let images = m
                .iter()
                .map(|row| {
                    let terms = row.iter().enumerate().map(|(j, c)| (BasisMask::generator(j + 1), c.clone()));
                    Multivector::from_terms(self.alg, terms).expect("valid masks")
                })
                .collect();
            return AlgebraMap::new_unchecked(self.alg, images);
        }
    }

    /// Odd elements pairwise anticommute and square to zero, so adding odd
    /// terms of grade ≥ 3 to each generator always gives a valid map, and it
    /// is invertible because the linear part is untouched.
    fn odd_shear(&mut self) -> AlgebraMap {
        let alg = self.alg;
        let high_odd: Vec<BasisMask> = (0..alg.dim() as u32)
            .map(BasisMask)
            .filter(|m| m.grade() >= 3 && m.grade() % 2 == 1)
            .collect();
        let images = (1..=alg.n())
            .map(|i| {
                let mut g = Multivector::generator(alg, i).expect("index in range");
                if !high_odd.is_empty() {
                    for _ in 0..self.rng.gen_range(0..=2) {
                        let m = high_odd[self.rng.gen_range(0..high_odd.len())];
                        let c = random_scalar(alg.field(), self.profile.coeff_bound, &mut self.rng);
                        g = &g + &Multivector::monomial(alg, m, c);
                    }
                }
                g
            })
            .collect();
        AlgebraMap::new_unchecked(alg, images)
    }
}

/// One automorphism from a fresh generator seeded with `seed`.
pub fn random_automorphism(alg: Algebra, seed: u64, profile: &SamplingProfile) -> AlgebraMap {
    AutomorphismSampler::new(alg, seed, profile.clone()).automorphism()
}

/// Integers in −bound..=bound; over ℚ occasionally divided by 2 or 3.
pub fn random_scalar<R: Rng + ?Sized>(field: Field, bound: i64, rng: &mut R) -> Scalar {
    let num = rng.gen_range(-bound..=bound);
    match field {
        Field::Rational if rng.gen_bool(0.25) => {
            let den = rng.gen_range(2..=3);
            field
                .ratio(&BigInt::from(num), &BigInt::from(den))
                .expect("nonzero denominator")
        }
        _ => field.int(num),
    }
}

/// A sparse random element with up to n+2 terms, optionally restricted to one parity.
pub fn random_multivector<R: Rng + ?Sized>(alg: Algebra, rng: &mut R, parity: Option<Parity>, bound: i64) -> Multivector {
    let masks: Vec<BasisMask> = (0..alg.dim() as u32)
        .map(BasisMask)
        .filter(|m| match parity {
            None => true,
            Some(Parity::Even) => m.grade() % 2 == 0,
            Some(Parity::Odd) => m.grade() % 2 == 1,
        })
        .collect();
    let mut out = Multivector::zero(alg);
    for _ in 0..rng.gen_range(0..=alg.n() + 2) {
        let m = masks[rng.gen_range(0..masks.len())];
        out = &out + &Multivector::monomial(alg, m, random_scalar(alg.field(), bound, rng));
    }
    out
}
