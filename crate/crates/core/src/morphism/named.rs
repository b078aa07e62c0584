use std::collections::BTreeSet;
use std::fmt;

use super::map::AlgebraMap;
use crate::error::{Error, Result};
use crate::fieldlin::Scalar;
use crate::grassmann::{Algebra, BasisMask, Multivector, Parity};

fn check_index(alg: Algebra, i: usize) -> Result<()> {
    if i == 0 || i > alg.n() {
        return Err(Error::IndexOutOfRange { index: i, n: alg.n() });
    }
    Ok(())
}

fn generators(alg: Algebra) -> Vec<Multivector> {
    (1..=alg.n())
        .map(|i| Multivector::generator(alg, i).expect("index in range"))
        .collect()
}

/// φ_{i,j}: swaps eᵢ and eⱼ, fixes the other generators.
pub fn transposition(alg: Algebra, i: usize, j: usize) -> Result<AlgebraMap> {
    check_index(alg, i)?;
    check_index(alg, j)?;
    if i == j {
        return Err(Error::InvalidArgument(format!("transposition needs distinct indices, got {i} twice")));
    }
    let mut images = generators(alg);
    images.swap(i - 1, j - 1);
    Ok(AlgebraMap::new_unchecked(alg, images))
}

/// φ_S: eᵢ ↦ −eᵢ for i ∈ S.
pub fn sign_flip(alg: Algebra, flipped: &BTreeSet<usize>) -> Result<AlgebraMap> {
    for &i in flipped {
        check_index(alg, i)?;
    }
    let images = generators(alg)
        .into_iter()
        .enumerate()
        .map(|(k, g)| if flipped.contains(&(k + 1)) { -g } else { g })
        .collect();
    Ok(AlgebraMap::new_unchecked(alg, images))
}

/// e₁ ↦ e₁ + e₁∧e_{j+1}∧e_{j+2}, other generators fixed. Needs 1 ≤ j ≤ n−2.
///
/// The image is odd, so it anticommutes with every other generator and the
/// map lies in F₀; its inverse subtracts the same cubic term.
pub fn cubic_shear(alg: Algebra, j: usize) -> Result<AlgebraMap> {
    if j == 0 || j + 2 > alg.n() {
        return Err(Error::IndexOutOfRange { index: j + 2, n: alg.n() });
    }
    let mut images = generators(alg);
    images[0] = &images[0] + &Multivector::basis(alg, BasisMask::from_indices(&[1, j + 1, j + 2]));
    Ok(AlgebraMap::new_unchecked(alg, images))
}

/// The derivation x ↦ [a, x].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDerivation {
    a: Multivector,
}

impl InnerDerivation {
    pub fn new(a: Multivector) -> Self {
        InnerDerivation { a }
    }

    pub fn element(&self) -> &Multivector {
        &self.a
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        self.a.commutator(x)
    }

    /// ∂ᵏ(x).
    pub fn iterate(&self, k: usize, x: &Multivector) -> Result<Multivector> {
        (0..k).try_fold(x.clone(), |acc, _| self.apply(&acc))
    }
}

/// Id + [a, −] for odd a, given on generators as eᵢ ↦ eᵢ + [a, eᵢ].
pub fn inner_automorphism(a: &Multivector) -> Result<AlgebraMap> {
    if !a.is_parity(Parity::Odd) {
        return Err(Error::NonOddElement);
    }
    let alg = a.algebra();
    let images = generators(alg)
        .into_iter()
        .map(|g| {
            let c = a.commutator(&g)?;
            Ok(&g + &c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraMap::new_unchecked(alg, images))
}

/// exp(k·[a, −]) for odd a. Since [a, [a, −]] = 0 the series stops after the
/// linear term, so this is Id + k[a, −]; no factorials are evaluated.
pub fn exp_inner(k: &Scalar, a: &Multivector) -> Result<AlgebraMap> {
    if k.is_zero() {
        return Err(Error::ZeroScalar);
    }
    inner_automorphism(&a.scale(k))
}

/// An automorphism paired with a printable description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub label: String,
    pub map: AlgebraMap,
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// The deterministic witness automorphisms, in search order: single sign
/// flips, transpositions, inner automorphisms by generators, cubic shears.
pub fn witness_family(alg: Algebra) -> Vec<NamedMap> {
    let n = alg.n();
    let mut out = Vec::new();
    for k in 1..=n {
        out.push(NamedMap {
            label: format!("flip({{{k}}})"),
            map: sign_flip(alg, &BTreeSet::from([k])).expect("index in range"),
        });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(NamedMap {
                label: format!("swap({i},{j})"),
                map: transposition(alg, i, j).expect("index in range"),
            });
        }
    }
    for k in 1..=n {
        let g = Multivector::generator(alg, k).expect("index in range");
        out.push(NamedMap {
            label: format!("inner(e{k})"),
            map: inner_automorphism(&g).expect("generator is odd"),
        });
    }
    for j in 1..=n.saturating_sub(2) {
        out.push(NamedMap {
            label: format!("shear({j})"),
            map: cubic_shear(alg, j).expect("j + 2 <= n"),
        });
    }
    out
}
