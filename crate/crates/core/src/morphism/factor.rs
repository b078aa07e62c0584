use std::collections::BTreeMap;

use super::map::AlgebraMap;
use super::named::inner_automorphism;
use crate::error::{Error, Result};
use crate::fieldlin::{solve, Scalar, SparseRow};
use crate::grassmann::{BasisMask, Multivector, Parity};

/// m = (Id + [a, −]) ∘ f with a odd and f parity-preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub a: Multivector,
    pub f: AlgebraMap,
}

impl Factorization {
    /// (Id + [a, −]) ∘ f, recomputed from the parts.
    pub fn recompose(&self) -> Result<AlgebraMap> {
        inner_automorphism(&self.a)?.compose(&self.f)
    }
}

/// Splits an automorphism into its inner and parity-preserving factors.
///
/// f keeps the odd part of every generator image. Then the even part of
/// m(eᵢ) must equal [a, f(eᵢ)], which is linear in a; the system is solved
/// over the odd monomials with free unknowns set to zero, so the central top
/// monomial (odd n) never appears in a.
pub fn factor_n1_f0(m: &AlgebraMap) -> Result<Factorization> {
    if !m.is_automorphism() {
        return Err(Error::NotAutomorphism);
    }
    let alg = m.algebra();
    let odd_images: Vec<Multivector> = m.images().iter().map(|g| g.parity_part(Parity::Odd)).collect();
    let f = AlgebraMap::new(alg, odd_images)
        .map_err(|e| Error::FactorizationFailed(format!("odd parts do not define a map: {e}")))?;

    let odd_masks: Vec<BasisMask> = (0..alg.dim() as u32).map(BasisMask).filter(|m| m.grade() % 2 == 1).collect();
    let mut equations = Vec::new();
    let mut rhs = Vec::new();
    for (g, fe) in m.images().iter().zip(f.images()) {
        let mut rows: BTreeMap<BasisMask, SparseRow> = BTreeMap::new();
        for (col, &s) in odd_masks.iter().enumerate() {
            let c = Multivector::basis(alg, s).commutator(fe)?;
            for (u, coeff) in c.terms() {
                rows.entry(u).or_default().push((col, coeff.clone()));
            }
        }
        let even = g.parity_part(Parity::Even);
        for (u, _) in even.terms() {
            rows.entry(u).or_default();
        }
        for (u, row) in rows {
            rhs.push(even.coefficient(u));
            equations.push(row);
        }
    }
    let x = solve(alg.field(), odd_masks.len(), &equations, &rhs)
        .ok_or_else(|| Error::FactorizationFailed("no odd a satisfies [a, f(e_i)] = even part of m(e_i)".into()))?;
    let a = Multivector::from_terms(alg, odd_masks.iter().copied().zip(x).filter(|(_, c): &(BasisMask, Scalar)| !c.is_zero()))?;
    let out = Factorization { a, f };
    if &out.recompose()? != m {
        return Err(Error::FactorizationFailed("recomposition differs from the input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlin::Field;
    use crate::grassmann::Algebra;
    use crate::morphism::{sign_flip, transposition};
    use std::collections::BTreeSet;

    fn e(a: Algebra, idx: &[usize]) -> Multivector {
        Multivector::basis(a, BasisMask::from_indices(idx))
    }

    #[test]
    fn parity_preserving_input() {
        let a = Algebra::new(3, Field::Rational).unwrap();
        let m = transposition(a, 1, 2).unwrap();
        let fac = factor_n1_f0(&m).unwrap();
        assert!(fac.a.is_zero());
        assert_eq!(fac.f, m);
    }

    #[test]
    fn inner_times_swap() {
        let a = Algebra::new(3, Field::Rational).unwrap();
        let swap = transposition(a, 1, 2).unwrap();
        let m = inner_automorphism(&e(a, &[1])).unwrap().compose(&swap).unwrap();
        let fac = factor_n1_f0(&m).unwrap();
        assert_eq!(fac.a, e(a, &[1]));
        assert_eq!(fac.f, swap);
    }

    #[test]
    fn central_ambiguity_resolved() {
        let a = Algebra::new(3, Field::Rational).unwrap();
        let x = &e(a, &[1]) + &e(a, &[1, 2, 3]);
        let m = inner_automorphism(&x).unwrap();
        let fac = factor_n1_f0(&m).unwrap();
        assert_eq!(fac.f, AlgebraMap::identity(a));
        assert_eq!(fac.a, e(a, &[1]));
        assert_eq!(m, inner_automorphism(&fac.a).unwrap());
    }

    #[test]
    fn over_gf3() {
        let a = Algebra::new(2, Field::prime(3).unwrap()).unwrap();
        let flip = sign_flip(a, &BTreeSet::from([2])).unwrap();
        let m = inner_automorphism(&e(a, &[2])).unwrap().compose(&flip).unwrap();
        let fac = factor_n1_f0(&m).unwrap();
        assert_eq!(fac.recompose().unwrap(), m);
        assert!(fac.f.is_parity_preserving());
    }

    #[test]
    fn rejects_non_automorphism() {
        let a = Algebra::new(2, Field::Rational).unwrap();
        let m = AlgebraMap::new(a, vec![e(a, &[1]), e(a, &[1])]).unwrap();
        assert_eq!(factor_n1_f0(&m), Err(Error::NotAutomorphism));
    }
}
