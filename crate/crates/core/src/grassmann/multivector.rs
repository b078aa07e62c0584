use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use super::algebra::Algebra;
use super::mask::{wedge_sign, BasisMask};
use crate::error::{Error, Result};
use crate::fieldlin::{Scalar, SparseRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// An element of ℰ in canonical sparse form: basis masks with nonzero
/// coefficients, iterated by grade and then mask value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    alg: Algebra,
    terms: BTreeMap<BasisMask, Scalar>,
}

impl Multivector {
    pub fn zero(alg: Algebra) -> Self {
        Multivector {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: Algebra) -> Self {
        Self::scalar(alg, alg.field().one())
    }

    pub fn scalar(alg: Algebra, c: Scalar) -> Self {
        Self::monomial(alg, BasisMask::UNIT, c)
    }

    pub fn monomial(alg: Algebra, mask: BasisMask, c: Scalar) -> Self {
        debug_assert!(mask.bits() < alg.dim() as u32);
        assert_eq!(c.field(), alg.field(), "coefficient from a different field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        Multivector { alg, terms }
    }

    /// Basis monomial with coefficient 1.
    pub fn basis(alg: Algebra, mask: BasisMask) -> Self {
        Self::monomial(alg, mask, alg.field().one())
    }

    /// The generator e_i, 1 ≤ i ≤ n.
    pub fn generator(alg: Algebra, i: usize) -> Result<Self> {
        if i == 0 || i > alg.n() {
            return Err(Error::IndexOutOfRange { index: i, n: alg.n() });
        }
        Ok(Self::basis(alg, BasisMask::generator(i)))
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisMask, Scalar)>>(alg: Algebra, terms: I) -> Result<Self> {
        let mut out = Self::zero(alg);
        for (m, c) in terms {
            if m.bits() >= alg.dim() as u32 {
                return Err(Error::IndexOutOfRange {
                    index: 32 - m.bits().leading_zeros() as usize,
                    n: alg.n(),
                });
            }
            if c.field() != alg.field() {
                return Err(Error::FieldMismatch {
                    left: alg.field().to_string(),
                    right: c.field().to_string(),
                });
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    pub(crate) fn from_sparse(alg: Algebra, row: &SparseRow) -> Self {
        Multivector {
            alg,
            terms: row
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (BasisMask(*k as u32), c.clone()))
                .collect(),
        }
    }

    /// Coordinates sorted by mask value, for the linear-algebra layer.
    pub(crate) fn to_sparse(&self) -> SparseRow {
        let mut v: SparseRow = self.terms.iter().map(|(m, c)| (m.bits() as usize, c.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Exact linear combination Σ cᵢ·aᵢ.
    pub fn lincomb<'a, I>(alg: Algebra, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Scalar, &'a Multivector)>,
    {
        let mut out = Self::zero(alg);
        for (c, a) in pairs {
            alg.check_same(a.alg)?;
            if c.field() != alg.field() {
                return Err(Error::FieldMismatch {
                    left: alg.field().to_string(),
                    right: c.field().to_string(),
                });
            }
            for (m, x) in &a.terms {
                out.add_term(*m, &(c * x));
            }
        }
        Ok(out)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisMask, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: BasisMask) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(|| self.alg.field().zero())
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(BasisMask::UNIT)
    }

    pub(crate) fn add_term(&mut self, mask: BasisMask, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.alg);
        }
        Multivector {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.alg.check_same(other.alg)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.try_add(&-other)
    }

    /// The exterior product a ∧ b.
    pub fn wedge(&self, other: &Multivector) -> Result<Self> {
        self.alg.check_same(other.alg)?;
        let mut out = Self::zero(self.alg);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let Some(neg) = wedge_sign(*s, *t) {
                    let c = a * b;
                    out.add_term(BasisMask(s.bits() | t.bits()), &if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// [a, b] = a∧b − b∧a.
    pub fn commutator(&self, other: &Multivector) -> Result<Self> {
        self.wedge(other)?.try_sub(&other.wedge(self)?)
    }

    /// k-th wedge power; a⁰ = 1.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.alg), |acc, _| &acc * self)
    }

    /// The homogeneous component aᵢ.
    pub fn grade_project(&self, grade: usize) -> Result<Self> {
        if grade > self.alg.n() {
            return Err(Error::GradeOutOfRange { grade, n: self.alg.n() });
        }
        Ok(self.filtered(|m| m.grade() == grade))
    }

    pub fn parity_part(&self, parity: Parity) -> Self {
        let want = matches!(parity, Parity::Odd) as usize;
        self.filtered(|m| m.grade() % 2 == want)
    }

    fn filtered(&self, keep: impl Fn(BasisMask) -> bool) -> Self {
        Multivector {
            alg: self.alg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn is_parity(&self, parity: Parity) -> bool {
        self.parity_part(parity) == *self
    }

    /// Grades carrying a nonzero component.
    pub fn grades(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.grade()).collect()
    }

    /// Generator indices occurring in any term. The scalar term has empty support.
    pub fn support(&self) -> BTreeSet<usize> {
        let union = self.terms.keys().fold(0u32, |acc, m| acc | m.bits());
        BasisMask(union).indices().into_iter().collect()
    }

    /// Number of irreducible summands; the scalar term counts as one.
    pub fn irr(&self) -> usize {
        self.terms.len()
    }

    /// Irreducible summands of aᵢ, one per distinct support, summing to aᵢ.
    pub fn irr_decomposition(&self, grade: usize) -> Result<Vec<Multivector>> {
        Ok(self
            .grade_project(grade)?
            .terms
            .into_iter()
            .map(|(m, c)| Self::monomial(self.alg, m, c))
            .collect())
    }
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("operands from the same algebra")
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("operands from the same algebra")
    }
}

/// Wedge product.
impl<'a> Mul<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.wedge(rhs).expect("operands from the same algebra")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Multivector> for Multivector {
            type Output = Multivector;
            fn $m(self, rhs: Multivector) -> Multivector {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Multivector> for Multivector {
            type Output = Multivector;
            fn $m(self, rhs: &Multivector) -> Multivector {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlin::Field;

    fn alg(n: usize) -> Algebra {
        Algebra::new(n, Field::Rational).unwrap()
    }

    fn e(a: Algebra, idx: &[usize]) -> Multivector {
        Multivector::basis(a, BasisMask::from_indices(idx))
    }

    fn c(a: Algebra, v: i64) -> Scalar {
        a.field().int(v)
    }

    #[test]
    fn wedge_examples() {
        let a = alg(3);
        assert_eq!(&e(a, &[1]) * &e(a, &[2]), e(a, &[1, 2]));
        assert_eq!(&e(a, &[2]) * &e(a, &[1]), -e(a, &[1, 2]));
        assert!((&e(a, &[1]) * &e(a, &[1])).is_zero());
        assert_eq!(&e(a, &[1, 3]) * &e(a, &[2]), -e(a, &[1, 2, 3]));
        assert!(e(a, &[1]).wedge(&e(alg(2), &[1])).is_err());
    }

    #[test]
    fn lincomb_prunes() {
        let a = alg(2);
        let x = &e(a, &[1]) + &e(a, &[1, 2]);
        let r = Multivector::lincomb(a, [(&c(a, 1), &x), (&c(a, -1), &x)]).unwrap();
        assert!(r.is_zero());
        let r = Multivector::lincomb(a, [(&c(a, 2), &e(a, &[1])), (&c(a, 3), &e(a, &[1]))]).unwrap();
        assert_eq!(r, e(a, &[1]).scale(&c(a, 5)));
        let g = Algebra::new(2, Field::prime(3).unwrap()).unwrap();
        let r = Multivector::lincomb(g, [(&g.field().int(2), &e(g, &[1])), (&g.field().int(1), &e(g, &[1]))]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn grading_and_parity() {
        let a = alg(2);
        let x = &(&Multivector::scalar(a, c(a, 3)) + &e(a, &[1])) + &e(a, &[1, 2]);
        assert_eq!(x.grade_project(1).unwrap(), e(a, &[1]));
        assert_eq!(x.grade_project(0).unwrap(), Multivector::scalar(a, c(a, 3)));
        assert!(e(a, &[1, 2]).grade_project(1).unwrap().is_zero());
        assert!(x.grade_project(3).is_err());
        let y = &Multivector::one(a) + &e(a, &[1]);
        let y = &y + &e(a, &[1, 2]);
        assert_eq!(y.parity_part(Parity::Even), &Multivector::one(a) + &e(a, &[1, 2]));
        assert!(Multivector::zero(a).parity_part(Parity::Even).is_zero());
        let b = alg(3);
        let z = &e(b, &[1]) + &e(b, &[1, 2, 3]);
        assert_eq!(z.parity_part(Parity::Odd), z);
    }

    #[test]
    fn support_and_irr() {
        let a = alg(3);
        assert_eq!(e(a, &[1, 3]).scale(&c(a, 5)).support(), BTreeSet::from([1, 3]));
        assert_eq!((&e(a, &[1]) + &e(a, &[2, 3])).support(), BTreeSet::from([1, 2, 3]));
        assert!(Multivector::scalar(a, c(a, 7)).support().is_empty());
        assert_eq!(Multivector::zero(a).irr(), 0);
        assert_eq!(Multivector::scalar(a, c(a, 5)).irr(), 1);
        let x = &(&e(a, &[1]) + &e(a, &[2, 3]).scale(&c(a, 2))) + &Multivector::scalar(a, c(a, 4));
        assert_eq!(x.irr(), 3);
        let parts = x.irr_decomposition(2).unwrap();
        assert_eq!(parts, vec![e(a, &[2, 3]).scale(&c(a, 2))]);
    }

    #[test]
    fn commutator_examples() {
        let a = alg(3);
        assert_eq!(e(a, &[1]).commutator(&e(a, &[2])).unwrap(), e(a, &[1, 2]).scale(&c(a, 2)));
        assert!(e(a, &[1, 2]).commutator(&e(a, &[3])).unwrap().is_zero());
    }

    #[test]
    fn nilpotent_generator_power() {
        let a = alg(3);
        let x = &(&e(a, &[1]) + &e(a, &[2])) + &e(a, &[3]);
        assert!(!x.pow(1).is_zero());
        assert!(x.pow(2).is_zero());
        let y = &e(a, &[1, 2]) + &e(a, &[3]);
        assert_eq!(y.pow(2), e(a, &[1, 2, 3]).scale(&c(a, 2)));
        assert!(y.pow(4).is_zero());
    }
}
