use std::cmp::Ordering;

use super::echelon::{self, Echelon, SparseRow};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::grassmann::{Algebra, BasisMask, Multivector};

/// Dense coordinates of an element of ℰ, indexed by basis mask value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordVector {
    alg: Algebra,
    coords: Vec<Scalar>,
}

impl CoordVector {
    pub fn new(alg: Algebra, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|c| c.field() != alg.field()) {
            return Err(Error::FieldMismatch {
                left: alg.field().to_string(),
                right: bad.field().to_string(),
            });
        }
        Ok(CoordVector { alg, coords })
    }

    pub fn zero(alg: Algebra) -> Self {
        CoordVector {
            alg,
            coords: vec![alg.field().zero(); alg.dim()],
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector::from_sparse(self.alg, &echelon::dense_to_sparse(&self.coords))
    }

    pub(crate) fn to_sparse(&self) -> SparseRow {
        echelon::dense_to_sparse(&self.coords)
    }
}

impl From<&Multivector> for CoordVector {
    fn from(m: &Multivector) -> Self {
        let alg = m.algebra();
        CoordVector {
            alg,
            coords: echelon::sparse_to_dense(alg.field(), alg.dim(), &m.to_sparse()),
        }
    }
}

/// A subspace of ℰ held as its canonical reduced row-echelon basis.
///
/// Two subspaces are equal iff their RREF matrices agree entry-wise, which
/// is what the derived `PartialEq` compares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    alg: Algebra,
    ech: Echelon,
}

impl Subspace {
    pub fn zero(alg: Algebra) -> Self {
        Subspace {
            alg,
            ech: Echelon::new(alg.field(), alg.dim()),
        }
    }

    pub fn full(alg: Algebra) -> Self {
        Self::coordinate(alg, (0..alg.dim() as u32).map(BasisMask))
    }

    /// Span of the given basis monomials.
    pub fn coordinate<I: IntoIterator<Item = BasisMask>>(alg: Algebra, masks: I) -> Self {
        let mut cols: Vec<usize> = masks.into_iter().map(|m| m.bits() as usize).collect();
        cols.sort_unstable();
        cols.dedup();
        let rows = cols.into_iter().map(|c| vec![(c, alg.field().one())]).collect();
        Subspace {
            alg,
            ech: Echelon::from_rref_unchecked(alg.field(), alg.dim(), rows),
        }
    }

    /// Direct sum of full graded components, plus ℰ₀ when `unit` is set.
    /// Grades above n contribute nothing.
    pub fn graded<I: IntoIterator<Item = usize>>(alg: Algebra, unit: bool, grades: I) -> Self {
        let grades: Vec<usize> = grades.into_iter().collect();
        let masks = (0..alg.dim() as u32).map(BasisMask).filter(|m| {
            let g = m.grade();
            (g == 0 && unit) || (g > 0 && grades.contains(&g))
        });
        Self::coordinate(alg, masks)
    }

    /// Canonical RREF span of coordinate rows.
    pub fn rref(alg: Algebra, rows: &[CoordVector]) -> Result<Self> {
        let mut s = Subspace::zero(alg);
        for r in rows {
            alg.check_same(r.alg)?;
            s.ech.insert(r.to_sparse());
        }
        Ok(s)
    }

    pub fn span<'a, I: IntoIterator<Item = &'a Multivector>>(alg: Algebra, vectors: I) -> Result<Self> {
        let mut s = Subspace::zero(alg);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub(crate) fn from_echelon(alg: Algebra, ech: Echelon) -> Self {
        debug_assert_eq!(ech.ncols(), alg.dim());
        Subspace { alg, ech }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.ech.pivots().collect()
    }

    pub fn basis(&self) -> Vec<Multivector> {
        self.ech
            .rows()
            .iter()
            .map(|r| Multivector::from_sparse(self.alg, r))
            .collect()
    }

    pub fn basis_coords(&self) -> Vec<CoordVector> {
        self.ech
            .rows()
            .iter()
            .map(|r| CoordVector {
                alg: self.alg,
                coords: echelon::sparse_to_dense(self.alg.field(), self.alg.dim(), r),
            })
            .collect()
    }

    /// Adds a vector to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Multivector) -> Result<bool> {
        self.alg.check_same(v.algebra())?;
        Ok(self.ech.insert(v.to_sparse()))
    }

    pub fn contains(&self, v: &Multivector) -> Result<bool> {
        self.alg.check_same(v.algebra())?;
        Ok(self.ech.contains(&v.to_sparse()))
    }

    pub fn member(&self, v: &CoordVector) -> Result<bool> {
        self.alg.check_same(v.alg)?;
        Ok(self.ech.contains(&v.to_sparse()))
    }

    /// Component of `v` outside the span along pivot coordinates (zero iff `v ∈ self`).
    pub fn residual(&self, v: &Multivector) -> Result<Multivector> {
        self.alg.check_same(v.algebra())?;
        Ok(Multivector::from_sparse(self.alg, &self.ech.reduce(&v.to_sparse())))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.alg.check_same(other.alg)?;
        Ok(self.ech.rows().iter().all(|r| other.ech.contains(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.alg.check_same(other.alg)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut ech = big.ech.clone();
        for r in small.ech.rows() {
            ech.insert(r.clone());
        }
        Ok(Subspace { alg: self.alg, ech })
    }

    /// Zassenhaus intersection: reduce rows `[a | a]` and `[b | 0]`; the rows
    /// whose left half vanishes carry a basis of the intersection on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.alg.check_same(other.alg)?;
        let d = self.alg.dim();
        let mut z = Echelon::new(self.alg.field(), 2 * d);
        for r in self.ech.rows() {
            let mut doubled = r.clone();
            doubled.extend(r.iter().map(|(k, v)| (k + d, v.clone())));
            z.insert(doubled);
        }
        for r in other.ech.rows() {
            z.insert(r.clone());
        }
        let rows = z
            .rows()
            .iter()
            .filter(|r| r[0].0 >= d)
            .map(|r| r.iter().map(|(k, v)| (k - d, v.clone())).collect::<SparseRow>());
        Ok(Subspace {
            alg: self.alg,
            ech: Echelon::from_rows(self.alg.field(), d, rows),
        })
    }
}

fn cmp_rows(a: &SparseRow, b: &SparseRow) -> Ordering {
    // Dense lexicographic order, missing entries read as zero.
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((ka, va)), Some((kb, vb))) if ka == kb => {
                let o = va.cmp(vb);
                if o != Ordering::Equal {
                    return o;
                }
                i += 1;
                j += 1;
            }
            (Some((ka, va)), Some((kb, _))) if ka < kb => return va.cmp(&va.field().zero()),
            (Some(_), Some((_, vb))) => return vb.field().zero().cmp(vb),
            (Some((_, va)), None) => return va.cmp(&va.field().zero()),
            (None, Some((_, vb))) => return vb.field().zero().cmp(vb),
        }
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension, then lexicographically by the dense RREF rows.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| {
            for (a, b) in self.ech.rows().iter().zip(other.ech.rows()) {
                let o = cmp_rows(a, b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}
