//! Sparse reduced row-echelon engine over an arbitrary column count.
//!
//! Rows are kept fully reduced at all times: every pivot entry is 1 and every
//! pivot column is zero in all other rows. Because of that, reducing a vector
//! against the basis never cascades: subtracting `v[p] * row_p` for each pivot
//! `p` in the support of `v` clears all pivot coordinates in one pass.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseRow>,
}

/// `a - c * b` on sparse rows.
pub(crate) fn sub_scaled(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = -(c * &b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn scale_row(row: &SparseRow, c: &Scalar) -> SparseRow {
    if c.is_zero() {
        return Vec::new();
    }
    row.iter().map(|(k, v)| (*k, v * c)).collect()
}

pub(crate) fn dense_to_sparse(dense: &[Scalar]) -> SparseRow {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.clone()))
        .collect()
}

pub(crate) fn sparse_to_dense(field: Field, ncols: usize, row: &SparseRow) -> Vec<Scalar> {
    let mut out = vec![field.zero(); ncols];
    for (k, v) in row {
        out[*k] = v.clone();
    }
    out
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseRow>>(field: Field, ncols: usize, rows: I) -> Self {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    /// Trusts that `rows` are already in reduced row-echelon form.
    pub(crate) fn from_rref_unchecked(field: Field, ncols: usize, rows: Vec<SparseRow>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0][0].0 < w[1][0].0));
        Echelon { field, ncols, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    fn row_with_pivot(&self, col: usize) -> Option<&SparseRow> {
        self.rows
            .binary_search_by(|r| r[0].0.cmp(&col))
            .ok()
            .map(|i| &self.rows[i])
    }

    /// `v` minus its projection onto the row space along pivot coordinates.
    /// Zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let hits: Vec<(&SparseRow, &Scalar)> = v
            .iter()
            .filter_map(|(k, c)| self.row_with_pivot(*k).map(|r| (r, c)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        if hits.len() == 1 {
            return sub_scaled(v, hits[0].1, hits[0].0);
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        for (row, c) in hits {
            for (k, x) in row {
                let e = acc.entry(*k).or_insert_with(|| self.field.zero());
                *e -= &(c * x);
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        debug_assert!(v.iter().all(|(k, _)| *k < self.ncols));
        let r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let lead_inv = r[0].1.inv().expect("leading entry is nonzero");
        let r = scale_row(&r, &lead_inv);
        let pivot = r[0].0;
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by(|(k, _)| k.cmp(&pivot)) {
                let c = row[pos].1.clone();
                *row = sub_scaled(row, &c, &r);
            }
        }
        let at = self.rows.partition_point(|row| row[0].0 < pivot);
        self.rows.insert(at, r);
        true
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v: Vec<(usize, Scalar)> = vec![(free, self.field.one())];
            for row in &self.rows {
                if let Ok(pos) = row.binary_search_by(|(k, _)| k.cmp(&free)) {
                    v.push((row[0].0, -&row[pos].1));
                }
            }
            v.sort_by_key(|(k, _)| *k);
            out.push(v);
        }
        out
    }
}

/// Solves `A x = b`, setting free variables to zero. `None` if inconsistent.
pub fn solve(field: Field, ncols: usize, equations: &[SparseRow], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(equations.len(), rhs.len());
    let mut e = Echelon::new(field, ncols + 1);
    for (row, b) in equations.iter().zip(rhs) {
        let mut aug = row.clone();
        if !b.is_zero() {
            aug.push((ncols, b.clone()));
        }
        e.insert(aug);
    }
    let mut x = vec![field.zero(); ncols];
    for row in e.rows() {
        let p = row[0].0;
        if p == ncols {
            return None;
        }
        if let Some((k, v)) = row.last() {
            if *k == ncols {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

/// Inverse of a square dense matrix (row-major), or `None` if singular.
pub fn invert(field: Field, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let d = m.len();
    let mut e = Echelon::new(field, 2 * d);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), d);
        let mut aug = dense_to_sparse(row);
        aug.push((d + i, field.one()));
        e.insert(aug);
    }
    if e.rank() != d || e.rows().iter().enumerate().any(|(i, r)| r[0].0 != i) {
        return None;
    }
    Some(
        e.rows()
            .iter()
            .map(|r| {
                let mut out = vec![field.zero(); d];
                for (k, v) in r.iter().skip(1) {
                    if *k >= d {
                        out[*k - d] = v.clone();
                    }
                }
                out
            })
            .collect(),
    )
}

/// Rank of a dense matrix.
pub fn rank(field: Field, m: &[Vec<Scalar>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    Echelon::from_rows(field, ncols, m.iter().map(|r| dense_to_sparse(r))).rank()
}
