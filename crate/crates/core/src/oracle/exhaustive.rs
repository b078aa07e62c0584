use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fieldlin::{Echelon, Field, Scalar, SparseRow, Subspace};
use crate::grassmann::{Algebra, BasisMask, Multivector};
use crate::morphism::AlgebraMap;

/// Default cap on the size of an exhaustive search space.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

fn prime_of(alg: Algebra) -> Result<u32> {
    match alg.field() {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::InvalidArgument("exhaustive search needs a finite field GF(p)".into())),
    }
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

/// Number of k-dimensional subspaces of GF(q)^m; `None` on overflow.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> Option<u128> {
    if k > m {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(checked_pow(q, m - i)?.checked_sub(1)?)?;
        den = den.checked_mul(checked_pow(q, i + 1)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Total number of subspaces of GF(q)^m.
pub fn subspace_count(m: usize, q: u64) -> Option<u128> {
    (0..=m).try_fold(0u128, |acc, k| acc.checked_add(gaussian_binomial(m, k, q)?))
}

/// All automorphisms of ℰ over GF(p) by backtracking over generator images.
///
/// Candidate images are the elements without scalar part that square to
/// zero; each new image must anticommute with the earlier ones, and complete
/// tuples are kept when their linear part is invertible.
pub fn enumerate_automorphisms(alg: Algebra) -> Result<Vec<AlgebraMap>> {
    enumerate_automorphisms_within(alg, DEFAULT_BUDGET)
}

pub fn enumerate_automorphisms_within(alg: Algebra, budget: u128) -> Result<Vec<AlgebraMap>> {
    let p = prime_of(alg)?;
    let ideal_dim = alg.dim() - 1;
    let size = checked_pow(p as u128, alg.n() * ideal_dim).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let masks: Vec<BasisMask> = (1..alg.dim() as u32).map(BasisMask).collect();
    let candidates: Vec<Multivector> = all_vectors(alg, &masks).filter(|g| (g * g).is_zero()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    extend_tuple(alg, &candidates, &mut chosen, &mut out);
    Ok(out)
}

fn extend_tuple(alg: Algebra, cands: &[Multivector], chosen: &mut Vec<usize>, out: &mut Vec<AlgebraMap>) {
    if chosen.len() == alg.n() {
        let images: Vec<Multivector> = chosen.iter().map(|&k| cands[k].clone()).collect();
        let m = AlgebraMap::new(alg, images).expect("anticommutation checked during search");
        if m.is_automorphism() {
            out.push(m);
        }
        return;
    }
    for (k, g) in cands.iter().enumerate() {
        let ok = chosen.iter().all(|&c| (&(g * &cands[c]) + &(&cands[c] * g)).is_zero());
        if ok {
            chosen.push(k);
            extend_tuple(alg, cands, chosen, out);
            chosen.pop();
        }
    }
}

/// Every linear combination of the given masks over GF(p), in counter order.
fn all_vectors(alg: Algebra, masks: &[BasisMask]) -> impl Iterator<Item = Multivector> + '_ {
    let elems = alg.field().elements().expect("finite field");
    let p = elems.len();
    let total = p.pow(masks.len() as u32);
    (0..total).map(move |mut code| {
        let mut terms = Vec::new();
        for &m in masks {
            terms.push((m, elems[code % p].clone()));
            code /= p;
        }
        Multivector::from_terms(alg, terms.into_iter().filter(|(_, c)| !c.is_zero())).expect("valid masks")
    })
}

/// Streams every subspace of the 2ⁿ-dimensional coordinate space over GF(p)
/// exactly once: by dimension, then pivot columns, then free entries.
pub struct SubspaceStream {
    alg: Algebra,
    elems: Vec<Scalar>,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<usize>,
    done: bool,
}

pub fn enumerate_subspaces(alg: Algebra) -> Result<SubspaceStream> {
    enumerate_subspaces_within(alg, DEFAULT_BUDGET)
}

pub fn enumerate_subspaces_within(alg: Algebra, budget: u128) -> Result<SubspaceStream> {
    let p = prime_of(alg)?;
    let size = subspace_count(alg.dim(), p as u64).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut s = SubspaceStream {
        alg,
        elems: alg.field().elements().expect("finite field"),
        k: 0,
        pivots: Vec::new(),
        free: Vec::new(),
        counter: Vec::new(),
        done: false,
    };
    s.reset_free();
    Ok(s)
}

impl SubspaceStream {
    fn reset_free(&mut self) {
        let d = self.alg.dim();
        self.free = self
            .pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| (c + 1..d).filter(|x| !self.pivots.contains(x)).map(move |x| (r, x)))
            .collect();
        self.counter = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let field = self.alg.field();
        let mut rows: Vec<SparseRow> = self.pivots.iter().map(|&c| vec![(c, field.one())]).collect();
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            if v != 0 {
                rows[r].push((c, self.elems[v].clone()));
            }
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
        }
        Subspace::from_echelon(self.alg, Echelon::from_rref_unchecked(field, self.alg.dim(), rows))
    }

    fn advance(&mut self) {
        let p = self.elems.len();
        for digit in self.counter.iter_mut() {
            *digit += 1;
            if *digit < p {
                return;
            }
            *digit = 0;
        }
        if !next_combination(&mut self.pivots, self.alg.dim()) {
            self.k += 1;
            if self.k > self.alg.dim() {
                self.done = true;
                return;
            }
            self.pivots = (0..self.k).collect();
        }
        self.reset_free();
    }
}

fn next_combination(c: &mut [usize], d: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < d - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for SubspaceStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

pub(crate) fn preserved_by(b: &Subspace, maps: &[AlgebraMap]) -> bool {
    let basis = b.basis();
    maps.iter()
        .all(|m| basis.iter().all(|v| b.contains(&m.apply(v).expect("same algebra")).expect("same algebra")))
}

/// Subspaces fixed by every automorphism, found by checking the whole group
/// against every subspace. Uses no classification result.
pub fn exhaustive_stable_set(alg: Algebra) -> Result<Vec<Subspace>> {
    let autos = enumerate_automorphisms(alg)?;
    let stream = enumerate_subspaces(alg)?;
    let mut out = Vec::new();
    let mut chunk = Vec::with_capacity(4096);
    let flush = |chunk: &mut Vec<Subspace>, out: &mut Vec<Subspace>| {
        let kept: Vec<Subspace> = chunk.par_drain(..).filter(|b| preserved_by(b, &autos)).collect();
        out.extend(kept);
    };
    for b in stream {
        chunk.push(b);
        if chunk.len() == 4096 {
            flush(&mut chunk, &mut out);
        }
    }
    flush(&mut chunk, &mut out);
    Ok(out)
}
