use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fieldlin::{self, Scalar};
use crate::grassmann::{Algebra, BasisMask, Multivector, Parity};

/// An algebra endomorphism of ℰ determined by the generator images g₁,…,gₙ.
///
/// Construction checks that every gᵢ lies in the augmentation ideal and that
/// gᵢ∧gⱼ + gⱼ∧gᵢ = 0 for all i, j, which is exactly what is needed for the
/// multiplicative extension to be well defined. The images of all 2ⁿ basis
/// monomials are computed once, on first use.
pub struct AlgebraMap {
    alg: Algebra,
    images: Vec<Multivector>,
    columns: OnceLock<Vec<Multivector>>,
}

impl Clone for AlgebraMap {
    fn clone(&self) -> Self {
        AlgebraMap {
            alg: self.alg,
            images: self.images.clone(),
            columns: self.columns.clone(),
        }
    }
}

impl PartialEq for AlgebraMap {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.images == other.images
    }
}

impl Eq for AlgebraMap {}

impl fmt::Debug for AlgebraMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraMap")
            .field("alg", &self.alg)
            .field("images", &self.images)
            .finish()
    }
}

impl AlgebraMap {
    /// Validated map from generator images.
    pub fn new(alg: Algebra, images: Vec<Multivector>) -> Result<Self> {
        if images.len() != alg.n() {
            return Err(Error::WrongArity {
                expected: alg.n(),
                found: images.len(),
            });
        }
        for (i, g) in images.iter().enumerate() {
            alg.check_same(g.algebra())?;
            if !g.scalar_part().is_zero() {
                return Err(Error::ScalarPartPresent(i + 1));
            }
        }
        for i in 0..images.len() {
            for j in i..images.len() {
                let anti = &(&images[i] * &images[j]) + &(&images[j] * &images[i]);
                if !anti.is_zero() {
                    return Err(Error::RelationViolation(i + 1, j + 1));
                }
            }
        }
        Ok(Self::new_unchecked(alg, images))
    }

    pub(crate) fn new_unchecked(alg: Algebra, images: Vec<Multivector>) -> Self {
        AlgebraMap {
            alg,
            images,
            columns: OnceLock::new(),
        }
    }

    pub fn identity(alg: Algebra) -> Self {
        let images = (1..=alg.n())
            .map(|i| Multivector::generator(alg, i).expect("index in range"))
            .collect();
        Self::new_unchecked(alg, images)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn images(&self) -> &[Multivector] {
        &self.images
    }

    /// Image of generator e_i (1-based).
    pub fn image(&self, i: usize) -> &Multivector {
        &self.images[i - 1]
    }

    /// Images of all basis monomials, indexed by mask value.
    ///
    /// e_S = e_{min S} ∧ e_{S∖min S}, so each column is one product of a
    /// generator image with an earlier column.
    pub fn columns(&self) -> &[Multivector] {
        self.columns.get_or_init(|| {
            let mut cols: Vec<Multivector> = Vec::with_capacity(self.alg.dim());
            cols.push(Multivector::one(self.alg));
            for mask in 1..self.alg.dim() {
                let low = mask.trailing_zeros() as usize;
                let rest = mask & (mask - 1);
                let col = &self.images[low] * &cols[rest];
                cols.push(col);
            }
            cols
        })
    }

    pub fn apply_basis(&self, mask: BasisMask) -> &Multivector {
        &self.columns()[mask.bits() as usize]
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        self.alg.check_same(x.algebra())?;
        let cols = self.columns();
        let mut out = Multivector::zero(self.alg);
        for (m, c) in x.terms() {
            for (u, y) in cols[m.bits() as usize].terms() {
                out.add_term(u, &(c * y));
            }
        }
        Ok(out)
    }

    /// Dense 2ⁿ×2ⁿ matrix, row = output mask, column = input mask.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        let d = self.alg.dim();
        let mut m = vec![vec![self.alg.field().zero(); d]; d];
        for (s, col) in self.columns().iter().enumerate() {
            for (u, c) in col.terms() {
                m[u.bits() as usize][s] = c.clone();
            }
        }
        m
    }

    /// n×n matrix of degree-1 parts: row i holds the ℰ₁ coefficients of gᵢ.
    pub fn linear_part(&self) -> Vec<Vec<Scalar>> {
        self.images
            .iter()
            .map(|g| (1..=self.alg.n()).map(|j| g.coefficient(BasisMask::generator(j))).collect())
            .collect()
    }

    /// ℰ is local with maximal ideal ⊕_{i≥1} ℰᵢ, so the map is bijective iff
    /// its degree-1 part is.
    pub fn is_automorphism(&self) -> bool {
        fieldlin::rank(self.alg.field(), &self.linear_part()) == self.alg.n()
    }

    /// Inverse through the full coordinate matrix: the preimage of eᵢ is read
    /// off the inverse matrix column for eᵢ.
    pub fn invert(&self) -> Result<AlgebraMap> {
        if !self.is_automorphism() {
            return Err(Error::NotInvertible);
        }
        let inv = fieldlin::invert(self.alg.field(), &self.matrix()).ok_or(Error::NotInvertible)?;
        let images = (1..=self.alg.n())
            .map(|i| {
                let col = BasisMask::generator(i).bits() as usize;
                let terms = (0..self.alg.dim()).map(|u| (BasisMask(u as u32), inv[u][col].clone()));
                Multivector::from_terms(self.alg, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::new(self.alg, images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        self.alg.check_same(other.alg)?;
        let images = other
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap::new_unchecked(self.alg, images))
    }

    /// Membership in F₀: all generator images purely odd.
    pub fn is_parity_preserving(&self) -> bool {
        self.images.iter().all(|g| g.is_parity(Parity::Odd))
    }
}
