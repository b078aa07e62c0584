use super::{Algebra, BasisMask, Multivector};
use crate::fieldlin::{Echelon, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterMethod {
    /// Span of the even-grade monomials and the top monomial.
    Formula,
    /// Kernel of x ↦ ([x, e_T])_T over all basis monomials e_T.
    BruteForce,
}

pub fn center_of(alg: Algebra, method: CenterMethod) -> Subspace {
    match method {
        CenterMethod::Formula => {
            let n = alg.n();
            Subspace::coordinate(
                alg,
                (0..alg.dim() as u32)
                    .map(BasisMask)
                    .filter(|m| m.grade() % 2 == 0 || m.grade() == n),
            )
        }
        CenterMethod::BruteForce => centralizer_by_elimination(alg),
    }
}

fn centralizer_by_elimination(alg: Algebra) -> Subspace {
    let dim = alg.dim();
    let basis: Vec<Multivector> = (0..dim as u32).map(|m| Multivector::basis(alg, BasisMask(m))).collect();
    let mut equations = Echelon::new(alg.field(), dim);
    for t in &basis {
        // Row U of this block collects the coefficient of e_U in [x, e_T].
        let mut block: Vec<Vec<(usize, crate::fieldlin::Scalar)>> = vec![Vec::new(); dim];
        for (s, e_s) in basis.iter().enumerate() {
            let c = e_s.commutator(t).expect("same algebra");
            for (u, coeff) in c.terms() {
                block[u.bits() as usize].push((s, coeff.clone()));
            }
        }
        for mut row in block.into_iter().filter(|r| !r.is_empty()) {
            row.sort_by_key(|(k, _)| *k);
            equations.insert(row);
        }
    }
    let kernel = Echelon::from_rows(alg.field(), dim, equations.nullspace());
    Subspace::from_echelon(alg, kernel)
}

/// The unital subalgebra generated by all commutators [e_S, e_T] of basis
/// monomials, computed as a wedge-closure fixpoint.
pub fn commutator_subalgebra(alg: Algebra) -> Subspace {
    let basis: Vec<Multivector> = (0..alg.dim() as u32).map(|m| Multivector::basis(alg, BasisMask(m))).collect();
    let mut generators = Subspace::zero(alg);
    for a in &basis {
        for b in &basis {
            let c = a.commutator(b).expect("same algebra");
            if !c.is_zero() {
                generators.insert(&c).expect("same algebra");
            }
        }
    }
    let gens = generators.basis();
    let mut current = generators.clone();
    current.insert(&Multivector::one(alg)).expect("same algebra");
    // Each round multiplies by one more generator; products of more than n
    // factors from the augmentation ideal vanish.
    for _ in 0..=alg.n() {
        let mut next = current.clone();
        for u in current.basis() {
            for g in &gens {
                next.insert(&(&u * g)).expect("same algebra");
            }
        }
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
    panic!("commutator subalgebra did not stabilise within n+1 rounds");
}
