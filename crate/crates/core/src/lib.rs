//! Exact computations in the Grassmann algebra ℰ = ⋀(e₁,…,eₙ) over ℚ or GF(p)
//! with p odd: multivector arithmetic, automorphisms, and the classification
//! of subspaces and subalgebras stable under every automorphism, together
//! with brute-force oracles that check it.

pub mod classify;
pub mod error;
pub mod expr;
pub mod fieldlin;
pub mod grassmann;
pub mod morphism;
pub mod oracle;

pub use error::{Error, Result};
pub use fieldlin::{Field, Scalar, Subspace};
pub use grassmann::{Algebra, BasisMask, Multivector};
pub use morphism::AlgebraMap;
