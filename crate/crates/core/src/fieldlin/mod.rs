//! Exact scalars over ℚ and GF(p), and canonical linear algebra on the
//! 2ⁿ-dimensional coordinate space of ℰ.

mod echelon;
mod scalar;
mod subspace;

pub use echelon::{invert, rank, solve, Echelon, SparseRow};
pub use scalar::{Field, Scalar};
pub use subspace::{CoordVector, Subspace};
