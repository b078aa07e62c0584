//! The Grassmann algebra ℰ = ⋀(e₁,…,eₙ): multivectors, grading, supports,
//! commutators, the center and the commutator subalgebra.

mod algebra;
mod center;
mod mask;
mod multivector;
mod profile;

pub use algebra::{binomial, Algebra, DEFAULT_CAP, MAX_CAP};
pub use center::{center_of, commutator_subalgebra, CenterMethod};
pub use mask::{wedge_sign, BasisMask};
pub use multivector::{Multivector, Parity};
pub use profile::GradedProfile;
