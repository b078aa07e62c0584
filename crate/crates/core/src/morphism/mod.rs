//! Endomorphisms and automorphisms of ℰ: maps from generator images, the
//! named witness automorphisms, inner automorphisms, the N₁ ⋊ F₀
//! factorization and seeded sampling.

mod factor;
mod map;
mod named;
mod random;

pub use factor::{factor_n1_f0, Factorization};
pub use map::AlgebraMap;
pub use named::{
    cubic_shear, exp_inner, inner_automorphism, sign_flip, transposition, witness_family, InnerDerivation, NamedMap,
};
pub use random::{
    random_automorphism, random_multivector, random_scalar, AutomorphismSampler, SamplingProfile,
};
