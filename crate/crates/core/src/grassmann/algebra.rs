use std::fmt;

use crate::error::{Error, Result};
use crate::fieldlin::Field;

/// Default upper bound on the generator count. Dense subspace work is 2ⁿ wide.
pub const DEFAULT_CAP: usize = 16;
/// Hard bound; masks are 32-bit and coordinate indices must stay addressable.
pub const MAX_CAP: usize = 24;

/// The Grassmann algebra ⋀(e₁,…,eₙ) over a field: generator count plus field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    n: usize,
    field: Field,
}

impl Algebra {
    pub fn new(n: usize, field: Field) -> Result<Self> {
        Self::with_cap(n, field, DEFAULT_CAP)
    }

    pub fn with_cap(n: usize, field: Field, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_CAP);
        if n == 0 || n > cap {
            return Err(Error::GeneratorCountOutOfRange { n, cap });
        }
        Ok(Algebra { n, field })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn field(self) -> Field {
        self.field
    }

    /// Dimension 2ⁿ of ℰ as a vector space.
    pub fn dim(self) -> usize {
        1 << self.n
    }

    pub(crate) fn check_same(self, other: Algebra) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} field={}", self.n, self.field)
    }
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
