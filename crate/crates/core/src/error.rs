use thiserror::Error;

use crate::classify::CanonicalForm;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported: the field must have characteristic different from 2")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("generator count {n} outside 1..={cap}")]
    GeneratorCountOutOfRange { n: usize, cap: usize },
    #[error("grade {grade} outside 0..={n}")]
    GradeOutOfRange { grade: usize, n: usize },
    #[error("generator index e{index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} generator images, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("image of e{0} has a nonzero scalar part")]
    ScalarPartPresent(usize),
    #[error("images of e{0} and e{1} do not anticommute")]
    RelationViolation(usize, usize),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("element has a nonzero even component")]
    NonOddElement,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("N1 x F0 factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid canonical form: {0}")]
    InvalidForm(String),
    #[error("classification anomaly: {form_status} but no witness found for subspace of dim {dim}")]
    ClassificationAnomaly {
        dim: usize,
        form_status: String,
        matched: Option<Box<CanonicalForm>>,
    },
    #[error("search space of {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed subspace file, line {line}: {message}")]
    SubspaceFile { line: usize, message: String },
}

impl Error {
    /// Short machine-greppable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CharacteristicTwo => "characteristic-two",
            Error::NotPrime(_) => "not-prime",
            Error::FieldMismatch { .. } => "field-mismatch",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::GeneratorMismatch { .. } => "generator-mismatch",
            Error::GeneratorCountOutOfRange { .. } => "n-out-of-range",
            Error::GradeOutOfRange { .. } => "grade-out-of-range",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::WrongArity { .. } => "wrong-arity",
            Error::ScalarPartPresent(_) => "scalar-part-present",
            Error::RelationViolation(..) => "relation-violation",
            Error::NotInvertible => "not-invertible",
            Error::NotAutomorphism => "not-automorphism",
            Error::NonOddElement => "non-odd-element",
            Error::ZeroScalar => "zero-scalar",
            Error::FactorizationFailed(_) => "factorization-failed",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::InvalidForm(_) => "invalid-form",
            Error::ClassificationAnomaly { .. } => "classification-anomaly",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::Syntax { .. } => "syntax-error",
            Error::DivisionByZero => "division-by-zero",
            Error::SubspaceFile { .. } => "subspace-file",
        }
    }
}
