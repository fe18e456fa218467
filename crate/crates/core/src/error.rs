use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar parse error: {0}")]
    ScalarParse(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("algebra has no *-structure")]
    NoStarStructure,
    #[error("could not match numerical candidate to an exact cyclotomic vector: {0}")]
    ExactificationFailed(String),
    #[error("left-invariance system has only the zero solution")]
    NoIntegral,
    #[error("left-invariance system has a {0}-dimensional solution space")]
    NonUniqueIntegral(usize),
    #[error("right invariance of φ∘S failed at basis element {0}")]
    RightInvarianceFailed(usize),
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
    #[error("element is not group-like: {0}")]
    NotGroupLike(String),
    #[error("integral is not faithful (singular Gram matrix)")]
    NotFaithful,
    #[error("modular map is not an algebra automorphism: {0}")]
    NotAutomorphism(String),
    #[error("φ∘S² is not proportional to φ")]
    NotProportional,
    #[error("dual structure failed verification: {0}")]
    DualVerificationFailed(String),
    #[error("Fourier transform is not bijective")]
    NotBijective,
    #[error("dual integral disagrees with direct computation: {0}")]
    InconsistentWithDirectComputation(String),
    #[error("integral is not positive")]
    NotPositive,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),
    #[error("parameter is not a primitive {0}-th root of unity")]
    NotPrimitiveRoot(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
