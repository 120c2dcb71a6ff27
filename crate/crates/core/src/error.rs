use thiserror::Error;

/// Errors raised by the library. Variants marked as internal signal a bug
/// rather than a property of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("basis has rank {rank}, expected {expected}")]
    SingularBasis { rank: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not an odd prime")]
    InvalidPrime(i64),
    #[error("arguments must be nonzero")]
    ZeroArgument,
    #[error("lattice is not closed under multiplication: {0}")]
    NotARing(String),
    #[error("lattice element is not integral: {0}")]
    NotIntegral(String),
    #[error("basis is not of full rank")]
    NotFullRank,
    #[error("internal: trace-form determinant {0} is not a perfect square")]
    InternalNonSquareDiscriminant(String),
    #[error("maximalization failed: {0}")]
    MaximalizationFailed(String),
    #[error("order is not maximal (reduced discriminant {0})")]
    NotMaximal(String),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("ideals belong to different orders")]
    OrderMismatch,
    #[error("lattice is not a two-sided ideal of the order: {0}")]
    NotTwoSided(String),
    #[error("inverse ideal failed verification: I * I^-1 != order")]
    InverseVerificationFailed,
    #[error("{0} is not ramified in the algebra")]
    NotRamified(u64),
    #[error("alpha must be a positive rational")]
    NonPositiveAlpha,
    #[error("internal: det(gram) = {gram} but the norm formula gives {formula}")]
    DiscriminantFormulaMismatch { gram: String, formula: String },
    #[error("internal: Gram-inverse dual and ideal-formula dual differ")]
    DualMismatch,
    #[error("internal: algebra ({a},{b}) does not ramify exactly at {ell}")]
    RamificationCheckFailed { a: i64, b: i64, ell: u64 },
    #[error("beta verification failed: {0}")]
    BetaVerificationFailed(String),
    #[error("no construction found: {0}")]
    NoPlanFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
