use thiserror::Error;

/// Errors shared across the library. Variant names follow the operation
/// contracts they guard.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("operation undefined on zero input")]
    UndefinedInput,
    #[error("resultant undefined for a zero form")]
    UndefinedResultant,
    #[error("Witt vectors live over different coefficient rings")]
    RingMismatch,
    #[error("curve is singular (discriminant zero)")]
    SingularCurve,
    #[error("prime {0} unsupported; only p >= 5 is handled")]
    UnsupportedPrime(u64),
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("branch loci of the two projections coincide as sets")]
    BranchLociCoincide,
    #[error("auxiliary prime {0} violates the oracle preconditions: {1}")]
    InadmissibleAuxiliaryPrime(u64, String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("reduction of the cubic is singular")]
    SingularReduction,
    #[error("reduction is not ordinary")]
    NotOrdinary,
    #[error("theorem hypotheses not verified: {0}")]
    HypothesesNotVerified(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Galois action not certified large (canonical lift without decomposition)")]
    NotLarge,
    #[error("spec error: {0}")]
    SpecError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
