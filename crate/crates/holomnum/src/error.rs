use thiserror::Error;

/// Errors produced by the evaluation engine.
///
/// Several variants are *retryable*: they signal that the working precision
/// was too low to certify a step, and that the caller should retry with a
/// higher precision. The path engine's precision loop does this
/// automatically.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by a ball containing zero")]
    DivisionByZeroBall,

    #[error("ball straddles the branch cut of {0}")]
    BranchCut(&'static str),

    #[error("pivot contains zero (insufficient precision)")]
    PivotContainsZero,

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("tail bound validation failed at truncation order {0}")]
    TailBoundFailed(usize),

    #[error("truncation order too small: need at least {need}, got {got}")]
    TruncationTooSmall { need: usize, got: usize },

    #[error("point is an irregular singular point of the operator")]
    IrregularSingular,

    #[error("unsupported exponent: indicial polynomial has a non-rational root")]
    NonRationalExponent,

    #[error("path passes through a singular point of the operator")]
    PathThroughSingularity,

    #[error("interior path vertex is a singular point of the operator")]
    InteriorSingularVertex,

    #[error("operator is zero")]
    ZeroOperator,

    #[error("incompatible exact scalar fields")]
    IncompatibleFields,

    #[error("division by zero in exact arithmetic")]
    ExactDivisionByZero,

    #[error("{0} of a value on the branch cut (zero or negative real axis)")]
    ConstantDomain(&'static str),

    #[error("cannot certify isolating rectangle: {0}")]
    IsolationFailed(String),

    #[error("root refinement failed to converge")]
    RefinementFailed,

    #[error("retry limit exhausted after {retries} precision doublings: {source}")]
    RetryExhausted {
        retries: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("binary splitting requires an exact rational or Gaussian rational evaluation point")]
    InexactEvaluationPoint,

    #[error("basis label ({0}, {1}) does not belong to the local basis at this point")]
    UnknownBasisLabel(String, usize),

    #[error("initial condition vector has length {got}, operator order is {need}")]
    IniLengthMismatch { need: usize, got: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures that higher working precision can fix.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::PivotContainsZero
                | Error::TailBoundFailed(_)
                | Error::BranchCut(_)
                | Error::DivisionByZeroBall
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
