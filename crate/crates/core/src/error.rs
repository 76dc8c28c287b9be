use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Mathematical failures (a separation that cannot be built, a sequence that
/// is not Cauchy) are errors too; the CLI maps them to exit code 1 while parse
/// and usage problems map to exit code 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors must have at least one coordinate")]
    EmptyVector,

    #[error("exponent {0} is not admissible (need p >= 1 or p = inf)")]
    InvalidExponent(f64),

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("basis is singular or not spanning")]
    SingularBasis,

    #[error("complex input rejected: {0}")]
    ComplexInput(&'static str),

    #[error("extension direction lies in the subspace (distance {distance:e})")]
    ExtensionDirection { distance: f64 },

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("separation impossible at this tolerance: distance {distance:e} <= tol {tol:e}")]
    SeparationImpossible { distance: f64, tol: f64 },

    #[error("exponent mismatch: {0}")]
    ExponentMismatch(String),

    #[error("Cauchy condition violated by pair ({m}, {n}): distance {distance:e} > eps {eps:e}")]
    CauchyViolation {
        m: usize,
        n: usize,
        distance: f64,
        eps: f64,
    },

    #[error("no witness exists: {0}")]
    NoWitness(&'static str),

    #[error("incomplete specification: missing value for {0}")]
    MissingValue(String),

    #[error("grid dimension {0} exceeds the cost guard of 4")]
    DimensionGuard(usize),

    #[error("non-finite entry encountered")]
    NonFinite,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures that are statements about the mathematics rather
    /// than about malformed input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::ExtensionDirection { .. }
                | Error::SolverFailure(_)
                | Error::SeparationImpossible { .. }
                | Error::CauchyViolation { .. }
                | Error::NoWitness(_)
                | Error::SingularBasis
                | Error::InvalidNorm(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
