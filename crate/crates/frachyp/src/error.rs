//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the evaluation, classification and solver routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The mathematically correct result exceeds the double-precision range.
    #[error("result overflows double precision")]
    Overflow,

    /// A series failed to meet its tail bound within the term budget.
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    /// The high-precision oracle could not certify its tail bound within
    /// the working-precision budget.
    #[error("tail bound not certified within {bits}-bit precision budget")]
    PrecisionBudget { bits: u32 },

    /// The QR/Schur iteration did not converge.
    #[error("eigenvalue iteration failed to converge")]
    EigenFailure,

    /// Matrix or vector dimensions are inconsistent.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The two matrix-function evaluation paths disagree beyond tolerance.
    #[error("matrix-function paths disagree: relative difference {diff:.3e}")]
    PathMismatch { diff: f64 },

    /// The argument lies in the sector transition band where no envelope
    /// is asserted.
    #[error("argument lies in the transition band ({lo:.6} < |arg z| <= {hi:.6})")]
    TransitionBand { lo: f64, hi: f64 },

    /// A sample set cannot support the requested fit.
    #[error("degenerate sample set: {0}")]
    DegenerateSamples(String),

    /// Not enough usable data for a fit (exterior region, dynamic range).
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Exterior field values sit at the mollifier noise floor.
    #[error("exterior samples are dominated by the mollifier floor: {0}")]
    MollifierFloor(String),

    /// An implicit time step produced a singular linear system.
    #[error("singular linear solve at step {step}")]
    SingularSolve { step: usize },

    /// A per-frequency resolvent evaluation failed during a grid solve.
    #[error("resolvent evaluation failed at sigma = {sigma:?}: {source}")]
    SolveAborted {
        sigma: Vec<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
