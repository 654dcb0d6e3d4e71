use thiserror::Error;

/// Errors surfaced by the exact and multiprecision pipelines.
///
/// Division and tail errors signal violated polynomial identities; they are
/// never silently patched downstream.
#[derive(Debug, Error)]
pub enum Error {
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("tail coefficient {index} of a partner expansion is nonzero: {value}")]
    TailNotVanishing { index: usize, value: String },

    #[error("multi-index is not normal: {0}")]
    NonNormalIndex(String),

    #[error("insufficient moments: need {needed}, have {have}")]
    InsufficientMoments { needed: usize, have: usize },

    #[error("seed moments missing for component {component}: need {needed}, have {have}")]
    SeedMomentsMissing {
        component: usize,
        needed: usize,
        have: usize,
    },

    #[error("moment recurrence singular at index {index}; supply that moment as a seed")]
    RecurrenceSingular { index: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("index-swapped route disagrees for {0}; construction invariant violated")]
    AsymmetryDetected(String),

    #[error("zero at index {index} collides with a pole of the external field")]
    PoleCollision { index: usize },

    #[error("zero sets overlap within certified radii (indices {0}, {1})")]
    OverlapDetected(usize, usize),

    #[error("comparison ambiguous at current precision: {0}")]
    AmbiguousAtPrecision(String),

    #[error("precision cap {cap} bits exceeded while {context}")]
    PrecisionCapExceeded { cap: u32, context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
