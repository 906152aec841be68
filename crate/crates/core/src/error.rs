use thiserror::Error;

/// Errors raised by the algebraic and chart operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("blade index {index} is outside a signature with {n} generators")]
    BladeIndexOutOfRange { index: usize, n: usize },

    #[error("blade indices must be strictly increasing, got {0:?}")]
    NonCanonicalBlade(Vec<usize>),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("grade {k} out of range 0..={n}")]
    GradeOutOfRange { k: usize, n: usize },

    #[error("vector is null (g(v) = 0) and has no inverse")]
    NullVector,

    #[error("expected a grade-1 multivector")]
    NotAVector,

    #[error("matrix is not an isometry of the metric (residual {residual:.3e})")]
    NotIsometry { residual: f64 },

    #[error("spin lift failed: {0}")]
    LiftFailed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("relation check failed: {0}")]
    RelationCheck(String),

    #[error("matrix is singular")]
    Singular,

    #[error("momentum is off the mass shell (|g(p,p) - m^2| = {defect:.3e})")]
    OffShell { defect: f64 },

    #[error("metric is degenerate")]
    DegenerateMetric,

    #[error("metric must be constant, diagonal with entries +-1")]
    UnsupportedMetric,

    #[error("matrix has numerical rank {rank}, expected rank one")]
    NotRankOne { rank: usize },

    #[error("determinant must be 1 (got {0})")]
    DeterminantNotOne(String),

    #[error("reconstruction failed (residual {0:.3e})")]
    Reconstruction(f64),

    #[error("point outside chart domain: {0}")]
    Domain(String),

    #[error("unknown {kind} '{name}'")]
    UnknownName { kind: &'static str, name: String },

    #[error("integrand has a pole inside [{a}, {b}]")]
    PoleInInterval { a: f64, b: f64 },

    #[error("quadrature did not converge")]
    Quadrature,

    #[error("zero vector where a nonzero one is required")]
    ZeroVector,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
