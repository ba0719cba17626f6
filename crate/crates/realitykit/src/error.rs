use thiserror::Error;

/// Errors surfaced by state construction, channel application, and the
/// divergence / reality quantifier pipelines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (largest asymmetry {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("density operator must have unit trace (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("state vector must be normalized (got norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("scalar function is undefined at eigenvalue {eigenvalue}")]
    Domain { eigenvalue: f64 },

    #[error("rank must lie in 1..={dim} (got {rank})")]
    BadRank { rank: usize, dim: usize },

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("monitoring strength must lie in [0, 1] (got {0})")]
    EpsilonOutOfRange(f64),

    #[error("support of the first argument leaks outside the support of the second (weight {weight:.3e}); the divergence is +inf")]
    KernelViolation { weight: f64 },

    #[error("alpha = {alpha} is outside the valid range {range} for {what}")]
    AlphaOutOfRange {
        alpha: f64,
        range: &'static str,
        what: &'static str,
    },

    #[error("q = {q} is outside the valid range {range} for {what}")]
    QOutOfRange {
        q: f64,
        range: &'static str,
        what: &'static str,
    },

    #[error("cannot discard the subsystem carrying the observable")]
    CannotDiscardObservableSubsystem,

    #[error("dilation unitary failed its unitarity check (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("optimizer did not converge (best value found: {best})")]
    OptimizerNonConvergence { best: f64 },

    #[error("{kind} satisfies no monotone parameter range; request it in exploratory mode")]
    NoMonotoneRange { kind: &'static str },

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
