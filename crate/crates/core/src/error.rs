use thiserror::Error;

/// Errors raised by the prior construction and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("infeasible Beta target: cv {cv} exceeds the maximum feasible cv {max_cv:.6} for mean {mean}")]
    InfeasibleVariance { mean: f64, cv: f64, max_cv: f64 },

    #[error("invalid characteristic function: cf(0) = {0}, expected 1")]
    InvalidCf(f64),

    #[error("inversion failure: pdf = {value:e} at x = {x} (worst offender)")]
    InversionFailure { x: f64, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("covariate column {0} is constant")]
    ConstantColumn(usize),

    #[error("transform produced non-finite values for {count} of {total} draws; first offending draw: {draw}")]
    NonFiniteTransform { count: usize, total: usize, draw: String },

    #[error("too few draws: need at least {needed} post-burn-in draws per chain, got {got}")]
    TooFewDraws { needed: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature did not converge: estimate {value}, error {error:e}")]
    Quadrature { value: f64, error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {x}")))
    }
}
