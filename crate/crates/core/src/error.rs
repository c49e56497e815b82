use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A field is empty, has mismatched length, or carries NaN/Inf samples.
    #[error("invalid field: {0}")]
    InvalidField(String),

    /// An L^p exponent below 1, or a power-law exponent outside its range.
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    /// Sample counts disagree (file input, basis order, trajectory pairing).
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// Evaluation time must be strictly positive.
    #[error("non-positive time t = {0}")]
    NonPositiveTime(f64),

    /// The truncated domain cannot represent the requested solution.
    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    /// A CFL guard failed; retry with the suggested step.
    #[error("step rejected by CFL guard, suggested dt = {suggested_dt:e}")]
    StepRejected { suggested_dt: f64 },

    /// Regression input is unusable (nonpositive values, too few points).
    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    /// A diagnostic was asked to compare a trajectory against the wrong regime.
    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    /// A run configuration violates its invariants.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A condition that should be impossible by construction; a bug trap.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
