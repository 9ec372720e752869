use thiserror::Error;

use crate::orbit::OrbitProfile;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every layer of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} must be positive, got {value}")]
    NonpositiveArgument { name: &'static str, value: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported parameter region: {0}")]
    UnsupportedRegion(String),

    #[error("energy {energy} is below the minimum level {minimum}")]
    BelowMinimum { energy: f64, minimum: f64 },

    #[error("energy {energy} coincides with the minimum level {minimum}; use the limit formula")]
    DegenerateLevel { energy: f64, minimum: f64 },

    #[error("invalid shape coordinates alpha={alpha}, r={r} (need 0 < alpha < 1 < r)")]
    InvalidShape { alpha: f64, r: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("{what} did not converge (best value {best}, error estimate {error_estimate})")]
    ConvergenceFailure {
        what: &'static str,
        best: f64,
        error_estimate: f64,
    },

    #[error("first-integral drift {max_drift:e} exceeded tolerance {tol:e}")]
    DriftExceeded {
        max_drift: f64,
        tol: f64,
        orbit: Box<OrbitProfile>,
    },

    #[error("integrator step failure at tau={tau} (step {step:e})")]
    StepFailure { tau: f64, step: f64 },

    #[error("no turning-point event found on the integrated orbit")]
    NoEventFound,

    #[error("measured half-period {measured} differs from target {target} by more than {tol:e}")]
    PeriodMismatch { measured: f64, target: f64, tol: f64 },

    #[error("grid of {n} samples is too coarse (need at least {min})")]
    GridTooCoarse { n: usize, min: usize },

    #[error("threshold diverges at p={p}, l={l} (need p < 1 - 2(l+1)^2)")]
    BoundaryDivergence { p: f64, l: u32 },
}

impl Error {
    /// True for errors caused by inputs outside an operation's admissible region.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NonpositiveArgument { .. }
                | Error::InvalidParams(_)
                | Error::UnsupportedRegion(_)
                | Error::BelowMinimum { .. }
                | Error::DegenerateLevel { .. }
                | Error::InvalidShape { .. }
                | Error::DomainError(_)
                | Error::GridTooCoarse { .. }
                | Error::BoundaryDivergence { .. }
        )
    }
}
