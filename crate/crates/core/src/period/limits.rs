//! Closed-form limiting values of the half-period.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::scalar::{critical_point, require_period_region, ProblemParams};

fn check_shape(alpha: f64, r: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha < 1.0 && r > 1.0) {
        return Err(Error::DomainError(format!("need 0 <= alpha < 1 < r, got alpha={alpha}, r={r}")));
    }
    Ok(())
}

/// Limit as `p -> -inf` or `q -> +inf`: `arccos sqrt((1 - a^2)/(r^2 - a^2))`.
pub fn limit_extreme_exponent(alpha: f64, r: f64) -> Result<f64> {
    check_shape(alpha, r)?;
    let a2 = alpha * alpha;
    if r.is_infinite() {
        return Ok(FRAC_PI_2);
    }
    Ok(((1.0 - a2) / (r * r - a2)).sqrt().acos())
}

/// Limit as `r -> 1`:
/// `pi / sqrt((2 - 2p) + (2 + 2p) a^2 + (2q - 2)(1 - a^2)^2 / (1 + a^2))`.
pub fn limit_small_oscillation(p: f64, q: f64, alpha: f64) -> Result<f64> {
    require_period_region(p, q)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::DomainError(format!("need 0 <= alpha <= 1, got {alpha}")));
    }
    let a2 = alpha * alpha;
    let k = (2.0 - 2.0 * p) + (2.0 + 2.0 * p) * a2 + (2.0 * q - 2.0) * (1.0 - a2) * (1.0 - a2) / (1.0 + a2);
    Ok(PI / k.sqrt())
}

/// Limit as `E` decreases to the minimum energy: the small-oscillation limit
/// with `alpha = u_gamma^-2`.
pub fn limit_near_minimum(params: &ProblemParams) -> Result<f64> {
    let crit = critical_point(params)?;
    limit_small_oscillation(params.p, params.q, crit.u_gamma.powi(-2))
}

/// Limit of the boundary (`alpha = 0`) period as `r -> 1`: `pi / sqrt(2q - 2p)`.
pub fn limit_boundary(p: f64, q: f64) -> Result<f64> {
    limit_small_oscillation(p, q, 0.0)
}

/// The `r -> inf`, `E -> inf`, `gamma -> 0` limits, and the exact value at `p = -1, q = 1`.
pub const HALF_PI: f64 = FRAC_PI_2;
