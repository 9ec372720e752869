//! The half-period `Theta` in the energy chart `(gamma, E)`, the shape chart
//! `(alpha, r)` and on the `alpha = 0` boundary.
//!
//! In the shape chart `Theta = int_1^r ds / sqrt(F)`, with `F` vanishing
//! linearly at both ends. Substituting `s^beta = x`, `x` affine in
//! `z in [-1, 1]`, gives `Theta = int dz / sqrt(J(z))` where `J` also vanishes
//! linearly at `z = +-1`. Writing `J = (1 - z^2) W` leaves a smooth `W` against
//! the Chebyshev weight, so Gauss-Chebyshev with doubling node counts
//! converges fast and never evaluates the endpoints.

mod integrand;
pub mod limits;

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub use integrand::{integrand_f, integrand_g};
use integrand::Integrand;

use crate::error::{Error, Result};
use crate::scalar::{
    critical_point, require_period_region, shape_from_turning, turning_points_with, ProblemParams, ShapeCoords,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub target_tol: f64,
    pub initial_nodes: usize,
    pub max_nodes: usize,
    /// Substitution exponent; `None` picks the chart default.
    pub beta: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            target_tol: 1e-10,
            initial_nodes: 16,
            max_nodes: 1 << 20,
            beta: None,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_tol > 0.0) {
            return Err(Error::InvalidParams(format!("target_tol must be positive, got {}", self.target_tol)));
        }
        if self.initial_nodes < 8 || self.max_nodes < self.initial_nodes {
            return Err(Error::InvalidParams(format!(
                "need 8 <= initial_nodes <= max_nodes, got {} and {}",
                self.initial_nodes, self.max_nodes
            )));
        }
        if let Some(b) = self.beta {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::InvalidParams(format!("beta must be positive, got {b}")));
            }
        }
        Ok(())
    }
}

/// A computed half-period with its a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodValue {
    pub value: f64,
    /// Difference between the last two refinements.
    pub error_estimate: f64,
    pub nodes_used: usize,
}

/// Below this `r - 1` the small-oscillation closed form is returned.
const NEAR_CIRCLE: f64 = 1e-8;

/// Gauss-Chebyshev sum with `n` nodes, taken in the angle `theta` of
/// `z = cos(theta)` after the warp `theta = t - sin(2t)/2`.
///
/// The warp keeps the rule spectrally accurate for smooth `W` and tames the
/// near-singular `lam^(1/q)` layer at `s = 1` that appears when
/// `(B/A)^q` is tiny (large `q` or large `r`).
fn chebyshev_sum(f: &Integrand, beta: f64, n: usize) -> Result<f64> {
    let big_l = beta * f.ln_r();
    // ln(r^beta - 1)
    let ln_span = if big_l > 1.0 {
        big_l + (-(-big_l).exp_m1()).ln()
    } else {
        big_l.exp_m1().ln()
    };
    let em1_l = big_l.exp_m1();
    let em1_neg_l = (-big_l).exp_m1();
    let exp_neg_l = (-big_l).exp();
    let ln_const = 2.0 * (2.0 * beta).ln() - 2.0 * ln_span;
    let h = PI / (2 * n) as f64;
    let mut sum = 0.0;
    for k in 0..n {
        let t = (2 * k + 1) as f64 * h;
        let st = t.sin();
        let theta = t - 0.5 * (2.0 * t).sin();
        let jac = 2.0 * st * st;
        let (sh, ch) = (0.5 * theta).sin_cos();
        // 1 - z and 1 + z, z = cos(theta), without cancellation
        let omz = 2.0 * sh * sh;
        let opz = 2.0 * ch * ch;
        let ln_x = if big_l < 30.0 {
            (em1_l * 0.5 * opz).ln_1p()
        } else {
            big_l + (0.5 * opz + 0.5 * omz * exp_neg_l).ln()
        };
        let ln_rx = -(em1_neg_l * 0.5 * omz).ln_1p();
        let ls = ln_x / beta;
        let lrs = ln_rx / beta;
        let fv = f.eval_logs(ls, lrs);
        if !(fv > 0.0) || !fv.is_finite() {
            return Err(Error::DomainError(format!(
                "integrand is {fv} at s = exp({ls}); parameters out of numerical range"
            )));
        }
        let ln_w = ln_const + 2.0 * (beta - 1.0) * ls + fv.ln() - omz.ln() - opz.ln();
        sum += jac * (-0.5 * ln_w).exp();
    }
    Ok(sum * PI / n as f64)
}

fn integrate(f: &Integrand, beta: f64, cfg: &QuadratureConfig) -> Result<PeriodValue> {
    let mut n = cfg.initial_nodes;
    let mut prev = chebyshev_sum(f, beta, n)?;
    let mut diff = f64::INFINITY;
    while 2 * n <= cfg.max_nodes {
        n *= 2;
        let cur = chebyshev_sum(f, beta, n)?;
        diff = (cur - prev).abs();
        if diff < cfg.target_tol {
            return Ok(PeriodValue {
                value: cur,
                error_estimate: diff,
                nodes_used: n,
            });
        }
        prev = cur;
    }
    Err(Error::ConvergenceFailure {
        what: "period quadrature",
        best: prev,
        error_estimate: diff,
    })
}

/// Default substitution exponent: `1`, shrunk like `1/ln r` once `r` is large
/// so the boundary layer near `s = 1` stays resolved.
fn default_beta(r: f64) -> f64 {
    let lr = r.ln();
    if lr > 2.0 {
        2.0 / lr
    } else {
        1.0
    }
}

/// `(4q - 2p)/3`, the substitution exponent under which the boundary integrand
/// is monotone in `r`.
pub fn boundary_beta(p: f64, q: f64) -> f64 {
    (4.0 * q - 2.0 * p) / 3.0
}

/// `Theta_{p,q}{alpha, r}`: the half-period in shape coordinates.
pub fn period_shape(p: f64, q: f64, shape: &ShapeCoords, cfg: &QuadratureConfig) -> Result<PeriodValue> {
    require_period_region(p, q)?;
    cfg.validate()?;
    let ShapeCoords { alpha, r } = *shape;
    if !(alpha > 0.0 && alpha < 1.0 && r > 1.0 && r.is_finite()) {
        return Err(Error::InvalidShape { alpha, r });
    }
    if r - 1.0 < NEAR_CIRCLE {
        return Ok(PeriodValue {
            value: limits::limit_small_oscillation(p, q, alpha)?,
            error_estimate: r - 1.0,
            nodes_used: 0,
        });
    }
    let beta = cfg.beta.unwrap_or_else(|| default_beta(r));
    integrate(&Integrand::new(p, q, alpha, r), beta, cfg)
}

/// `Theta_{p,q}(gamma, E)`: turning points, then the shape chart.
pub fn period_energy(params: &ProblemParams, energy: f64, cfg: &QuadratureConfig) -> Result<PeriodValue> {
    let crit = critical_point(params)?;
    let tp = turning_points_with(params, &crit, energy)?;
    period_shape(params.p, params.q, &shape_from_turning(&tp), cfg)
}

/// The `alpha = 0` boundary period `Theta_{p,q}{0, r}`.
///
/// The value does not depend on `beta`; [`boundary_beta`] is the exponent that
/// flattens this integrand analytically, but it concentrates the quadrature
/// nodes badly once `beta ln r` is large, so the interior default is used
/// unless `cfg.beta` says otherwise.
pub fn boundary_period(p: f64, q: f64, r: f64, cfg: &QuadratureConfig) -> Result<PeriodValue> {
    require_period_region(p, q)?;
    cfg.validate()?;
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::DomainError(format!("need finite r > 1, got {r}")));
    }
    if r - 1.0 < NEAR_CIRCLE {
        return Ok(PeriodValue {
            value: limits::limit_boundary(p, q)?,
            error_estimate: r - 1.0,
            nodes_used: 0,
        });
    }
    let beta = cfg.beta.unwrap_or_else(|| default_beta(r));
    integrate(&Integrand::new(p, q, 0.0, r), beta, cfg)
}
