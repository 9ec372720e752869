//! Energies, critical points, turning points, chart conversions and constant
//! solutions.
//!
//! Everything here is a closed form or a one-dimensional bracketed root
//! search. The unweighted problem is the `q = 1` case of the weighted one:
//! the weighted first integral
//!
//! ```text
//! E(u) = (1/q) (u^2 + u^-2)^q - (2^q gamma / p) u^(2p)
//! ```
//!
//! reduces to `u^2 + u^-2 - (2 gamma / p) u^(2p)` at `q = 1`, so a single
//! code path serves both.

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::roots::{brent, brent_with_values, RootOptions};

/// One problem instance: exponent `p`, weight exponent `q` and the constant
/// right-hand side `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub p: f64,
    pub q: f64,
    pub gamma: f64,
}

impl ProblemParams {
    pub fn new(p: f64, q: f64, gamma: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidParams(format!(
                "non-finite parameters p={p}, q={q}, gamma={gamma}"
            )));
        }
        if gamma <= 0.0 {
            return Err(Error::NonpositiveArgument {
                name: "gamma",
                value: gamma,
            });
        }
        Ok(Self { p, q, gamma })
    }

    /// The unweighted equation (`q = 1`).
    pub fn unweighted(p: f64, gamma: f64) -> Result<Self> {
        Self::new(p, 1.0, gamma)
    }

    /// `p <= -1` and `q >= 1`: the region in which the period function exists.
    pub fn in_period_region(&self) -> bool {
        self.p <= -1.0 && self.q >= 1.0
    }

    pub(crate) fn require_period_region(&self) -> Result<()> {
        require_period_region(self.p, self.q)
    }
}

pub(crate) fn require_period_region(p: f64, q: f64) -> Result<()> {
    if p <= -1.0 && q >= 1.0 && p.is_finite() && q.is_finite() {
        Ok(())
    } else {
        Err(Error::UnsupportedRegion(format!(
            "need p <= -1 and q >= 1, got p={p}, q={q}"
        )))
    }
}

/// Location and value of the energy minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub u_gamma: f64,
    pub e_star: f64,
}

/// The two roots `u_minus < u_plus` of `E(u) = E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPoints {
    pub u_minus: f64,
    pub u_plus: f64,
}

impl TurningPoints {
    pub fn new(u_minus: f64, u_plus: f64) -> Result<Self> {
        if !(u_minus > 0.0 && u_plus > u_minus && u_plus.is_finite()) {
            return Err(Error::DomainError(format!(
                "turning points need 0 < u_minus < u_plus, got ({u_minus}, {u_plus})"
            )));
        }
        Ok(Self { u_minus, u_plus })
    }
}

/// Normalized coordinates `alpha = 1/(u_plus u_minus)` and `r = u_plus/u_minus`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeCoords {
    pub alpha: f64,
    pub r: f64,
}

impl ShapeCoords {
    pub fn new(alpha: f64, r: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0 && r > 1.0 && r.is_finite()) {
            return Err(Error::InvalidShape { alpha, r });
        }
        Ok(Self { alpha, r })
    }
}

/// `ln(u^2 + u^-2)` evaluated as `ln(2 cosh 2t)` with `t = ln u`.
#[inline]
pub(crate) fn ln_u2_plus_inv(t: f64) -> f64 {
    let a = 2.0 * t.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// Energy at `u = e^t`, without argument checks. May return `+inf`.
#[inline]
pub(crate) fn energy_at_log(p: f64, q: f64, gamma: f64, t: f64) -> f64 {
    let kinetic = (q * ln_u2_plus_inv(t)).exp() / q;
    let potential = (q * LN_2 + gamma.ln() - (-p).ln() + 2.0 * p * t).exp();
    kinetic + potential
}

/// The first-integral potential `E(u)` (weighted form; `q = 1` gives the
/// unweighted energy).
pub fn potential_energy(params: &ProblemParams, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::NonpositiveArgument { name: "u", value: u });
    }
    if params.p >= 0.0 {
        return Err(Error::UnsupportedRegion(format!(
            "the first integral needs p < 0, got p={}",
            params.p
        )));
    }
    if params.q < 1.0 {
        return Err(Error::UnsupportedRegion(format!(
            "the first integral needs q >= 1, got q={}",
            params.q
        )));
    }
    let e = energy_at_log(params.p, params.q, params.gamma, u.ln());
    if !e.is_finite() {
        return Err(Error::DomainError(format!("energy overflows at u={u}")));
    }
    Ok(e)
}

/// Left side minus right side of the critical-point equation, in log form:
/// `ln[(u^2+u^-2)^(q-1) (u^(2-2p) - u^(-2-2p))] - ln(2^q gamma)` with `t = ln u`.
/// Strictly increasing on `t > 0` for `p <= -1`, `q >= 1`.
fn critical_equation(p: f64, q: f64, gamma: f64, t: f64) -> f64 {
    (q - 1.0) * ln_u2_plus_inv(t) + (-2.0 - 2.0 * p) * t + (4.0 * t).exp_m1().ln() - q * LN_2 - gamma.ln()
}

/// The minimum of the energy: `u_gamma > 1` and `e_star = E(u_gamma)`.
pub fn critical_point(params: &ProblemParams) -> Result<CriticalData> {
    params.require_period_region()?;
    let (p, q, gamma) = (params.p, params.q, params.gamma);
    let f = |t: f64| critical_equation(p, q, gamma, t);
    let mut hi = 1.0;
    let mut f_hi = f(hi);
    let mut tries = 0;
    while f_hi <= 0.0 {
        hi *= 2.0;
        f_hi = f(hi);
        tries += 1;
        if tries > 60 || !f_hi.is_finite() && f_hi < 0.0 {
            return Err(Error::ConvergenceFailure {
                what: "critical point bracket",
                best: hi,
                error_estimate: f64::INFINITY,
            });
        }
    }
    let opts = RootOptions {
        rel_tol: 1e-15,
        abs_tol: 1e-300,
        max_iter: 400,
    };
    let t = brent_with_values(f, 0.0, hi, f64::NEG_INFINITY, f_hi, &opts)?;
    let u_gamma = t.exp();
    let e_star = energy_at_log(p, q, gamma, t);
    if !e_star.is_finite() {
        return Err(Error::DomainError("minimum energy overflows".into()));
    }
    Ok(CriticalData { u_gamma, e_star })
}

/// Cutoff below which `E - e_star` is treated as the degenerate level.
pub fn degenerate_cutoff(e_star: f64) -> f64 {
    1e-12 * e_star.abs().max(1.0)
}

/// Classifies `energy` against the minimum: `Ok(())` when strictly above it.
pub(crate) fn check_level(energy: f64, crit: &CriticalData) -> Result<()> {
    if !energy.is_finite() {
        return Err(Error::DomainError(format!("energy {energy} is not finite")));
    }
    let cutoff = degenerate_cutoff(crit.e_star);
    if energy < crit.e_star - cutoff {
        return Err(Error::BelowMinimum {
            energy,
            minimum: crit.e_star,
        });
    }
    if (energy - crit.e_star).abs() < cutoff {
        return Err(Error::DegenerateLevel {
            energy,
            minimum: crit.e_star,
        });
    }
    Ok(())
}

/// Turning points at level `energy`, given the precomputed minimum.
pub fn turning_points_with(params: &ProblemParams, crit: &CriticalData, energy: f64) -> Result<TurningPoints> {
    params.require_period_region()?;
    check_level(energy, crit)?;
    let (p, q, gamma) = (params.p, params.q, params.gamma);
    let t_gamma = crit.u_gamma.ln();
    let g = |t: f64| energy_at_log(p, q, gamma, t) - energy;
    let g_mid = crit.e_star - energy;
    let opts = RootOptions {
        rel_tol: 0.0,
        abs_tol: 1e-15,
        max_iter: 400,
    };

    // Outward bracket expansion: one doubling (or halving) of u per step.
    let mut lo = t_gamma - LN_2;
    let mut g_lo = g(lo);
    let mut k = 0;
    while g_lo <= 0.0 {
        lo -= LN_2 * (1 << k.min(10)) as f64;
        g_lo = g(lo);
        k += 1;
        if k > 200 {
            return Err(Error::ConvergenceFailure {
                what: "lower turning point bracket",
                best: lo.exp(),
                error_estimate: f64::INFINITY,
            });
        }
    }
    let mut hi = t_gamma + LN_2;
    let mut g_hi = g(hi);
    k = 0;
    while g_hi <= 0.0 {
        hi += LN_2 * (1 << k.min(10)) as f64;
        g_hi = g(hi);
        k += 1;
        if k > 200 {
            return Err(Error::ConvergenceFailure {
                what: "upper turning point bracket",
                best: hi.exp(),
                error_estimate: f64::INFINITY,
            });
        }
    }
    let t_minus = brent_with_values(g, lo, t_gamma, g_lo, g_mid, &opts)?;
    let t_plus = brent_with_values(g, t_gamma, hi, g_mid, g_hi, &opts)?;
    TurningPoints::new(t_minus.exp(), t_plus.exp())
}

/// The two roots of `E(u) = energy` on either side of `u_gamma`.
pub fn turning_points(params: &ProblemParams, energy: f64) -> Result<TurningPoints> {
    let crit = critical_point(params)?;
    turning_points_with(params, &crit, energy)
}

pub fn shape_from_turning(tp: &TurningPoints) -> ShapeCoords {
    ShapeCoords {
        alpha: 1.0 / (tp.u_plus * tp.u_minus),
        r: tp.u_plus / tp.u_minus,
    }
}

/// Inverse of [`shape_from_turning`]: `u_minus = (alpha r)^(-1/2)`, `u_plus = (r/alpha)^(1/2)`.
pub fn turning_from_shape(shape: &ShapeCoords) -> TurningPoints {
    TurningPoints {
        u_minus: (shape.alpha * shape.r).sqrt().recip(),
        u_plus: (shape.r / shape.alpha).sqrt(),
    }
}

/// Recovers `(gamma, E)` from shape coordinates.
///
/// ```text
/// -2^q q gamma / p = [(r^2+a^2)^q - (1+a^2 r^2)^q] / [(a r)^(q-p) (1 - r^(2p))]
/// q E              = [(r^2+a^2)^q - r^(2p) (1+a^2 r^2)^q] / [(a r)^q (1 - r^(2p))]
/// ```
pub fn gamma_energy_from_shape(p: f64, q: f64, shape: &ShapeCoords) -> Result<(f64, f64)> {
    require_period_region(p, q)?;
    let ShapeCoords { alpha, r } = ShapeCoords::new(shape.alpha, shape.r)?;
    let ln_a = (r * r + alpha * alpha).ln();
    let ln_b = (alpha * alpha * r * r).ln_1p();
    let ln_ar = alpha.ln() + r.ln();
    let one_minus_r2p = -(2.0 * p * r.ln()).exp_m1();
    let ln_gamma = (-p).ln() - q * LN_2 - q.ln() + q * ln_a + (-(q * (ln_b - ln_a)).exp_m1()).ln()
        - (q - p) * ln_ar
        - one_minus_r2p.ln();
    let gamma = ln_gamma.exp();
    let energy = (q * (ln_a - ln_ar)).exp() * (1.0 - (2.0 * p * r.ln() + q * (ln_b - ln_a)).exp()) / (q * one_minus_r2p);
    if !(gamma.is_finite() && energy.is_finite()) {
        return Err(Error::DomainError(format!(
            "gamma/energy overflow at alpha={alpha}, r={r}"
        )));
    }
    Ok((gamma, energy))
}

/// Roots of the constant-solution equation
/// `c^(-p) ((c + 1/c)/2)^(q-1) ((c - 1/c)/2) = gamma` on `c > 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantSolutions {
    pub roots: Vec<f64>,
    /// For `q = 1`, `p > 1`: the value of gamma at which the two roots merge.
    pub threshold: Option<f64>,
}

/// `ln` of the constant-equation left side at `c = e^t`, `t > 0`.
fn ln_constant_lhs(p: f64, q: f64, t: f64) -> f64 {
    let ln_cosh = t + (-2.0 * t).exp().ln_1p() - LN_2;
    let ln_sinh = t + (-(-2.0 * t).exp_m1()).ln() - LN_2;
    -p * t + (q - 1.0) * ln_cosh + ln_sinh
}

/// Derivative of [`ln_constant_lhs`] in `t`.
fn ln_constant_slope(p: f64, q: f64, t: f64) -> f64 {
    -p + (q - 1.0) * t.tanh() + 1.0 / t.tanh()
}

/// `gamma_0 = (p-1)^((p-1)/2) / (p+1)^((p+1)/2)` for `p > 1`.
pub fn constant_threshold(p: f64) -> Option<f64> {
    (p > 1.0).then(|| (0.5 * (p - 1.0) * (p - 1.0).ln() - 0.5 * (p + 1.0) * (p + 1.0).ln()).exp())
}

/// Finds every positive constant solution by splitting `c > 1` into pieces on
/// which the left side is monotone.
pub fn constant_solutions(params: &ProblemParams) -> Result<ConstantSolutions> {
    let (p, q, gamma) = (params.p, params.q, params.gamma);
    if q <= 0.0 {
        return Err(Error::UnsupportedRegion(format!("need q > 0, got q={q}")));
    }
    let target = gamma.ln();
    let opts = RootOptions {
        rel_tol: 1e-15,
        abs_tol: 1e-300,
        max_iter: 400,
    };
    let slope = |t: f64| ln_constant_slope(p, q, t);
    let value = |t: f64| ln_constant_lhs(p, q, t) - target;
    let end_slope = q - p;

    // Critical points of the left side (zeros of the slope).
    let mut crit: Vec<f64> = Vec::new();
    let find_decreasing_zero = |lo: f64| -> Result<Option<f64>> {
        // slope decreasing on [lo, inf) towards end_slope < 0
        let mut hi = lo.max(1e-3) * 2.0;
        let mut s_hi = slope(hi);
        let mut n = 0;
        while s_hi > 0.0 {
            hi *= 2.0;
            s_hi = slope(hi);
            n += 1;
            if n > 80 {
                return Ok(None);
            }
        }
        Ok(Some(brent(slope, lo, hi, &opts)?))
    };
    if q <= 2.0 {
        if end_slope < 0.0 {
            if let Some(t) = find_decreasing_zero(0.0)? {
                crit.push(t);
            }
        }
    } else {
        let t_star = (1.0 / (q - 2.0).sqrt()).asinh();
        if slope(t_star) < 0.0 {
            crit.push(brent(slope, 0.0, t_star, &opts)?);
            if end_slope > 0.0 {
                let mut hi = 2.0 * t_star;
                while slope(hi) < 0.0 {
                    hi *= 2.0;
                }
                crit.push(brent(slope, t_star, hi, &opts)?);
            }
        }
    }

    // Value of ln(lhs) - ln(gamma) as t -> inf; for p = q the left side tends to 2^-q.
    let end_limit = if end_slope > 0.0 {
        f64::INFINITY
    } else if end_slope < 0.0 {
        f64::NEG_INFINITY
    } else {
        -q * LN_2 - target
    };

    let threshold = if q == 1.0 { constant_threshold(p) } else { None };

    // Tangency at a critical point counts as a single (double) root.
    for &tc in &crit {
        let tangent = match threshold {
            Some(g0) => (gamma - g0).abs() <= 1e-12 * g0,
            None => value(tc).abs() <= 1e-12,
        };
        if tangent {
            let tc = if threshold.is_some() {
                // t = arccoth(p)
                0.5 * ((p + 1.0) / (p - 1.0)).ln()
            } else {
                tc
            };
            let others: Vec<f64> = collect_piece_roots(&crit, end_limit, &value, &opts)?
                .into_iter()
                .filter(|t| (t - tc).abs() > 1e-6 * tc.max(1e-6))
                .collect();
            let mut roots: Vec<f64> = others.into_iter().chain(std::iter::once(tc)).map(f64::exp).collect();
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            return Ok(ConstantSolutions { roots, threshold });
        }
    }

    let mut roots: Vec<f64> = collect_piece_roots(&crit, end_limit, &value, &opts)?
        .into_iter()
        .map(f64::exp)
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ConstantSolutions { roots, threshold })
}

fn collect_piece_roots<F>(crit: &[f64], limit: f64, value: &F, opts: &RootOptions) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let mut roots = Vec::new();
    let mut breaks = vec![0.0];
    breaks.extend_from_slice(crit);
    let mut prev_t = 0.0;
    let mut prev_v = f64::NEG_INFINITY;
    for &t in &breaks[1..] {
        let v = value(t);
        if prev_v.signum() != v.signum() && v != 0.0 {
            roots.push(brent_with_values(value, prev_t, t, prev_v, v, opts)?);
        }
        prev_t = t;
        prev_v = v;
    }
    // Last, unbounded piece.
    if prev_v.signum() != limit.signum() && limit != 0.0 {
        let mut hi = (prev_t * 2.0).max(1.0);
        let mut v_hi = value(hi);
        let mut n = 0;
        while v_hi.signum() == prev_v.signum() {
            hi *= 2.0;
            v_hi = value(hi);
            n += 1;
            if n > 60 || !v_hi.is_finite() && v_hi.signum() == prev_v.signum() {
                break;
            }
        }
        if v_hi.signum() != prev_v.signum() {
            roots.push(brent_with_values(value, prev_t, hi, prev_v, v_hi, opts)?);
        }
    }
    Ok(roots)
}
