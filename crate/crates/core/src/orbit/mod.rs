//! Orbits of the reduced equation
//!
//! ```text
//! u'' = u^-3 - u + 2^q gamma u^(2p-1) (u'^2 + u^2 + u^-2)^(1-q)
//! ```
//!
//! with first integral `(1/q)(u'^2 + u^2 + u^-2)^q - (2^q gamma / p) u^(2p) = E`.
//! Orbits start at the lower turning point with zero velocity, so `tau = 0`
//! is itself a turning time.

mod dopri;
mod gbs;
mod profile;

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

pub use profile::{
    build_solution, constant_profile, family_profile, hk_integral, pde_residual, profile_from_samples,
    SolutionProfile, CERTIFY_HK_FLOOR, CERTIFY_RESIDUAL,
};

use crate::error::{Error, Result};
use crate::roots::{brent_with_values, RootOptions};
use crate::scalar::{check_level, critical_point, degenerate_cutoff, turning_points_with, ProblemParams};
use dopri::{Dopri5, Segment, State};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitConfig {
    pub rtol: f64,
    pub atol: f64,
    /// Allowed first-integral drift, relative to `max(1, |E|)`.
    pub drift_tol: f64,
    /// Tolerances used when sampling a solution profile.
    pub profile_rtol: f64,
    pub profile_atol: f64,
    /// Number of theta samples in a solution profile.
    pub grid: usize,
    /// Allowed `|measured - pi/(2m)|` in `build_solution`.
    pub period_tol: f64,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-12,
            drift_tol: 1e-8,
            profile_rtol: 1e-13,
            profile_atol: 1e-13,
            grid: 1024,
            period_tol: 1e-7,
        }
    }
}

impl OrbitConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [self.rtol, self.atol, self.drift_tol, self.profile_rtol, self.profile_atol, self.period_tol];
        if tols.iter().any(|t| !(*t > 0.0)) {
            return Err(Error::InvalidParams("orbit tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// A sampled trajectory. Samples sit at the accepted integrator steps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitProfile {
    pub tau: Vec<f64>,
    pub u: Vec<f64>,
    pub u_tau: Vec<f64>,
    pub params: ProblemParams,
    pub energy: f64,
    /// Largest `|E(u, u_tau) - E|` over the samples.
    pub max_drift: f64,
    #[serde(skip)]
    segments: Vec<Segment>,
    #[serde(skip)]
    rtol: f64,
    #[serde(skip)]
    atol: f64,
}

#[inline]
fn rhs_unchecked(p: f64, q: f64, ln_coef: f64, u: f64, v: f64) -> f64 {
    let lu = u.ln();
    let w = v * v + u * u + 1.0 / (u * u);
    (-3.0 * lu).exp() - u + (ln_coef + (2.0 * p - 1.0) * lu + (1.0 - q) * w.ln()).exp()
}

/// `u_tau tau` at `(u, u_tau)`.
pub fn orbit_rhs(params: &ProblemParams, u: f64, u_tau: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::NonpositiveArgument { name: "u", value: u });
    }
    let ln_coef = params.q * LN_2 + params.gamma.ln();
    Ok(rhs_unchecked(params.p, params.q, ln_coef, u, u_tau))
}

/// First integral at `(u, u_tau)`.
pub fn first_integral(params: &ProblemParams, u: f64, u_tau: f64) -> f64 {
    let (p, q, gamma) = (params.p, params.q, params.gamma);
    let w = u_tau * u_tau + u * u + 1.0 / (u * u);
    (q * w.ln()).exp() / q + (q * LN_2 + gamma.ln() - (-p).ln() + 2.0 * p * u.ln()).exp()
}

pub(crate) fn system(params: &ProblemParams) -> impl Fn(&State) -> Option<State> + Copy {
    let (p, q) = (params.p, params.q);
    let ln_coef = q * LN_2 + params.gamma.ln();
    move |y: &State| {
        if !(y[0] > 0.0) {
            return None;
        }
        let a = rhs_unchecked(p, q, ln_coef, y[0], y[1]);
        a.is_finite().then_some([y[1], a])
    }
}

/// Integrates from `(u_minus, 0)` over `[0, duration]`.
///
/// At the degenerate level the constant orbit `u = u_gamma` is returned.
pub fn integrate_orbit(params: &ProblemParams, energy: f64, duration: f64, cfg: &OrbitConfig) -> Result<OrbitProfile> {
    cfg.validate()?;
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::InvalidParams(format!("duration must be positive, got {duration}")));
    }
    let crit = critical_point(params)?;
    let mut orbit = OrbitProfile {
        tau: Vec::new(),
        u: Vec::new(),
        u_tau: Vec::new(),
        params: *params,
        energy,
        max_drift: 0.0,
        segments: Vec::new(),
        rtol: cfg.rtol,
        atol: cfg.atol,
    };
    if (energy - crit.e_star).abs() < degenerate_cutoff(crit.e_star) {
        orbit.tau = vec![0.0, duration];
        orbit.u = vec![crit.u_gamma; 2];
        orbit.u_tau = vec![0.0; 2];
        return Ok(orbit);
    }
    check_level(energy, &crit)?;
    let tp = turning_points_with(params, &crit, energy)?;
    let scale = energy.abs().max(1.0);
    let mut ode = Dopri5::new(system(params), 0.0, [tp.u_minus, 0.0], cfg.rtol, cfg.atol, 1e-3)?;
    orbit.tau.push(0.0);
    orbit.u.push(tp.u_minus);
    orbit.u_tau.push(0.0);
    while ode.t < duration {
        let seg = ode.step(duration)?;
        let drift = (first_integral(params, seg.y1[0], seg.y1[1]) - energy).abs();
        orbit.max_drift = orbit.max_drift.max(drift);
        orbit.tau.push(ode.t);
        orbit.u.push(seg.y1[0]);
        orbit.u_tau.push(seg.y1[1]);
        orbit.segments.push(seg);
        if drift > cfg.drift_tol * scale {
            return Err(Error::DriftExceeded {
                max_drift: orbit.max_drift,
                tol: cfg.drift_tol * scale,
                orbit: Box::new(orbit),
            });
        }
    }
    Ok(orbit)
}

impl OrbitProfile {
    /// `(u, u_tau)` at any `tau` inside the integrated range, from the dense output.
    pub fn state_at(&self, tau: f64) -> Option<(f64, f64)> {
        if self.segments.is_empty() {
            let (t0, t1) = (*self.tau.first()?, *self.tau.last()?);
            return (t0..=t1).contains(&tau).then(|| (self.u[0], 0.0));
        }
        let i = self.segments.partition_point(|s| s.t1() < tau);
        let seg = self.segments.get(i)?;
        if tau < seg.t0 {
            return None;
        }
        let y = seg.eval(tau);
        Some((y[0], y[1]))
    }

    /// Every zero of `u_tau` after `tau = 0`, located on the dense output and
    /// then polished with Newton steps driven by fresh integrator steps.
    pub fn turning_times(&self) -> Result<Vec<f64>> {
        let mut events = Vec::new();
        if self.segments.is_empty() {
            return Ok(events);
        }
        let sys = system(&self.params);
        let ode = Dopri5::new(sys, 0.0, self.segments[0].y0, self.rtol, self.atol, 1e-3)?;
        let opts = RootOptions {
            rel_tol: 0.0,
            abs_tol: 1e-15,
            max_iter: 200,
        };
        for seg in &self.segments {
            let v1 = seg.y1[1];
            // The orbit starts at a turning point; look just past it.
            let lo = if seg.t0 == 0.0 { 1e-3 * seg.h } else { seg.t0 };
            let v_lo = if seg.t0 == 0.0 { seg.eval(lo)[1] } else { seg.y0[1] };
            if v_lo == 0.0 || (v_lo.signum() == v1.signum() && v1 != 0.0) {
                continue;
            }
            let t_star = brent_with_values(|t| seg.eval(t)[1], lo, seg.t1(), v_lo, v1, &opts)?;
            // Newton polish from the accepted step start.
            let mut t = t_star;
            for _ in 0..3 {
                let Some(y) = ode.fixed_step(&seg.y0, t - seg.t0) else { break };
                let Some(dy) = ode.rhs(&y) else { break };
                if dy[1] == 0.0 {
                    break;
                }
                let dt = y[1] / dy[1];
                t -= dt;
                if dt.abs() < 1e-16 * t.abs().max(1.0) {
                    break;
                }
            }
            events.push(t);
        }
        Ok(events)
    }
}

/// The half-period `tau_+ - tau_-`, averaged over every turning time found.
pub fn measure_half_period(orbit: &OrbitProfile) -> Result<f64> {
    let events = orbit.turning_times()?;
    match events.last() {
        Some(&t) => Ok(t / events.len() as f64),
        None => Err(Error::NoEventFound),
    }
}
