//! Sampled solutions `phi(theta) = u(theta/2)^2` and their certificates.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::gbs;
use super::{integrate_orbit, measure_half_period, system, OrbitConfig};
use crate::error::{Error, Result};
use crate::scalar::ProblemParams;

/// Largest `|LHS - gamma|` accepted by certification.
pub const CERTIFY_RESIDUAL: f64 = 1e-6;
/// Smallest Heintze-Karcher value accepted by certification.
pub const CERTIFY_HK_FLOOR: f64 = -1e-8;
/// Largest symmetry defect accepted by certification.
pub const CERTIFY_SYMMETRY: f64 = 1e-9;
const MIN_GRID: usize = 256;

/// A `2pi`-periodic profile on a uniform grid with its certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionProfile {
    pub params: ProblemParams,
    /// Energy level of the orbit; absent for closed-form profiles.
    pub energy: Option<f64>,
    /// Fold symmetry; `0` marks a constant profile.
    pub m: u32,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    pub residual_max: f64,
    pub hconvex_min: f64,
    pub hk_value: f64,
    pub symmetry_defect: f64,
    pub certified: bool,
}

/// First and second derivatives on the periodic grid: spectral when the size
/// is a power of two, 8th-order central differences otherwise.
fn derivatives(phi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    if phi.len().is_power_of_two() {
        spectral_derivatives(phi)
    } else {
        fd8_derivatives(phi)
    }
}

fn spectral_derivatives(phi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = phi.len();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mean = phi.iter().sum::<f64>() / n as f64;
    let mut c: Vec<Complex<f64>> = phi.iter().map(|&x| Complex::new(x - mean, 0.0)).collect();
    fwd.process(&mut c);
    // Modes at the round-off floor carry integration noise only; the k^2
    // factor would blow them up.
    let floor = 1e-15 * (mean.abs() * n as f64).max(c.iter().map(|z| z.norm()).fold(0.0, f64::max));
    let mut d1 = vec![Complex::new(0.0, 0.0); n];
    let mut d2 = vec![Complex::new(0.0, 0.0); n];
    for j in 0..n {
        if c[j].norm() < floor {
            continue;
        }
        let k = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        if 2 * j != n {
            d1[j] = c[j] * Complex::new(0.0, k);
        }
        d2[j] = c[j] * (-k * k);
    }
    inv.process(&mut d1);
    inv.process(&mut d2);
    let s = 1.0 / n as f64;
    (d1.iter().map(|z| z.re * s).collect(), d2.iter().map(|z| z.re * s).collect())
}

fn fd8_derivatives(phi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    const D1: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    const D2: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];
    let n = phi.len();
    let h = 2.0 * PI / n as f64;
    let at = |j: usize, off: isize| phi[(j as isize + off).rem_euclid(n as isize) as usize];
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for j in 0..n {
        let mut a = 0.0;
        let mut b = D2[0] * phi[j];
        for o in 1..=4 {
            a += D1[o - 1] * (at(j, o as isize) - at(j, -(o as isize)));
            b += D2[o] * (at(j, o as isize) + at(j, -(o as isize)));
        }
        d1[j] = a / h;
        d2[j] = b / (h * h);
    }
    (d1, d2)
}

fn check_grid(phi: &[f64]) -> Result<()> {
    if phi.len() < MIN_GRID {
        return Err(Error::GridTooCoarse {
            n: phi.len(),
            min: MIN_GRID,
        });
    }
    if let Some(x) = phi.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(Error::DomainError(format!("profile sample {x} is not positive")));
    }
    Ok(())
}

/// `A = phi'' - phi'^2/(2 phi) + (phi - 1/phi)/2` and the weight
/// `W = phi'^2/(2 phi) + (phi + 1/phi)/2`, pointwise.
fn bracket_and_weight(phi: &[f64], d1: &[f64], d2: &[f64]) -> (Vec<f64>, Vec<f64>) {
    phi.iter()
        .zip(d1)
        .zip(d2)
        .map(|((&f, &a), &b)| {
            let g = a * a / (2.0 * f);
            (b - g + 0.5 * (f - 1.0 / f), g + 0.5 * (f + 1.0 / f))
        })
        .unzip()
}

fn residual_from(params: &ProblemParams, phi: &[f64], a: &[f64], w: &[f64]) -> f64 {
    let (p, q, gamma) = (params.p, params.q, params.gamma);
    phi.iter()
        .zip(a)
        .zip(w)
        .map(|((&f, &a), &w)| ((-p * f.ln() + (q - 1.0) * w.ln()).exp() * a - gamma).abs())
        .fold(0.0, f64::max)
}

fn hk_from(phi: &[f64], d1: &[f64], d2: &[f64], a: &[f64]) -> f64 {
    let n = phi.len();
    let s: f64 = (0..n).map(|j| (d2[j] - d1[j] * d1[j] / phi[j]) * a[j]).sum();
    s * 2.0 * PI / n as f64
}

/// `max |phi^-p W^(q-1) A - gamma|` over the grid.
pub fn pde_residual(params: &ProblemParams, profile: &SolutionProfile) -> Result<f64> {
    check_grid(&profile.phi)?;
    let (d1, d2) = derivatives(&profile.phi);
    let (a, w) = bracket_and_weight(&profile.phi, &d1, &d2);
    Ok(residual_from(params, &profile.phi, &a, &w))
}

/// `int (phi'' - phi'^2/phi) A dtheta` by the periodic trapezoidal rule.
pub fn hk_integral(profile: &SolutionProfile) -> Result<f64> {
    check_grid(&profile.phi)?;
    let (d1, d2) = derivatives(&profile.phi);
    let (a, _) = bracket_and_weight(&profile.phi, &d1, &d2);
    Ok(hk_from(&profile.phi, &d1, &d2, &a))
}

/// Largest change of the samples under rotation by `2pi/m`.
fn symmetry_defect(phi: &[f64], m: u32) -> f64 {
    let n = phi.len();
    if m == 0 {
        let (lo, hi) = phi.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        return hi - lo;
    }
    let m = m as usize;
    if n % m == 0 {
        let s = n / m;
        return (0..n).map(|j| (phi[(j + s) % n] - phi[j]).abs()).fold(0.0, f64::max);
    }
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut c: Vec<Complex<f64>> = phi.iter().map(|&x| Complex::new(x, 0.0)).collect();
    fwd.process(&mut c);
    for (j, z) in c.iter_mut().enumerate() {
        let k = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        *z *= Complex::from_polar(1.0, 2.0 * PI * k / m as f64);
    }
    inv.process(&mut c);
    (0..n).map(|j| (c[j].re / n as f64 - phi[j]).abs()).fold(0.0, f64::max)
}

/// Builds a profile from samples on the uniform grid `theta_j = 2 pi j / N`
/// and fills in every certificate.
pub fn profile_from_samples(params: &ProblemParams, phi: Vec<f64>, m: u32, energy: Option<f64>) -> Result<SolutionProfile> {
    check_grid(&phi)?;
    let n = phi.len();
    let (d1, d2) = derivatives(&phi);
    let (a, w) = bracket_and_weight(&phi, &d1, &d2);
    let residual_max = residual_from(params, &phi, &a, &w);
    let hconvex_min = a.iter().copied().fold(f64::INFINITY, f64::min);
    let hk_value = hk_from(&phi, &d1, &d2, &a);
    let symmetry_defect = symmetry_defect(&phi, m);
    let symmetric = if m == 0 {
        symmetry_defect < CERTIFY_SYMMETRY * phi[0]
    } else {
        symmetry_defect < CERTIFY_SYMMETRY
    };
    let certified = residual_max < CERTIFY_RESIDUAL && hconvex_min > 0.0 && hk_value >= CERTIFY_HK_FLOOR && symmetric;
    Ok(SolutionProfile {
        params: *params,
        energy,
        m,
        theta: (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect(),
        phi,
        residual_max,
        hconvex_min,
        hk_value,
        symmetry_defect,
        certified,
    })
}

/// The constant profile `phi = c`.
pub fn constant_profile(params: &ProblemParams, c: f64, n: usize) -> Result<SolutionProfile> {
    profile_from_samples(params, vec![c; n], 0, None)
}

/// The `p = -1`, `q = 1` family `phi = a cos(theta) + sqrt(1 + 2 gamma + a^2)`.
pub fn family_profile(params: &ProblemParams, a: f64, n: usize) -> Result<SolutionProfile> {
    if params.p != -1.0 || params.q != 1.0 {
        return Err(Error::UnsupportedRegion(format!(
            "the cosine family exists only at p = -1, q = 1, got p={}, q={}",
            params.p, params.q
        )));
    }
    let b = (1.0 + 2.0 * params.gamma + a * a).sqrt();
    let phi = (0..n).map(|j| a * (2.0 * PI * j as f64 / n as f64).cos() + b).collect();
    profile_from_samples(params, phi, if a == 0.0 { 0 } else { 1 }, None)
}

/// Integrates the orbit at level `energy`, checks its half-period against
/// `pi/(2m)`, and samples `phi(theta) = u(theta/2)^2` over one period,
/// tiled `m` times.
///
/// The sampling time is stretched by `kappa = 2 m Theta / pi` (within
/// `period_tol` of 1) so the sampled profile closes up exactly.
/// Secant refinement of the energy so that the half-period hits `target` at
/// the profile tolerances. Stretching time by `half / target` instead would
/// put an `O(kappa - 1)` error into every second derivative.
fn polish_energy(params: &ProblemParams, energy: f64, half: f64, target: f64, cfg: &OrbitConfig) -> Result<(f64, f64)> {
    let fine = OrbitConfig {
        rtol: cfg.profile_rtol,
        atol: cfg.profile_atol,
        ..cfg.clone()
    };
    let measure = |e: f64| -> Result<f64> { measure_half_period(&integrate_orbit(params, e, 1.05 * PI, &fine)?) };
    let mut e1 = energy;
    let mut h1 = match measure(e1) {
        Ok(h) => h,
        Err(_) => return Ok((energy, half)),
    };
    let scale = energy.abs().max(1.0);
    let mut e0 = e1 + 1e-6 * scale;
    let mut h0 = match measure(e0) {
        Ok(h) => h,
        Err(_) => return Ok((e1, h1)),
    };
    for _ in 0..8 {
        if (h1 - target).abs() < 1e-14 || h1 == h0 {
            break;
        }
        let e2 = e1 - (h1 - target) * (e1 - e0) / (h1 - h0);
        let h2 = match measure(e2) {
            Ok(h) => h,
            Err(_) => break,
        };
        if (h2 - target).abs() >= (h1 - target).abs() {
            break;
        }
        (e0, h0, e1, h1) = (e1, h1, e2, h2);
    }
    Ok((e1, h1))
}

pub fn build_solution(params: &ProblemParams, energy: f64, m: u32, cfg: &OrbitConfig) -> Result<SolutionProfile> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("fold symmetry must be at least 2, got {m}")));
    }
    let n = cfg.grid;
    if n < MIN_GRID {
        return Err(Error::GridTooCoarse { n, min: MIN_GRID });
    }
    let orbit = integrate_orbit(params, energy, 1.05 * PI, cfg)?;
    let target = PI / (2.0 * m as f64);
    let half = measure_half_period(&orbit).map_err(|e| match e {
        Error::NoEventFound => Error::PeriodMismatch {
            measured: f64::NAN,
            target,
            tol: cfg.period_tol,
        },
        e => e,
    })?;
    if (half - target).abs() > cfg.period_tol {
        return Err(Error::PeriodMismatch {
            measured: half,
            target,
            tol: cfg.period_tol,
        });
    }
    let (energy, half) = polish_energy(params, energy, half, target, cfg)?;
    let kappa = half / target;
    let mu = m as usize;
    let count = if n % mu == 0 { n / mu } else { n };
    let f = system(params);
    let h = kappa * PI / n as f64;
    let mut y = [orbit.u[0], 0.0];
    let mut u = Vec::with_capacity(count);
    for j in 0..count {
        if j > 0 {
            y = gbs::advance(&f, &y, h, cfg.profile_rtol).ok_or(Error::StepFailure {
                tau: h * (j - 1) as f64,
                step: h,
            })?;
        }
        u.push(y[0]);
    }
    let phi: Vec<f64> = (0..n).map(|j| u[j % count] * u[j % count]).collect();
    profile_from_samples(params, phi, m, Some(energy))
}
