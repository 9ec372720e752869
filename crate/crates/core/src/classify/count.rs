//! Counting solution branches by locating `Theta(gamma, E) = pi/(2m)` in `E`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::period::limits::limit_small_oscillation;
use crate::period::{period_shape, QuadratureConfig};
use crate::roots::{brent_with_values, RootOptions};
use crate::scalar::{
    constant_solutions, critical_point, degenerate_cutoff, shape_from_turning, turning_points_with, CriticalData,
    ProblemParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub points_per_decade: usize,
    /// Decades of `E - e_star` always scanned.
    pub decades: usize,
    /// Hard cap on decades when extending towards the asymptote.
    pub max_decades: usize,
    /// First grid point sits at `e_star + start_rel * max(1, |e_star|)`.
    pub start_rel: f64,
    /// Scanning stops once `pi/2 - Theta` falls below this.
    pub asymptote_tol: f64,
    /// Absolute tolerance on `ln(E - e_star)` when locating a branch.
    pub root_tol: f64,
    pub quadrature: QuadratureConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            points_per_decade: 64,
            decades: 12,
            max_decades: 40,
            start_rel: 1e-10,
            asymptote_tol: 1e-4,
            root_tol: 1e-13,
            quadrature: QuadratureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    /// The E-scan reached the asymptote criterion, or the region is settled analytically.
    Complete,
    /// The E-scan hit its cap or skipped points after numerical failures.
    Incomplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub m: u32,
    pub energy: f64,
    /// `Theta(gamma, energy)` recomputed at the located root.
    pub theta_check: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub params: ProblemParams,
    pub constant_roots: Vec<f64>,
    pub branches: Vec<Branch>,
    pub infinite_family: bool,
    /// `|constant_roots| + |branches|`; never a claim of completeness.
    pub lower_bound_count: usize,
    pub status: ScanStatus,
    /// Range of `Theta` seen over the scan (both `NaN` when no scan ran).
    pub theta_min: f64,
    pub theta_max: f64,
    pub scanned_points: usize,
}

impl ClassificationReport {
    fn constants_only(params: &ProblemParams, roots: Vec<f64>, infinite_family: bool) -> Self {
        Self {
            params: *params,
            lower_bound_count: roots.len(),
            constant_roots: roots,
            branches: Vec::new(),
            infinite_family,
            status: ScanStatus::Complete,
            theta_min: f64::NAN,
            theta_max: f64::NAN,
            scanned_points: 0,
        }
    }
}

/// Half-period as a function of `x = ln(E - e_star)`.
struct ThetaCurve<'a> {
    params: &'a ProblemParams,
    crit: CriticalData,
    cutoff: f64,
    limit: f64,
    quad: &'a QuadratureConfig,
}

impl ThetaCurve<'_> {
    fn energy(&self, x: f64) -> f64 {
        self.crit.e_star + x.exp()
    }

    fn theta(&self, x: f64) -> Result<f64> {
        let gap = x.exp();
        if gap < 2.0 * self.cutoff {
            return Ok(self.limit);
        }
        let tp = turning_points_with(self.params, &self.crit, self.crit.e_star + gap)?;
        Ok(period_shape(self.params.p, self.params.q, &shape_from_turning(&tp), self.quad)?.value)
    }
}

/// Counts constant roots and non-constant `(m, E)` branches for `2 <= m <= m_max`.
///
/// * `p = -1, q = 1`: the cosine family; `infinite_family` is set.
/// * `p > -1, q = 1` or `p >= -1, q < 1`: only constants exist.
/// * `p <= -1, q >= 1`: constants plus an E-scan of the half-period.
pub fn count_solutions(params: &ProblemParams, m_max: u32, scan: &ScanConfig) -> Result<ClassificationReport> {
    let (p, q) = (params.p, params.q);
    if p == -1.0 && q == 1.0 {
        let roots = constant_solutions(params)?.roots;
        return Ok(ClassificationReport::constants_only(params, roots, true));
    }
    if (q == 1.0 && p > -1.0) || (p >= -1.0 && q < 1.0) {
        let roots = constant_solutions(params)?.roots;
        return Ok(ClassificationReport::constants_only(params, roots, false));
    }
    if !(p <= -1.0 && q >= 1.0) {
        return Err(Error::UnsupportedRegion(format!(
            "no classification available at p={p}, q={q}"
        )));
    }
    if scan.points_per_decade == 0 || scan.decades == 0 || !(scan.start_rel > 0.0) || !(scan.asymptote_tol > 0.0) || !(scan.root_tol > 0.0) {
        return Err(Error::InvalidParams("scan grid must be non-empty with positive tolerances".into()));
    }
    scan.quadrature.validate()?;

    let constant_roots = constant_solutions(params)?.roots;
    let crit = critical_point(params)?;
    let cutoff = degenerate_cutoff(crit.e_star);
    let curve = ThetaCurve {
        params,
        crit,
        cutoff,
        limit: limit_small_oscillation(p, q, crit.u_gamma.powi(-2))?,
        quad: &scan.quadrature,
    };

    let x0 = (scan.start_rel * crit.e_star.abs().max(1.0)).ln();
    let dx = std::f64::consts::LN_10 / scan.points_per_decade as f64;
    let mut xs = vec![(2.0 * cutoff).ln()];
    let mut thetas = vec![curve.limit];
    let mut status = ScanStatus::Complete;
    let mut i = 0usize;
    loop {
        let x = x0 + dx * i as f64;
        let decade = i / scan.points_per_decade;
        match curve.theta(x) {
            Ok(t) => {
                xs.push(x);
                thetas.push(t);
            }
            Err(_) => status = ScanStatus::Incomplete,
        }
        i += 1;
        if i >= scan.decades * scan.points_per_decade {
            if let Some(&t) = thetas.last() {
                if FRAC_PI_2 - t < scan.asymptote_tol {
                    break;
                }
            }
            if decade + 1 >= scan.max_decades {
                status = ScanStatus::Incomplete;
                break;
            }
        }
    }

    let opts = RootOptions {
        rel_tol: 0.0,
        abs_tol: scan.root_tol,
        max_iter: 200,
    };
    let mut branches = Vec::new();
    for m in 2..=m_max {
        let target = PI / (2.0 * m as f64);
        let g = |x: f64| curve.theta(x).map(|t| t - target).unwrap_or(f64::NAN);
        for k in 1..xs.len() {
            let (a, b) = (thetas[k - 1] - target, thetas[k] - target);
            if a.signum() == b.signum() {
                continue;
            }
            match brent_with_values(g, xs[k - 1], xs[k], a, b, &opts) {
                Ok(x) => {
                    let energy = curve.energy(x);
                    let theta_check = curve.theta(x).unwrap_or(f64::NAN);
                    branches.push(Branch { m, energy, theta_check });
                }
                Err(_) => status = ScanStatus::Incomplete,
            }
        }
    }

    let theta_min = thetas.iter().copied().fold(f64::INFINITY, f64::min);
    let theta_max = thetas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ClassificationReport {
        params: *params,
        lower_bound_count: constant_roots.len() + branches.len(),
        constant_roots,
        branches,
        infinite_family: false,
        status,
        theta_min,
        theta_max,
        scanned_points: thetas.len(),
    })
}
