//! Grid scans over `(p, q, gamma)`.

use serde::{Deserialize, Serialize};

use super::count::{count_solutions, ScanConfig, ScanStatus};
use super::thresholds::{threshold_gamma, threshold_gamma_weighted};
use crate::exec::Execution;
use crate::scalar::ProblemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Ok,
    Incomplete,
    Error,
}

impl RecordStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordStatus::Ok => "ok",
            RecordStatus::Incomplete => "incomplete",
            RecordStatus::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub p: f64,
    pub q: f64,
    pub gamma: f64,
    pub constant_count: usize,
    pub branch_count: usize,
    pub infinite_family: bool,
    /// Number of `l` in `1..m_max` with `gamma` above the threshold `gamma_{p,q,l}`.
    pub thresholds_crossed: u32,
    pub status: RecordStatus,
    pub message: Option<String>,
}

/// How many explicit thresholds `gamma` exceeds, for `l < m_max`.
pub fn thresholds_crossed(p: f64, q: f64, gamma: f64, m_max: u32) -> u32 {
    (1..m_max)
        .filter(|&l| {
            let t = if q == 1.0 {
                threshold_gamma(p, l)
            } else {
                threshold_gamma_weighted(p, q, l)
            };
            matches!(t, Ok(t) if gamma > t)
        })
        .count() as u32
}

fn scan_point(p: f64, q: f64, gamma: f64, m_max: u32, cfg: &ScanConfig) -> ScanRecord {
    let mut rec = ScanRecord {
        p,
        q,
        gamma,
        constant_count: 0,
        branch_count: 0,
        infinite_family: false,
        thresholds_crossed: 0,
        status: RecordStatus::Error,
        message: None,
    };
    let report = ProblemParams::new(p, q, gamma).and_then(|params| count_solutions(&params, m_max, cfg));
    match report {
        Ok(r) => {
            rec.constant_count = r.constant_roots.len();
            rec.branch_count = r.branches.len();
            rec.infinite_family = r.infinite_family;
            rec.thresholds_crossed = thresholds_crossed(p, q, gamma, m_max);
            rec.status = match r.status {
                ScanStatus::Complete => RecordStatus::Ok,
                ScanStatus::Incomplete => RecordStatus::Incomplete,
            };
        }
        Err(e) => rec.message = Some(e.to_string()),
    }
    rec
}

/// One record per point of `p_grid x q_grid x gamma_grid`, `p` outermost,
/// always in grid order. Per-point failures are recorded, never raised.
pub fn region_scan(
    p_grid: &[f64],
    q_grid: &[f64],
    gamma_grid: &[f64],
    m_max: u32,
    cfg: &ScanConfig,
    exec: Execution,
) -> Vec<ScanRecord> {
    let points: Vec<(f64, f64, f64)> = p_grid
        .iter()
        .flat_map(|&p| q_grid.iter().flat_map(move |&q| gamma_grid.iter().map(move |&g| (p, q, g))))
        .collect();
    exec.map(&points, |&(p, q, g)| scan_point(p, q, g, m_max, cfg))
}
