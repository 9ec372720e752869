use std::path::Path;

use horoperiod::orbit::profile_from_samples;
use horoperiod::{
    build_solution, constant_solutions, count_solutions, period_energy, period_shape, region_scan, threshold_gamma,
    threshold_gamma_weighted, ClassificationReport, Execution, ProblemParams, RecordStatus, ScanStatus,
    ShapeCoords, SolutionProfile,
};
use serde::{Deserialize, Serialize};

use crate::args::{ClassifyArgs, Command, ConstantArgs, PeriodArgs, ScanArgs, SolveArgs, ThresholdArgs};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, EXIT_DOMAIN, EXIT_OK, EXIT_PARTIAL};
use crate::grid::parse_grid;
use crate::output::{csv, fmt_f64, json, SCHEMA_VERSION};

/// Text to emit and the exit code to finish with.
pub struct Report {
    pub text: String,
    pub exit: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, exit: EXIT_OK }
    }
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        Command::Period(a) => period(a, cfg),
        Command::Solve(a) => solve(a, cfg),
        Command::Classify(a) => classify(a, cfg),
        Command::Thresholds(a) => thresholds(a, cfg),
        Command::Scan(a) => scan(a, cfg),
        Command::Constants(a) => constants(a, cfg),
    }
}

#[derive(Serialize)]
struct PeriodOut {
    theta: f64,
    error_estimate: f64,
    nodes_used: usize,
    chart: &'static str,
}

fn period(a: &PeriodArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let energy_chart = a.gamma.is_some() || a.energy.is_some();
    let shape_chart = a.alpha.is_some() || a.r.is_some();
    let quad = cfg.quadrature();
    let (value, chart) = match (energy_chart, shape_chart) {
        (true, true) => return Err(CliError::Usage("give either --gamma/--E or --alpha/--r, not both".into())),
        (false, false) => return Err(CliError::Usage("give --gamma and --E, or --alpha and --r".into())),
        (true, false) => match (a.gamma, a.energy) {
            (Some(g), Some(e)) => (period_energy(&ProblemParams::new(a.p, a.q, g)?, e, &quad)?, "energy"),
            _ => return Err(CliError::Usage("--gamma and --E go together".into())),
        },
        (false, true) => match (a.alpha, a.r) {
            (Some(alpha), Some(r)) => (period_shape(a.p, a.q, &ShapeCoords::new(alpha, r)?, &quad)?, "shape"),
            _ => return Err(CliError::Usage("--alpha and --r go together".into())),
        },
    };
    let out = PeriodOut {
        theta: value.value,
        error_estimate: value.error_estimate,
        nodes_used: value.nodes_used,
        chart,
    };
    let text = match cfg.format {
        Format::Json => json("period", &out)?,
        Format::Csv => csv(
            &["theta", "error_estimate", "nodes_used", "chart"],
            [vec![
                fmt_f64(out.theta),
                fmt_f64(out.error_estimate),
                out.nodes_used.to_string(),
                chart.to_string(),
            ]],
        )?,
    };
    Ok(Report::ok(text))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub residual_max: f64,
    pub hconvex_min: f64,
    pub hk_value: f64,
    pub symmetry_defect: f64,
    pub certified: bool,
}

/// The `solve` document; `--verify` reads it back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub params: ProblemParams,
    pub m: u32,
    pub energy: Option<f64>,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    pub certification: Certification,
}

impl From<SolutionProfile> for ProfileDoc {
    fn from(s: SolutionProfile) -> Self {
        Self {
            params: s.params,
            m: s.m,
            energy: s.energy,
            certification: Certification {
                residual_max: s.residual_max,
                hconvex_min: s.hconvex_min,
                hk_value: s.hk_value,
                symmetry_defect: s.symmetry_defect,
                certified: s.certified,
            },
            theta: s.theta,
            phi: s.phi,
        }
    }
}

#[derive(Deserialize)]
struct ProfileFile {
    schema_version: u32,
    kind: String,
    #[serde(flatten)]
    doc: ProfileDoc,
}

#[derive(Serialize)]
struct VerifyOut {
    stored_residual_max: f64,
    residual_max: f64,
    hconvex_min: f64,
    hk_value: f64,
    symmetry_defect: f64,
    certified: bool,
    matches: bool,
}

/// Stored and recomputed residuals may differ by this much.
const VERIFY_TOL: f64 = 1e-12;

fn read_profile(path: &Path) -> Result<ProfileDoc, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let file: ProfileFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Verify(format!("{}: not a solution profile: {e}", path.display())))?;
    if file.schema_version != SCHEMA_VERSION || file.kind != "solution_profile" {
        return Err(CliError::Verify(format!(
            "{}: expected solution_profile schema {SCHEMA_VERSION}, found {} schema {}",
            path.display(),
            file.kind,
            file.schema_version
        )));
    }
    Ok(file.doc)
}

fn solve(a: &SolveArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    if let Some(path) = &a.verify {
        let doc = read_profile(path)?;
        let params = ProblemParams::new(doc.params.p, doc.params.q, doc.params.gamma)?;
        let prof = profile_from_samples(&params, doc.phi, doc.m, doc.energy)?;
        let stored = doc.certification.residual_max;
        let matches = (prof.residual_max - stored).abs() <= VERIFY_TOL;
        let out = VerifyOut {
            stored_residual_max: stored,
            residual_max: prof.residual_max,
            hconvex_min: prof.hconvex_min,
            hk_value: prof.hk_value,
            symmetry_defect: prof.symmetry_defect,
            certified: prof.certified,
            matches,
        };
        let text = match cfg.format {
            Format::Json => json("verification", &out)?,
            Format::Csv => csv(
                &["stored_residual_max", "residual_max", "hk_value", "certified", "matches"],
                [vec![
                    fmt_f64(stored),
                    fmt_f64(out.residual_max),
                    fmt_f64(out.hk_value),
                    out.certified.to_string(),
                    matches.to_string(),
                ]],
            )?,
        };
        return Ok(Report {
            text,
            exit: if matches { EXIT_OK } else { EXIT_DOMAIN },
        });
    }
    let (Some(p), Some(gamma), Some(m)) = (a.p, a.gamma, a.m) else {
        return Err(CliError::Usage("solve needs --p, --gamma and --m (or --verify FILE)".into()));
    };
    let params = ProblemParams::new(p, a.q, gamma)?;
    let report = count_solutions(&params, m, &cfg.scan())?;
    let branch = report
        .branches
        .iter()
        .filter(|b| b.m == m)
        .min_by(|x, y| x.energy.total_cmp(&y.energy))
        .ok_or(CliError::NoBranch { m, p, q: a.q, gamma })?;
    let doc = ProfileDoc::from(build_solution(&params, branch.energy, m, &cfg.orbit())?);
    let text = match cfg.format {
        Format::Json => json("solution_profile", &doc)?,
        Format::Csv => csv(
            &["theta", "phi"],
            doc.theta.iter().zip(&doc.phi).map(|(t, f)| vec![fmt_f64(*t), fmt_f64(*f)]),
        )?,
    };
    Ok(Report::ok(text))
}

fn classify(a: &ClassifyArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let params = ProblemParams::new(a.p, a.q, a.gamma)?;
    let report: ClassificationReport = count_solutions(&params, a.m_max, &cfg.scan())?;
    let exit = match report.status {
        ScanStatus::Complete => EXIT_OK,
        ScanStatus::Incomplete => EXIT_PARTIAL,
    };
    let text = match cfg.format {
        Format::Json => json("classification", &report)?,
        Format::Csv => {
            let lead = [fmt_f64(a.p), fmt_f64(a.q), fmt_f64(a.gamma)];
            let row = |kind: &str, m: String, value: String, check: String| {
                let mut r = lead.to_vec();
                r.extend([kind.to_string(), m, value, check]);
                r
            };
            let mut rows = Vec::new();
            if report.infinite_family {
                rows.push(row("family", "1".into(), String::new(), String::new()));
            }
            for c in &report.constant_roots {
                rows.push(row("constant", "0".into(), fmt_f64(*c), String::new()));
            }
            for b in &report.branches {
                rows.push(row("branch", b.m.to_string(), fmt_f64(b.energy), fmt_f64(b.theta_check)));
            }
            csv(&["p", "q", "gamma", "kind", "m", "value", "theta_check"], rows)?
        }
    };
    Ok(Report { text, exit })
}

#[derive(Serialize)]
struct ThresholdRecord {
    p: f64,
    q: f64,
    l: u32,
    gamma: Option<f64>,
    status: &'static str,
    message: Option<String>,
}

#[derive(Serialize)]
struct Records<T: Serialize> {
    records: Vec<T>,
}

fn thresholds(a: &ThresholdArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let grid = parse_grid(&a.p)?;
    let eval = |p: f64| {
        if a.q == 1.0 {
            threshold_gamma(p, a.l)
        } else {
            threshold_gamma_weighted(p, a.q, a.l)
        }
    };
    if let [p] = grid.as_slice() {
        eval(*p)?;
    }
    let records: Vec<ThresholdRecord> = grid
        .iter()
        .map(|&p| match eval(p) {
            Ok(g) => ThresholdRecord {
                p,
                q: a.q,
                l: a.l,
                gamma: Some(g),
                status: "ok",
                message: None,
            },
            Err(e) => ThresholdRecord {
                p,
                q: a.q,
                l: a.l,
                gamma: None,
                status: "error",
                message: Some(e.to_string()),
            },
        })
        .collect();
    let text = match cfg.format {
        Format::Json => json("thresholds", &Records { records })?,
        Format::Csv => csv(
            &["p", "q", "l", "gamma", "status"],
            records.iter().map(|r| {
                vec![
                    fmt_f64(r.p),
                    fmt_f64(r.q),
                    r.l.to_string(),
                    r.gamma.map(fmt_f64).unwrap_or_default(),
                    r.status.to_string(),
                ]
            }),
        )?,
    };
    Ok(Report::ok(text))
}

pub const SCAN_HEADER: [&str; 7] = ["p", "q", "gamma", "constant_count", "branch_count", "infinite_family", "status"];

fn scan(a: &ScanArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let (p, q, g) = (parse_grid(&a.p)?, parse_grid(&a.q)?, parse_grid(&a.gamma)?);
    let exec = if cfg.workers == Some(1) {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let records = region_scan(&p, &q, &g, a.m_max, &cfg.scan(), exec);
    let exit = if records.iter().all(|r| r.status == RecordStatus::Ok) {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    };
    let text = match cfg.format {
        Format::Json => json("scan", &Records { records })?,
        Format::Csv => csv(
            &SCAN_HEADER,
            records.iter().map(|r| {
                vec![
                    fmt_f64(r.p),
                    fmt_f64(r.q),
                    fmt_f64(r.gamma),
                    r.constant_count.to_string(),
                    r.branch_count.to_string(),
                    r.infinite_family.to_string(),
                    r.status.as_str().to_string(),
                ]
            }),
        )?,
    };
    Ok(Report { text, exit })
}

#[derive(Serialize)]
struct ConstantsOut {
    params: ProblemParams,
    roots: Vec<f64>,
    threshold: Option<f64>,
}

fn constants(a: &ConstantArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let params = ProblemParams::new(a.p, a.q, a.gamma)?;
    let sol = constant_solutions(&params)?;
    let text = match cfg.format {
        Format::Json => json(
            "constants",
            &ConstantsOut {
                params,
                roots: sol.roots,
                threshold: sol.threshold,
            },
        )?,
        Format::Csv => csv(&["root"], sol.roots.iter().map(|c| vec![fmt_f64(*c)]))?,
    };
    Ok(Report::ok(text))
}
