//! Run configuration: defaults, then an optional `key = value` file, then
//! `HOROPERIOD_THREADS`, then command-line flags.

use std::path::PathBuf;

use clap::ValueEnum;
use horoperiod::{OrbitConfig, QuadratureConfig, ScanConfig};

use crate::error::CliError;

pub const THREADS_ENV: &str = "HOROPERIOD_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub format: Format,
    pub output: Option<PathBuf>,
    /// `None` leaves the pool size to rayon.
    pub workers: Option<usize>,
    pub quad_tol: f64,
    pub ode_rtol: f64,
    pub ode_atol: f64,
    pub root_tol: f64,
    /// Samples per profile.
    pub grid: usize,
    /// E-scan density of the classifier.
    pub points_per_decade: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let orbit = OrbitConfig::default();
        let scan = ScanConfig::default();
        Self {
            format: Format::Json,
            output: None,
            workers: None,
            quad_tol: QuadratureConfig::default().target_tol,
            ode_rtol: orbit.rtol,
            ode_atol: orbit.atol,
            root_tol: scan.root_tol,
            grid: orbit.grid,
            points_per_decade: scan.points_per_decade,
        }
    }
}

/// Overrides collected from flags; `None` keeps the layer below.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub quad_tol: Option<f64>,
    pub ode_rtol: Option<f64>,
    pub ode_atol: Option<f64>,
    pub root_tol: Option<f64>,
    pub grid: Option<usize>,
    pub points_per_decade: Option<usize>,
}

fn positive_real(key: &str, value: &str) -> Result<f64, CliError> {
    match value.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(CliError::Usage(format!("{key} must be a positive number, got '{value}'"))),
    }
}

fn positive_int(key: &str, value: &str) -> Result<usize, CliError> {
    match value.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::Usage(format!("{key} must be a positive integer, got '{value}'"))),
    }
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Usage(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "format" => {
                self.format = Format::from_str(value, true)
                    .map_err(|_| CliError::Usage(format!("format must be json or csv, got '{value}'")))?
            }
            "output" => self.output = Some(PathBuf::from(value)),
            "workers" => self.workers = Some(positive_int(key, value)?),
            "quad_tol" => self.quad_tol = positive_real(key, value)?,
            "ode_rtol" => self.ode_rtol = positive_real(key, value)?,
            "ode_atol" => self.ode_atol = positive_real(key, value)?,
            "root_tol" => self.root_tol = positive_real(key, value)?,
            "grid" => self.grid = positive_int(key, value)?,
            "points_per_decade" => self.points_per_decade = positive_int(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    pub fn apply_env(&mut self, threads: Option<&str>) -> Result<(), CliError> {
        if let Some(v) = threads {
            self.workers = Some(positive_int(THREADS_ENV, v.trim())?);
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) -> Result<(), CliError> {
        if let Some(f) = o.format {
            self.format = f;
        }
        if let Some(p) = &o.output {
            self.output = Some(p.clone());
        }
        if let Some(w) = o.workers {
            self.workers = Some(w);
        }
        let reals = [
            ("--quad-tol", o.quad_tol, &mut self.quad_tol),
            ("--ode-rtol", o.ode_rtol, &mut self.ode_rtol),
            ("--ode-atol", o.ode_atol, &mut self.ode_atol),
            ("--root-tol", o.root_tol, &mut self.root_tol),
        ];
        for (name, value, slot) in reals {
            if let Some(x) = value {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(CliError::Usage(format!("{name} must be positive, got {x}")));
                }
                *slot = x;
            }
        }
        if let Some(n) = o.grid {
            self.grid = n;
        }
        if let Some(n) = o.points_per_decade {
            self.points_per_decade = n;
        }
        Ok(())
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            target_tol: self.quad_tol,
            ..QuadratureConfig::default()
        }
    }

    pub fn orbit(&self) -> OrbitConfig {
        OrbitConfig {
            rtol: self.ode_rtol,
            atol: self.ode_atol,
            grid: self.grid,
            ..OrbitConfig::default()
        }
    }

    pub fn scan(&self) -> ScanConfig {
        ScanConfig {
            points_per_decade: self.points_per_decade,
            root_tol: self.root_tol,
            quadrature: self.quadrature(),
            ..ScanConfig::default()
        }
    }
}
