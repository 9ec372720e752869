mod args;
mod commands;
mod config;
mod error;
mod grid;
mod output;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::Report;
use config::{RunConfig, THREADS_ENV};
use error::{CliError, EXIT_OK, EXIT_USAGE};

fn configure(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.global.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        cfg.apply_file(&text)?;
    }
    if cli.global.workers.is_none() {
        cfg.apply_env(std::env::var(THREADS_ENV).ok().as_deref())?;
    }
    cfg.apply_overrides(&cli.global.overrides())?;
    Ok(cfg)
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?
            .install(|| commands::run(&cli.command, cfg)),
        None => commands::run(&cli.command, cfg),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = configure(&cli).and_then(|cfg| {
        let report = execute(&cli, &cfg)?;
        emit(&cfg, &report.text)?;
        Ok(report.exit)
    });
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
