use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_NO_BRANCH: i32 = 4;
pub const EXIT_PARTIAL: i32 = 5;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

pub const EXIT_CODES_HELP: &str = "\
Exit codes:
  0   success
  2   domain error (parameters outside an operation's region, energy below the minimum, ...)
  3   numerical failure (quadrature or integration did not converge, period mismatch)
  4   solve: no branch with the requested fold symmetry
  5   scan/classify: partial result, see the status column
  64  usage error (malformed or conflicting flags, bad config file)
  74  I/O error";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Lib(#[from] horoperiod::Error),

    #[error("no m = {m} branch at p={p}, q={q}, gamma={gamma}")]
    NoBranch { m: u32, p: f64, q: f64, gamma: f64 },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(e) if e.is_domain() => EXIT_DOMAIN,
            CliError::Lib(_) => EXIT_CONVERGENCE,
            CliError::NoBranch { .. } => EXIT_NO_BRANCH,
            CliError::Io { .. } => EXIT_IO,
            CliError::Verify(_) => EXIT_DOMAIN,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
