//! Text encodings of results. Floats in CSV carry 17 significant digits;
//! JSON uses the shortest representation that parses back to the same bits.

use serde::Serialize;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// `d.dddddddddddddddde±x`: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn csv<R, I>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::io("<csv>", std::io::Error::other(e));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io("<csv>", std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| CliError::io("<csv>", std::io::Error::other(e)))
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    kind: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

pub fn json<T: Serialize>(kind: &str, body: &T) -> Result<String, CliError> {
    let doc = Versioned {
        schema_version: SCHEMA_VERSION,
        kind,
        body,
    };
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::io("<json>", std::io::Error::other(e)))?;
    s.push('\n');
    Ok(s)
}
