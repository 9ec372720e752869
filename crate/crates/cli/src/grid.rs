//! Grid specs on the command line: `lo:hi:n` (inclusive, evenly spaced),
//! a comma list `a,b,c`, or a single value.

use crate::error::CliError;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad grid '{spec}': {why}"));
    let num = |s: &str| -> Result<f64, CliError> {
        let x: f64 = s.trim().parse().map_err(|_| bad(&format!("'{s}' is not a number")))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(bad("values must be finite"))
        }
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let n: usize = n.trim().parse().map_err(|_| bad("count must be a positive integer"))?;
            match n {
                0 => Err(bad("count must be a positive integer")),
                1 => Ok(vec![lo]),
                _ => Ok((0..n)
                    .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
                    .collect()),
            }
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(bad("expected lo:hi:n or a comma list")),
    }
}
