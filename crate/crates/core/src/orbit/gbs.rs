//! Gragg-Bulirsch-Stoer extrapolation for the profile sampler.
//!
//! The samples feed a second spectral derivative, so their errors get
//! multiplied by `k^2`; a 5th-order method leaves too much behind.

use super::State;

const MAX_ROWS: usize = 12;

fn midpoint<F>(f: &F, y: &State, h: f64, n: usize) -> Option<State>
where
    F: Fn(&State) -> Option<State>,
{
    let s = h / n as f64;
    let d0 = f(y)?;
    let mut z0 = *y;
    let mut z1 = [y[0] + s * d0[0], y[1] + s * d0[1]];
    for _ in 1..n {
        let d = f(&z1)?;
        let z2 = [z0[0] + 2.0 * s * d[0], z0[1] + 2.0 * s * d[1]];
        z0 = z1;
        z1 = z2;
    }
    let d = f(&z1)?;
    Some([
        0.5 * (z1[0] + z0[0] + s * d[0]),
        0.5 * (z1[1] + z0[1] + s * d[1]),
    ])
}

/// One extrapolated step of size `h`; returns the state and the last
/// correction as an error estimate.
fn step<F>(f: &F, y: &State, h: f64) -> Option<(State, f64)>
where
    F: Fn(&State) -> Option<State>,
{
    let mut prev: Vec<State> = Vec::new();
    let mut err = f64::INFINITY;
    for j in 0..MAX_ROWS {
        let nj = 2.0 * (j + 1) as f64;
        let mut row = vec![midpoint(f, y, h, 2 * (j + 1))?];
        for k in 1..=j {
            let nk = 2.0 * (j + 1 - k) as f64;
            let ratio = (nj / nk).powi(2) - 1.0;
            let (a, b) = (row[k - 1], prev[k - 1]);
            row.push([a[0] + (a[0] - b[0]) / ratio, a[1] + (a[1] - b[1]) / ratio]);
        }
        if j > 0 {
            let (a, b) = (row[j], row[j - 1]);
            err = (a[0] - b[0]).abs().max((a[1] - b[1]).abs());
            let scale = 1.0 + a[0].abs().max(a[1].abs());
            if j >= 3 && err <= 4.0 * f64::EPSILON * scale {
                return Some((a, err));
            }
        }
        prev = row;
    }
    Some((prev[MAX_ROWS - 1], err))
}

/// Advances `y` by `h`, halving the step until the extrapolation settles.
pub fn advance<F>(f: &F, y: &State, h: f64, tol: f64) -> Option<State>
where
    F: Fn(&State) -> Option<State>,
{
    advance_depth(f, y, h, tol, 0)
}

fn advance_depth<F>(f: &F, y: &State, h: f64, tol: f64, depth: u32) -> Option<State>
where
    F: Fn(&State) -> Option<State>,
{
    let (out, err) = step(f, y, h)?;
    let scale = 1.0 + out[0].abs().max(out[1].abs());
    if err <= tol * scale || depth >= 20 {
        return Some(out);
    }
    let mid = advance_depth(f, y, 0.5 * h, tol, depth + 1)?;
    advance_depth(f, &mid, 0.5 * h, tol, depth + 1)
}
