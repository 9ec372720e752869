//! Bracketed scalar root finding.
//!
//! Brent's method: bisection safeguarding inverse-quadratic and secant steps.
//! The callers in this crate always solve for a sign change of a strictly
//! monotone function, so a bracket, once found, is never lost.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Relative tolerance on the root location.
    pub rel_tol: f64,
    /// Absolute tolerance on the root location.
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_iter: 400,
        }
    }
}

/// Finds a root of `f` inside `[a, b]`, where `f(a)` and `f(b)` differ in sign.
///
/// Infinite function values are accepted (they only carry a sign); the
/// interpolation steps are skipped whenever they would not be finite.
pub fn brent<F>(mut f: F, a: f64, b: f64, opts: &RootOptions) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    brent_with_values(f, a, b, fa, fb, opts)
}

pub fn brent_with_values<F>(
    mut f: F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    opts: &RootOptions,
) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::DomainError(format!(
            "root bracket [{a}, {b}] has NaN endpoint values"
        )));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::DomainError(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }

    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..opts.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (opts.rel_tol * b.abs()).max(opts.abs_tol);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        let mut bisect = true;
        if e.abs() >= tol && fa.abs() > fb.abs() && fa.is_finite() && fb.is_finite() && fc.is_finite() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if p.is_finite() && q.is_finite() && 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
                bisect = false;
            }
        }
        if bisect {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::DomainError(format!("function is NaN at {b}")));
        }
    }
    Err(Error::ConvergenceFailure {
        what: "bracketed root search",
        best: b,
        error_estimate: (c - b).abs(),
    })
}

/// Grows `hi` geometrically (by `factor`) until `f(hi)` has the sign opposite
/// to `f(lo)`. Returns `(hi, f(hi))`.
pub fn expand_upward<F>(mut f: F, lo: f64, f_lo: f64, mut hi: f64, factor: f64, max_tries: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    for _ in 0..max_tries {
        let f_hi = f(hi);
        if f_hi.is_nan() {
            return Err(Error::DomainError(format!("function is NaN at {hi}")));
        }
        if f_hi.signum() != f_lo.signum() || f_hi == 0.0 {
            return Ok((hi, f_hi));
        }
        hi = lo + (hi - lo) * factor;
    }
    Err(Error::ConvergenceFailure {
        what: "bracket expansion",
        best: hi,
        error_estimate: f64::INFINITY,
    })
}
