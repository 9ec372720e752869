//! The reparameterized integrand `F_{p,q}(s, alpha, r)` and the turning-point
//! chart integrand `G`.
//!
//! ```text
//! F = [lam A^q + (1 - lam) B^q]^(1/q) - s^2 - a^2 r^2 s^-2
//! lam = (1 - s^2p) / (1 - r^2p),  A = r^2 + a^2,  B = 1 + a^2 r^2
//! ```
//!
//! `F` vanishes linearly at both ends of `[1, r]`, and near the ends the
//! naive form cancels to nothing. The evaluation here pulls out the exact
//! endpoint factors:
//!
//! ```text
//! near s = 1: F = B expm1(ln1p(lam (1/rho - 1)) / q) - (s^2 - 1)(1 - a^2 r^2 / s^2)
//! near s = r: F = A expm1(ln1p(-(1 - lam)(1 - rho)) / q) + (r^2 - s^2)(1 - a^2 / s^2)
//! ```
//!
//! with `rho = (B/A)^q < 1`, and works from `ln s` and `ln(r/s)` so the
//! quadrature can feed in both without rounding either.

use crate::error::{Error, Result};
use crate::scalar::require_period_region;

/// Per-`(p, q, alpha, r)` constants of the integrand.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Integrand {
    p: f64,
    q: f64,
    alpha2: f64,
    ln_r: f64,
    ln_a: f64,
    ln_b: f64,
    /// `expm1(2p ln r)`, in (-1, 0).
    den: f64,
    /// `-ln rho = q (ln A - ln B) > 0`.
    neg_ln_rho: f64,
}

/// `ln(1 + lam (e^x - 1))` for `0 <= lam <= 1`, `x >= 0`, without overflow.
#[inline]
fn ln_mix(lam: f64, x: f64) -> f64 {
    if lam == 0.0 {
        0.0
    } else if x < 600.0 {
        (lam * x.exp_m1()).ln_1p()
    } else {
        lam.ln() + x + ((1.0 - lam) / lam * (-x).exp()).ln_1p()
    }
}

impl Integrand {
    /// `alpha = 0` is accepted here (the boundary chart).
    pub(crate) fn new(p: f64, q: f64, alpha: f64, r: f64) -> Self {
        let ln_r = r.ln();
        let alpha2 = alpha * alpha;
        let ln_a = (r * r + alpha2).ln();
        let ln_b = (alpha2 * r * r).ln_1p();
        Self {
            p,
            q,
            alpha2,
            ln_r,
            ln_a,
            ln_b,
            den: (2.0 * p * ln_r).exp_m1(),
            neg_ln_rho: q * (ln_a - ln_b),
        }
    }

    /// `F` at `s = exp(ls)` with `ln(r/s) = lrs` supplied separately.
    #[inline]
    pub(crate) fn eval_logs(&self, ls: f64, lrs: f64) -> f64 {
        let p2 = 2.0 * self.p;
        let lam = (p2 * ls).exp_m1() / self.den;
        if lam <= 0.5 {
            let mix = ln_mix(lam, self.neg_ln_rho) / self.q;
            let b = self.ln_b.exp();
            b * mix.exp_m1() - (2.0 * ls).exp_m1() * (1.0 - self.alpha2 * (2.0 * lrs).exp())
        } else {
            let one_minus_lam = (p2 * ls).exp() * (p2 * lrs).exp_m1() / self.den;
            let one_minus_rho = -(-self.neg_ln_rho).exp_m1();
            let mix = (-one_minus_lam * one_minus_rho).ln_1p() / self.q;
            let s2 = (2.0 * ls).exp();
            self.ln_a.exp() * mix.exp_m1() + s2 * (2.0 * lrs).exp_m1() * (1.0 - self.alpha2 / s2)
        }
    }

    pub(crate) fn ln_r(&self) -> f64 {
        self.ln_r
    }
}

/// `F_{p,q}(s, alpha, r)` for `1 <= s <= r`, `0 < alpha < 1 < r`, `p <= -1`, `q >= 1`.
pub fn integrand_f(p: f64, q: f64, s: f64, alpha: f64, r: f64) -> Result<f64> {
    require_period_region(p, q)?;
    if !(alpha > 0.0 && alpha < 1.0 && r > 1.0 && r.is_finite()) {
        return Err(Error::DomainError(format!("need 0 < alpha < 1 < r, got alpha={alpha}, r={r}")));
    }
    if !(s >= 1.0 && s <= r) {
        return Err(Error::DomainError(format!("need 1 <= s <= r, got s={s}, r={r}")));
    }
    let f = Integrand::new(p, q, alpha, r);
    Ok(f.eval_logs(s.ln(), (r / s).ln()))
}

/// The turning-point chart integrand
/// `G(u) = [lam' P+ + (1 - lam') P-]^(1/q) - u^2 - u^-2`,
/// `lam' = (u-^2p - u^2p)/(u-^2p - u+^2p)`, `P+- = (u+-^2 + u+-^-2)^q`,
/// so that the half-period is `int du / sqrt(G)` over `[u-, u+]`.
pub fn integrand_g(p: f64, q: f64, u: f64, u_minus: f64, u_plus: f64) -> Result<f64> {
    require_period_region(p, q)?;
    if !(u_minus > 0.0 && u_plus > u_minus && u >= u_minus && u <= u_plus) {
        return Err(Error::DomainError(format!(
            "need 0 < u_minus <= u <= u_plus, got ({u_minus}, {u}, {u_plus})"
        )));
    }
    let pw = |x: f64| x.powf(2.0 * p);
    let lam = (pw(u_minus) - pw(u)) / (pw(u_minus) - pw(u_plus));
    let big = |x: f64| (x * x + 1.0 / (x * x)).powf(q);
    Ok((lam * big(u_plus) + (1.0 - lam) * big(u_minus)).powf(1.0 / q) - u * u - 1.0 / (u * u))
}
