//! Explicit `gamma` thresholds above which the small-oscillation limit of the
//! half-period drops below `pi/(2(l+1))`.

use crate::error::{Error, Result};
use crate::roots::{brent_with_values, RootOptions};
use std::f64::consts::LN_2;

fn check_l(l: u32) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidParams("threshold index l must be at least 1".into()));
    }
    let k = (l + 1) as f64;
    Ok(k * k)
}

/// `gamma_{p,l} = ((1 - (l+1)^2)/(1 + p)) ((2(l+1)^2 - 1 + p)/(1 + p))^((p-1)/2)`,
/// defined for `p < 1 - 2(l+1)^2`.
pub fn threshold_gamma(p: f64, l: u32) -> Result<f64> {
    let k2 = check_l(l)?;
    if !(p < 1.0 - 2.0 * k2) || !p.is_finite() {
        return Err(Error::BoundaryDivergence { p, l });
    }
    // Both ratios are quotients of two negative numbers.
    let first = (k2 - 1.0) / (-1.0 - p);
    let second = (1.0 - 2.0 * k2 - p) / (-1.0 - p);
    Ok((first.ln() + 0.5 * (p - 1.0) * second.ln()).exp())
}

/// The weighted threshold: solve
/// `(1 - p) + (1 + p) w + (q - 1)(1 - w)^2/(1 + w) = 2(l+1)^2` for `w = u^-4` in
/// `(0, 1)`, then `gamma = 2^-q (u^2 + u^-2)^(q-1) (u^(2-2p) - u^(-2-2p))`.
pub fn threshold_gamma_weighted(p: f64, q: f64, l: u32) -> Result<f64> {
    let k2 = check_l(l)?;
    if !(p <= -1.0 && q >= 1.0 && p.is_finite() && q.is_finite()) {
        return Err(Error::UnsupportedRegion(format!("need p <= -1 and q >= 1, got p={p}, q={q}")));
    }
    if q - p <= 2.0 * k2 {
        return Err(Error::UnsupportedRegion(format!(
            "q - p = {} does not exceed 2(l+1)^2 = {}",
            q - p,
            2.0 * k2
        )));
    }
    let psi = |w: f64| (1.0 - p) + (1.0 + p) * w + (q - 1.0) * (1.0 - w) * (1.0 - w) / (1.0 + w) - 2.0 * k2;
    let opts = RootOptions {
        rel_tol: 1e-15,
        abs_tol: 1e-300,
        max_iter: 400,
    };
    let w = brent_with_values(psi, 0.0, 1.0, q - p - 2.0 * k2, 2.0 - 2.0 * k2, &opts)?;
    // ln u = -ln(w)/4; u^2 + u^-2 = (1 + w)/sqrt(w); u^4 - 1 = (1 - w)/w
    let ln_w = w.ln();
    let ln_gamma = -q * LN_2 + (q - 1.0) * ((1.0 + w).ln() - 0.5 * ln_w) + (2.0 + 2.0 * p) * ln_w / 4.0
        + ((1.0 - w) / w).ln();
    Ok(ln_gamma.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unweighted_examples() {
        assert_relative_eq!(threshold_gamma(-17.0, 1).unwrap(), 402653184.0 / 31250000.0, max_relative = 1e-14);
        assert_relative_eq!(threshold_gamma(-9.0, 1).unwrap(), 384.0, max_relative = 1e-14);
        assert!(matches!(threshold_gamma(-7.0, 1), Err(Error::BoundaryDivergence { .. })));
        assert!(matches!(threshold_gamma(-17.0, 2), Err(Error::BoundaryDivergence { .. })));
        // l = 2 at p = -33: (8/32) (16/32)^(-17) = 2^15
        assert_relative_eq!(threshold_gamma(-33.0, 2).unwrap(), 32768.0, max_relative = 1e-13);
    }

    #[test]
    fn weighted_examples() {
        assert_relative_eq!(threshold_gamma_weighted(-9.0, 1.0, 1).unwrap(), 384.0, max_relative = 1e-13);
        // 10 w^2 - 26 w + 4 = 0 at p = -1, q = 11, l = 1
        let w: f64 = (26.0 - (26.0f64 * 26.0 - 160.0).sqrt()) / 20.0;
        let u = w.powf(-0.25);
        let expect = 2f64.powi(-11) * (u * u + 1.0 / (u * u)).powi(10) * (u.powi(4) - 1.0);
        let got = threshold_gamma_weighted(-1.0, 11.0, 1).unwrap();
        assert_relative_eq!(got, expect, max_relative = 1e-12);
        assert!((got - 95.2).abs() < 0.1);
        assert!(matches!(threshold_gamma_weighted(-1.0, 5.0, 1), Err(Error::UnsupportedRegion(_))));
    }

    #[test]
    fn index_zero_rejected() {
        assert!(threshold_gamma(-20.0, 0).is_err());
    }
}
