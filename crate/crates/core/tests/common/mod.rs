//! Independent oracles: plain bisection and tanh-sinh quadrature straight on
//! the energy-chart integral, sharing nothing with the library's charts.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `u_tau^2` as a function of `u` on the level `E`:
/// `(q (E + c u^(2p)))^(1/q) - u^2 - u^-2`, `c = 2^q gamma / p`.
pub struct Level {
    pub p: f64,
    pub q: f64,
    pub gamma: f64,
    pub energy: f64,
}

impl Level {
    fn c(&self) -> f64 {
        2f64.powf(self.q) * self.gamma / self.p
    }

    pub fn speed2(&self, u: f64) -> f64 {
        let inner = self.q * (self.energy + self.c() * u.powf(2.0 * self.p));
        inner.max(0.0).powf(1.0 / self.q) - u * u - 1.0 / (u * u)
    }

    pub fn speed2_slope(&self, u: f64) -> f64 {
        let inner = self.q * (self.energy + self.c() * u.powf(2.0 * self.p));
        inner.powf(1.0 / self.q - 1.0) * 2.0 * self.p * self.c() * u.powf(2.0 * self.p - 1.0) - 2.0 * u
            + 2.0 / u.powi(3)
    }
}

pub fn energy(p: f64, q: f64, gamma: f64, u: f64) -> f64 {
    (u * u + 1.0 / (u * u)).powf(q) / q - 2f64.powf(q) * gamma / p * u.powf(2.0 * p)
}

pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    assert!(fa * f(b) <= 0.0, "bisection needs a sign change on [{a}, {b}]");
    for _ in 0..2000 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (f(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Root of `u^(2-2p) - u^(-2-2p) - 2^q gamma (u^2 + u^-2)^(1-q)` on `(1, inf)`.
pub fn u_gamma(p: f64, q: f64, gamma: f64) -> f64 {
    let f = |u: f64| {
        u.powf(2.0 - 2.0 * p) - u.powf(-2.0 - 2.0 * p) - 2f64.powf(q) * gamma * (u * u + 1.0 / (u * u)).powf(1.0 - q)
    };
    let mut hi = 2.0;
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    bisect(f, 1.0, hi)
}

pub fn turning(p: f64, q: f64, gamma: f64, e: f64) -> (f64, f64) {
    let ug = u_gamma(p, q, gamma);
    let f = |u: f64| energy(p, q, gamma, u) - e;
    let mut lo = ug / 2.0;
    while f(lo) < 0.0 {
        lo /= 2.0;
    }
    let mut hi = ug * 2.0;
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    (bisect(f, lo, ug), bisect(f, ug, hi))
}

/// `(gamma, E)` from the turning points: both ends lie on the same level.
pub fn gamma_energy(p: f64, q: f64, um: f64, up: f64) -> (f64, f64) {
    let w = |u: f64| (u * u + 1.0 / (u * u)).powf(q) / q;
    let c = (w(up) - w(um)) / (up.powf(2.0 * p) - um.powf(2.0 * p));
    (c * p / 2f64.powf(q), w(um) - c * um.powf(2.0 * p))
}

/// Tanh-sinh on `[a, b]`, halving the step until two levels agree.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let node = |t: f64| {
        let s = 0.5 * PI * t.sinh();
        let x = s.tanh();
        let w = 0.5 * PI * t.cosh() / s.cosh().powi(2);
        (x, w)
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = f(mid) * 0.5 * PI;
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let (x, w) = node(k as f64 * h);
        sum += w * (f(mid + half * x) + f(mid - half * x));
        k += 1;
    }
    let mut prev = sum * h * half;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let (x, w) = node(k as f64 * h);
            sum += w * (f(mid + half * x) + f(mid - half * x));
            k += 2;
        }
        let cur = sum * h * half;
        if (cur - prev).abs() < tol * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// `Theta = int du / sqrt(u_tau^2)` between the turning points, after
/// `u = mid - rad cos(psi)`. The integrand tends to
/// `sqrt(2 rad / |slope|)` at either end; that value is used where the
/// difference `u_tau^2` has lost its digits.
pub fn theta_direct(p: f64, q: f64, gamma: f64, e: f64) -> f64 {
    let (um, up) = turning(p, q, gamma, e);
    let level = Level { p, q, gamma, energy: e };
    let mid = 0.5 * (um + up);
    let rad = 0.5 * (up - um);
    let left = (2.0 * rad / level.speed2_slope(um).abs()).sqrt();
    let right = (2.0 * rad / level.speed2_slope(up).abs()).sqrt();
    let f = |psi: f64| {
        if psi < 1e-5 {
            return left;
        }
        if PI - psi < 1e-5 {
            return right;
        }
        let u = mid - rad * psi.cos();
        let v = level.speed2(u);
        if v <= 0.0 {
            return if psi < 0.5 * PI { left } else { right };
        }
        rad * psi.sin() / v.sqrt()
    };
    tanh_sinh(f, 0.0, PI, 1e-13)
}

/// The energy at `e_star + frac * (e_star scale)`, `e_star` from the oracle.
pub fn energy_above_min(p: f64, q: f64, gamma: f64, frac: f64) -> f64 {
    let e_star = energy(p, q, gamma, u_gamma(p, q, gamma));
    e_star + frac * e_star.abs().max(1.0)
}
