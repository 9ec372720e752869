//! Dormand-Prince 5(4) with the standard 4th-order dense output, for a
//! two-dimensional autonomous system.

use crate::error::{Error, Result};

pub(crate) type State = [f64; 2];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[inline]
fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Dense-output interpolant over one accepted step.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment {
    pub t0: f64,
    pub h: f64,
    pub y0: State,
    pub y1: State,
    rcont: [State; 5],
}

impl Segment {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn eval(&self, t: f64) -> State {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.rcont;
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        }
        out
    }
}

pub(crate) struct Dopri5<F> {
    f: F,
    pub rtol: f64,
    pub atol: f64,
    pub t: f64,
    pub y: State,
    k1: State,
    h: f64,
}

struct Trial {
    y1: State,
    k: [State; 7],
    err: f64,
}

impl<F> Dopri5<F>
where
    F: Fn(&State) -> Option<State>,
{
    pub fn new(f: F, t0: f64, y0: State, rtol: f64, atol: f64, h0: f64) -> Result<Self> {
        let k1 = f(&y0).ok_or(Error::StepFailure { tau: t0, step: 0.0 })?;
        Ok(Self {
            f,
            rtol,
            atol,
            t: t0,
            y: y0,
            k1,
            h: h0,
        })
    }

    pub fn rhs(&self, y: &State) -> Option<State> {
        (self.f)(y)
    }

    fn trial(&self, y: &State, k1: &State, h: f64) -> Option<Trial> {
        let f = &self.f;
        let k2 = f(&axpy(y, &[(A21, k1)], h))?;
        let k3 = f(&axpy(y, &[(A31, k1), (A32, &k2)], h))?;
        let k4 = f(&axpy(y, &[(A41, k1), (A42, &k2), (A43, &k3)], h))?;
        let k5 = f(&axpy(y, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)], h))?;
        let k6 = f(&axpy(y, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h))?;
        let y1 = axpy(y, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
        let k7 = f(&y1)?;
        if !(y1[0].is_finite() && y1[1].is_finite()) {
            return None;
        }
        let mut err = 0.0;
        for i in 0..2 {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sk = self.atol + self.rtol * y[i].abs().max(y1[i].abs());
            err += (e / sk) * (e / sk);
        }
        Some(Trial {
            y1,
            k: [*k1, k2, k3, k4, k5, k6, k7],
            err: (err / 2.0).sqrt(),
        })
    }

    /// A single step of exactly size `h` from `(t0, y0)`, without error control.
    /// Used to polish event times from an accepted grid point.
    pub fn fixed_step(&self, y0: &State, h: f64) -> Option<State> {
        if h == 0.0 {
            return Some(*y0);
        }
        let k1 = (self.f)(y0)?;
        self.trial(y0, &k1, h).map(|t| t.y1)
    }

    /// Takes one accepted step, never going past `t_stop`.
    pub fn step(&mut self, t_stop: f64) -> Result<Segment> {
        let mut rejected = false;
        loop {
            let remaining = t_stop - self.t;
            let mut h = self.h.min(remaining);
            let clipped = h == remaining;
            if h <= 16.0 * f64::EPSILON * self.t.abs().max(1.0) {
                if remaining > 0.0 && clipped {
                    // Land exactly on t_stop.
                    h = remaining;
                } else {
                    return Err(Error::StepFailure { tau: self.t, step: h });
                }
            }
            match self.trial(&self.y, &self.k1, h) {
                Some(tr) if tr.err <= 1.0 => {
                    let fac = if tr.err == 0.0 { 10.0 } else { (0.9 * tr.err.powf(-0.2)).clamp(0.2, 10.0) };
                    let fac = if rejected { fac.min(1.0) } else { fac };
                    if !clipped || fac < 1.0 {
                        self.h = h * fac;
                    }
                    let y0 = self.y;
                    let k = &tr.k;
                    let ydiff = [tr.y1[0] - y0[0], tr.y1[1] - y0[1]];
                    let bspl = [h * k[0][0] - ydiff[0], h * k[0][1] - ydiff[1]];
                    let mut r4 = [0.0; 2];
                    let mut r5 = [0.0; 2];
                    for i in 0..2 {
                        r4[i] = ydiff[i] - h * k[6][i] - bspl[i];
                        r5[i] = h
                            * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
                    }
                    let seg = Segment {
                        t0: self.t,
                        h,
                        y0,
                        y1: tr.y1,
                        rcont: [y0, ydiff, bspl, r4, r5],
                    };
                    self.t = if clipped { t_stop } else { self.t + h };
                    self.y = tr.y1;
                    self.k1 = k[6];
                    return Ok(seg);
                }
                Some(tr) => {
                    self.h = h * (0.9 * tr.err.powf(-0.2)).clamp(0.2, 1.0);
                    rejected = true;
                }
                None => {
                    self.h = h * 0.25;
                    rejected = true;
                }
            }
            if self.h < 1e-14 * self.t.abs().max(1.0) {
                return Err(Error::StepFailure { tau: self.t, step: self.h });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let f = |y: &State| Some([y[1], -y[0]]);
        let mut ode = Dopri5::new(f, 0.0, [1.0, 0.0], 1e-12, 1e-12, 0.1).unwrap();
        let mut segs = Vec::new();
        while ode.t < 10.0 {
            segs.push(ode.step(10.0).unwrap());
        }
        assert_eq!(ode.t, 10.0);
        assert!((ode.y[0] - 10f64.cos()).abs() < 1e-10);
        for s in &segs {
            let tm = s.t0 + 0.37 * s.h;
            let y = s.eval(tm);
            assert!((y[0] - tm.cos()).abs() < 1e-9, "dense output at {tm}");
        }
    }

    #[test]
    fn fixed_step_matches_fifth_order() {
        let f = |y: &State| Some([y[1], -y[0]]);
        let ode = Dopri5::new(f, 0.0, [1.0, 0.0], 1e-12, 1e-12, 0.1).unwrap();
        let y = ode.fixed_step(&[1.0, 0.0], 0.01).unwrap();
        assert!((y[0] - 0.01f64.cos()).abs() < 1e-15);
    }
}
