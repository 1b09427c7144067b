//! Dormand–Prince 5(4) with complex state.
//!
//! The Sturm–Liouville solutions used here grow like `exp(Im √λ · x)`, so the
//! integrator optionally rescales the state whenever it gets large and reports
//! the accumulated log-scale. Callers that only need ratios of components can
//! ignore the scale.

use crate::{Error, Result, C64};

// Butcher tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
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
// Error coefficients: 5th order minus embedded 4th order.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const RESCALE_ABOVE: f64 = 1e100;

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Keep the state bounded by dividing through by its norm. Only valid for
    /// linear right-hand sides.
    pub rescale: bool,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-14,
            max_steps: 2_000_000,
            rescale: true,
        }
    }
}

/// End state of an integration. The true solution is `state · exp(log_scale)`.
#[derive(Debug, Clone, Copy)]
pub struct Endpoint<const N: usize> {
    pub state: [C64; N],
    pub log_scale: f64,
    pub steps: usize,
}

fn axpy<const N: usize>(y: &[C64; N], h: f64, terms: &[(f64, &[C64; N])]) -> [C64; N] {
    let mut out = *y;
    for (c, k) in terms {
        let w = h * c;
        for i in 0..N {
            out[i] += k[i] * w;
        }
    }
    out
}

fn max_norm<const N: usize>(y: &[C64; N]) -> f64 {
    y.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
}

impl Dopri5 {
    pub fn with_rtol(mut self, rtol: f64) -> Self {
        self.rtol = rtol;
        self
    }

    /// Integrate `y' = f(x, y)` from `x0` to `x1` (either direction).
    pub fn integrate<const N: usize, F>(
        &self,
        mut f: F,
        x0: f64,
        x1: f64,
        y0: [C64; N],
    ) -> Result<Endpoint<N>>
    where
        F: FnMut(f64, &[C64; N]) -> [C64; N],
    {
        let span = x1 - x0;
        if span == 0.0 {
            return Ok(Endpoint { state: y0, log_scale: 0.0, steps: 0 });
        }
        let dir = span.signum();
        let mut x = x0;
        let mut y = y0;
        let mut log_scale = 0.0;
        let mut k1 = f(x, &y);
        let mut h = initial_step(&mut f, x, &y, &k1, dir, span.abs(), self);
        let mut steps = 0usize;
        let mut rejected_last = false;

        while (x1 - x) * dir > 0.0 {
            if steps >= self.max_steps {
                return Err(Error::Numerical(format!(
                    "integrator exceeded {} steps at x = {x}",
                    self.max_steps
                )));
            }
            let remaining = (x1 - x).abs();
            let last = h >= remaining;
            let hs = if last { remaining * dir } else { h * dir };

            let k2 = f(x + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
            let k3 = f(x + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(
                x + C4 * hs,
                &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
            );
            let k5 = f(
                x + C5 * hs,
                &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = f(
                x + hs,
                &axpy(
                    &y,
                    hs,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                ),
            );
            let y_new = axpy(
                &y,
                hs,
                &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
            );
            let x_new = if last { x1 } else { x + hs };
            let k7 = f(x_new, &y_new);
            steps += 1;

            let mut err = 0.0;
            for i in 0..N {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7)
                    * hs;
                let sc = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
                err += (e.norm() / sc).powi(2);
            }
            let err = (err / N as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::Numerical(format!("non-finite state at x = {x}")));
            }

            if err <= 1.0 {
                x = x_new;
                y = y_new;
                k1 = k7;
                if self.rescale {
                    let m = max_norm(&y);
                    if m > RESCALE_ABOVE {
                        let inv = 1.0 / m;
                        for v in y.iter_mut() {
                            *v *= inv;
                        }
                        for v in k1.iter_mut() {
                            *v *= inv;
                        }
                        log_scale += m.ln();
                    }
                }
                let mut fac = 0.9 * err.powf(-0.2);
                if rejected_last {
                    fac = fac.min(1.0);
                }
                h = hs.abs() * fac.clamp(0.2, 10.0);
                rejected_last = false;
            } else {
                h = hs.abs() * (0.9 * err.powf(-0.2)).max(0.2);
                rejected_last = true;
                if h < 1e-14 * (1.0 + x.abs()) {
                    return Err(Error::Numerical(format!("step size underflow at x = {x}")));
                }
            }
        }
        Ok(Endpoint { state: y, log_scale, steps })
    }
}

fn initial_step<const N: usize, F>(
    f: &mut F,
    x: f64,
    y: &[C64; N],
    k1: &[C64; N],
    dir: f64,
    span: f64,
    opts: &Dopri5,
) -> f64
where
    F: FnMut(f64, &[C64; N]) -> [C64; N],
{
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..N {
        let sc = opts.atol + opts.rtol * y[i].norm();
        d0 += (y[i].norm() / sc).powi(2);
        d1 += (k1[i].norm() / sc).powi(2);
    }
    let (d0, d1) = ((d0 / N as f64).sqrt(), (d1 / N as f64).sqrt());
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let y1 = axpy(y, h0 * dir, &[(1.0, k1)]);
    let k2 = f(x + h0 * dir, &y1);
    let mut d2 = 0.0;
    for i in 0..N {
        let sc = opts.atol + opts.rtol * y[i].norm();
        d2 += ((k2[i] - k1[i]).norm() / sc).powi(2);
    }
    let d2 = (d2 / N as f64).sqrt() / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}
