//! Zeros of a holomorphic function in a rectangle by the argument principle.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, TAU};

use super::SearchBox;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Required `|f|` at an accepted zero.
    pub polish_tol: f64,
    /// Boxes smaller than this are not split further.
    pub min_box: f64,
    /// Initial segments per edge.
    pub edge_segments: usize,
    /// `|f|` below this at a contour node counts as a zero on the contour.
    pub contour_zero: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { polish_tol: 1e-10, min_box: 1e-6, edge_segments: 16, contour_zero: 1e-13 }
    }
}

#[derive(Debug, Clone)]
pub struct RootReport {
    pub zeros: Vec<C64>,
    pub winding: i64,
    /// Number of function evaluations.
    pub evaluations: usize,
}

enum Trouble {
    OnContour,
    Fail(Error),
}

impl From<Error> for Trouble {
    fn from(e: Error) -> Self {
        Trouble::Fail(e)
    }
}

struct Finder<'a, F> {
    f: F,
    opts: &'a RootOptions,
    cache: RefCell<HashMap<(u64, u64), C64>>,
}

const SPLITS: [f64; 4] = [0.5173, 0.4689, 0.5419, 0.4417];

impl<F: Fn(C64) -> Result<C64>> Finder<'_, F> {
    fn eval(&self, z: C64) -> Result<C64> {
        let key = (z.re.to_bits(), z.im.to_bits());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(*v);
        }
        let v = (self.f)(z)?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numerical(format!("non-finite function value at {z}")));
        }
        self.cache.borrow_mut().insert(key, v);
        Ok(v)
    }

    fn node(&self, z: C64) -> std::result::Result<C64, Trouble> {
        let v = self.eval(z)?;
        if v.norm() < self.opts.contour_zero {
            return Err(Trouble::OnContour);
        }
        Ok(v)
    }

    /// Change of `arg f` along the straight segment `a → b`.
    fn segment(&self, a: C64, fa: C64, b: C64, fb: C64, depth: u32) -> std::result::Result<f64, Trouble> {
        let d = (fb / fa).arg();
        let m = 0.5 * (a + b);
        let fm = self.node(m)?;
        let d1 = (fm / fa).arg();
        let d2 = (fb / fm).arg();
        if d.abs() < FRAC_PI_4 && d1.abs() < FRAC_PI_4 && d2.abs() < FRAC_PI_4 && (d1 + d2 - d).abs() < 1e-6 {
            return Ok(d1 + d2);
        }
        if depth >= 48 {
            return Err(Trouble::Fail(Error::Numerical(format!(
                "argument tracking did not resolve near {m}"
            ))));
        }
        Ok(self.segment(a, fa, m, fm, depth + 1)? + self.segment(m, fm, b, fb, depth + 1)?)
    }

    fn winding(&self, b: &SearchBox) -> std::result::Result<i64, Trouble> {
        let corners = [
            C64::new(b.re_min, b.im_min),
            C64::new(b.re_max, b.im_min),
            C64::new(b.re_max, b.im_max),
            C64::new(b.re_min, b.im_max),
        ];
        let n = self.opts.edge_segments.max(1);
        let mut total = 0.0;
        for k in 0..4 {
            let (p, q) = (corners[k], corners[(k + 1) % 4]);
            let mut za = p;
            let mut fa = self.node(za)?;
            for s in 1..=n {
                let zb = if s == n { q } else { p + (q - p) * (s as f64 / n as f64) };
                let fb = self.node(zb)?;
                total += self.segment(za, fa, zb, fb, 0)?;
                za = zb;
                fa = fb;
            }
        }
        let w = total / TAU;
        let rounded = w.round();
        if (w - rounded).abs() > 1e-3 {
            return Err(Trouble::Fail(Error::Numerical(format!("non-integer winding number {w}"))));
        }
        Ok(rounded as i64)
    }

    fn newton(&self, b: &SearchBox) -> Result<Option<C64>> {
        let mut z = b.center();
        let slack = 1e-9 * b.diameter();
        for _ in 0..60 {
            let fz = self.eval(z)?;
            let h = 1e-6 * z.norm().max(1.0).min(b.diameter().max(1e-3));
            let df = (self.eval(z + h)? - self.eval(z - h)?) / (2.0 * h);
            if df.norm() == 0.0 {
                return Ok(None);
            }
            let step = fz / df;
            z -= step;
            if z.im <= 0.0 || !b.contains_with_slack(z, 0.5 * b.diameter()) {
                return Ok(None);
            }
            if step.norm() < 1e-15 * z.norm().max(1.0) {
                break;
            }
        }
        let fz = self.eval(z)?;
        Ok((fz.norm() < self.opts.polish_tol && b.contains_with_slack(z, slack)).then_some(z))
    }

    fn split(&self, b: &SearchBox, t: f64) -> std::result::Result<Vec<(SearchBox, i64)>, Trouble> {
        let xm = b.re_min + t * (b.re_max - b.re_min);
        let ym = b.im_min + t * (b.im_max - b.im_min);
        let quads = [
            SearchBox { re_min: b.re_min, re_max: xm, im_min: b.im_min, im_max: ym },
            SearchBox { re_min: xm, re_max: b.re_max, im_min: b.im_min, im_max: ym },
            SearchBox { re_min: b.re_min, re_max: xm, im_min: ym, im_max: b.im_max },
            SearchBox { re_min: xm, re_max: b.re_max, im_min: ym, im_max: b.im_max },
        ];
        quads.into_iter().map(|q| Ok((q, self.winding(&q)?))).collect()
    }

    fn solve(&self, b: &SearchBox, count: i64, out: &mut Vec<C64>) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        if count < 0 {
            return Err(Error::Numerical(format!("negative winding number {count} (pole inside the box?)")));
        }
        if count == 1 {
            if let Some(z) = self.newton(b)? {
                out.push(z);
                return Ok(());
            }
        }
        if b.diameter() < self.opts.min_box {
            return Err(Error::Numerical(format!(
                "{count} zero(s) not separated in a box of diameter {:.2e} around {}",
                b.diameter(),
                b.center()
            )));
        }
        for t in SPLITS {
            match self.split(b, t) {
                Ok(children) => {
                    let sum: i64 = children.iter().map(|c| c.1).sum();
                    if sum != count {
                        return Err(Error::Numerical(format!(
                            "winding mismatch: children sum to {sum}, parent has {count}"
                        )));
                    }
                    for (child, n) in children {
                        self.solve(&child, n, out)?;
                    }
                    return Ok(());
                }
                Err(Trouble::OnContour) => continue,
                Err(Trouble::Fail(e)) => return Err(e),
            }
        }
        Err(Error::Numerical("every subdivision met a zero on its contour".into()))
    }
}

/// All zeros of `f` inside `b`, assumed simple; `f` must be holomorphic on a
/// neighbourhood of the closed box and non-vanishing on its boundary.
pub fn find_zeros<F>(f: F, b: &SearchBox, opts: &RootOptions) -> Result<RootReport>
where
    F: Fn(C64) -> Result<C64>,
{
    let finder = Finder { f, opts, cache: RefCell::new(HashMap::new()) };
    let winding = match finder.winding(b) {
        Ok(w) => w,
        Err(Trouble::OnContour) => {
            return Err(Error::Numerical("the function vanishes on the search box boundary".into()))
        }
        Err(Trouble::Fail(e)) => return Err(e),
    };
    let mut zeros = Vec::new();
    finder.solve(b, winding, &mut zeros)?;
    if zeros.len() as i64 != winding {
        return Err(Error::Numerical(format!(
            "found {} zeros but the winding number is {winding}",
            zeros.len()
        )));
    }
    zeros.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let evaluations = finder.cache.borrow().len();
    Ok(RootReport { zeros, winding, evaluations })
}
