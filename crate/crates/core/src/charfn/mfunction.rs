//! Titchmarsh–Weyl coefficients of `−f'' + q f = λ f` on the half-lines.
//!
//! On the truncated interval `[0, ±X]` the Weyl solution is replaced by the
//! solution vanishing at `±X`. It is integrated from the cap toward the origin,
//! so the square-integrable mode dominates and the integration is stable.
//! `M = −f(0)/f'(0)` for that solution.

use crate::ode::Dopri5;
use crate::{Error, Result, C64};

/// Real potential presets.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    Zero,
    Constant(f64),
    /// Piecewise constant with finite support: `value` on `[from, to)`,
    /// zero outside all steps. Overlapping steps add up.
    Steps(Vec<Step>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub from: f64,
    pub to: f64,
    pub value: f64,
}

impl Potential {
    pub fn steps(steps: Vec<Step>) -> Result<Self> {
        for s in &steps {
            if !(s.from < s.to) || !s.value.is_finite() || !s.from.is_finite() || !s.to.is_finite() {
                return Err(Error::Invalid(format!("bad potential step {s:?}")));
            }
        }
        Ok(Potential::Steps(steps))
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            Potential::Zero => 0.0,
            Potential::Constant(c) => *c,
            Potential::Steps(steps) => steps
                .iter()
                .filter(|s| x >= s.from && x < s.to)
                .map(|s| s.value)
                .sum(),
        }
    }

    /// Discontinuities strictly inside `(lo, hi)`.
    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = match self {
            Potential::Steps(steps) => steps
                .iter()
                .flat_map(|s| [s.from, s.to])
                .filter(|&p| p > lo && p < hi)
                .collect(),
            _ => Vec::new(),
        };
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Largest `|x|` where the potential is not constant at infinity.
    pub fn support_radius(&self) -> f64 {
        match self {
            Potential::Steps(steps) => steps
                .iter()
                .fold(0.0_f64, |m, s| m.max(s.from.abs()).max(s.to.abs())),
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Indefinite Sturm–Liouville expression `(sgn x)(−y'' + q y)` on ℝ, assumed
/// limit point at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmLiouvilleModel {
    pub potential: Potential,
    /// Initial truncation radius `X`.
    pub truncation: f64,
    /// Largest truncation tried while doubling.
    pub max_truncation: f64,
    pub rtol: f64,
    pub atol: f64,
}

impl SturmLiouvilleModel {
    pub const DEFAULT_TRUNCATION: f64 = 40.0;
    pub const DEFAULT_MAX_TRUNCATION: f64 = 320.0;

    pub fn new(potential: Potential) -> Self {
        Self {
            potential,
            truncation: Self::DEFAULT_TRUNCATION,
            max_truncation: Self::DEFAULT_MAX_TRUNCATION,
            rtol: 1e-10,
            atol: 1e-12,
        }
    }

    pub fn with_truncation(mut self, x: f64) -> Self {
        self.truncation = x;
        self.max_truncation = self.max_truncation.max(x);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.truncation > 0.0) || !self.truncation.is_finite() {
            return Err(Error::Invalid(format!("truncation must be positive, got {}", self.truncation)));
        }
        if !(self.rtol > 0.0) || !(self.atol > 0.0) {
            return Err(Error::Invalid("tolerances must be positive".into()));
        }
        if self.potential.support_radius() >= self.truncation {
            return Err(Error::Invalid(format!(
                "potential support {} reaches the truncation radius {}",
                self.potential.support_radius(),
                self.truncation
            )));
        }
        Ok(())
    }

    /// `M` from the Dirichlet cap at distance `x_cap`.
    pub fn truncated_m(&self, side: Side, mu: C64, x_cap: f64) -> Result<C64> {
        let (lambda, start, end) = match side {
            Side::Plus => (mu, x_cap, 0.0),
            Side::Minus => (-mu, -x_cap, 0.0),
        };
        let (lo, hi) = if start < end { (start, end) } else { (end, start) };
        let mut nodes = vec![start];
        let mut inner = self.potential.breakpoints(lo, hi);
        if start > end {
            inner.reverse();
        }
        nodes.extend(inner);
        nodes.push(end);

        let ode = Dopri5 { rtol: self.rtol, atol: self.atol * 1e-2, ..Dopri5::default() };
        let mut y = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        for w in nodes.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let q = self.potential.value(mid);
            let coef = C64::new(q, 0.0) - lambda;
            let end = ode.integrate(|_, v: &[C64; 2]| [v[1], coef * v[0]], w[0], w[1], y)?;
            y = end.state;
        }
        if y[1].norm() == 0.0 {
            return Err(Error::Numerical(format!("f'(0) vanished for mu = {mu}")));
        }
        Ok(-y[0] / y[1])
    }
}

/// Titchmarsh–Weyl coefficient `M_±(μ)`: `s_{±μ} − M_±(μ)c_{±μ}` is
/// square-integrable on `ℝ_±`.
///
/// Doubles the truncation from `X` until `|M_X − M_{2X}| < 10·(rtol·|M| + atol)`.
pub fn tw_mfunction(model: &SturmLiouvilleModel, side: Side, mu: C64) -> Result<C64> {
    if mu.im == 0.0 || !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::Domain(format!("m-function needs non-real mu, got {mu}")));
    }
    model.validate()?;
    let mut x = model.truncation;
    let mut m_x = model.truncated_m(side, mu, x)?;
    loop {
        let m_2x = model.truncated_m(side, mu, 2.0 * x)?;
        let delta = (m_x - m_2x).norm();
        if delta < 10.0 * (model.rtol * m_2x.norm() + model.atol) {
            return Ok(m_2x);
        }
        if 2.0 * x >= model.max_truncation {
            return Err(Error::Accuracy { mu, truncation: 2.0 * x, delta });
        }
        x *= 2.0;
        m_x = m_2x;
    }
}
