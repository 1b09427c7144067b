//! Non-real spectrum of `A_U` through the determinant
//! `F(μ) = r e^{i(φ+ξ)} + s₊(μ) − r e^{i(φ−ξ)} s₊(μ)s₋(μ) − e^{2iφ} s₋(μ)`,
//! which vanishes at `μ ∈ ℂ₊` exactly when the boundary subspace of `A_U`
//! meets the defect plane `L_μ`.
//!
//! Only zeros in the upper half-plane are computed; the lower half-plane
//! spectrum is their mirror image.

pub mod roots;
pub mod shooting;

use crate::charfn::{approx_equal_test, default_samples, ApproxEqualResult, CharacteristicData, APPROX_TOL};
use crate::error::require_upper;
use crate::extensions::{family_from, EmptyResolventFamily, ExtensionParams};
use crate::{Error, Result, C64};

pub use roots::{find_zeros, RootOptions, RootReport};
pub use shooting::{shooting_residual, ShootingOracle};

/// `|F|` below this on every probe sample means `F ≡ 0`.
pub const IDENTICALLY_ZERO_TOL: f64 = 1e-9;

/// `F(μ)` from the values `s₊(μ)`, `s₋(μ)`.
pub fn det_f_values(u: &ExtensionParams, sp: C64, sm: C64) -> C64 {
    let (p, x, r) = (u.phi, u.xi, u.r);
    C64::from_polar(r, p + x) + sp - C64::from_polar(r, p - x) * sp * sm - C64::from_polar(1.0, 2.0 * p) * sm
}

pub fn det_f(u: &ExtensionParams, cd: &CharacteristicData, mu: C64) -> Result<C64> {
    require_upper(mu, "det_f")?;
    let (sp, sm) = cd.eval(mu)?;
    Ok(det_f_values(u, sp, sm))
}

/// Closed rectangle `[re_min, re_max] × [im_min, im_max]·i` in `ℂ₊`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl SearchBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if ![re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()) {
            return Err(Error::Invalid("search box bounds must be finite".into()));
        }
        if !(re_min < re_max && im_min < im_max) {
            return Err(Error::Invalid("search box is degenerate".into()));
        }
        if !(im_min > 0.0) {
            return Err(Error::Invalid(format!("search box must lie in the upper half-plane, im_min = {im_min}")));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    pub fn center(&self) -> C64 {
        C64::new(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
    }

    pub fn diameter(&self) -> f64 {
        (self.re_max - self.re_min).hypot(self.im_max - self.im_min)
    }

    pub fn contains_with_slack(&self, z: C64, slack: f64) -> bool {
        z.re >= self.re_min - slack
            && z.re <= self.re_max + slack
            && z.im >= self.im_min - slack
            && z.im <= self.im_max + slack
    }

    /// `n × n` grid including the corners.
    pub fn grid(&self, n: usize) -> Vec<C64> {
        let n = n.max(2);
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let t = i as f64 / (n - 1) as f64;
                let s = j as f64 / (n - 1) as f64;
                out.push(C64::new(
                    self.re_min + t * (self.re_max - self.re_min),
                    self.im_min + s * (self.im_max - self.im_min),
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `F ≢ 0`: the non-real spectrum is a discrete set.
    DiscreteSet,
    /// `F ≡ 0`: every `μ ∈ ℂ` is an eigenvalue.
    IdenticallyZeroDeterminant,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::DiscreteSet => "DiscreteSet",
            Verdict::IdenticallyZeroDeterminant => "IdenticallyZeroDeterminant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub value: C64,
    /// `|F(value)|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub eigenvalues: Vec<Eigenvalue>,
    pub winding_total: i64,
    pub verdict: Verdict,
    /// `(μ, |F(μ)|)` on a 5×5 grid over the search box.
    pub samples: Vec<(C64, f64)>,
}

/// Characteristic data with the equivalence test and `s±` on a fixed 5×5
/// grid over `[0.5, 4.5] × [0.5, 4.5]i` evaluated once.
#[derive(Debug, Clone)]
pub struct ResolventProbe {
    cd: CharacteristicData,
    equivalence: ApproxEqualResult,
    grid: Vec<(C64, C64)>,
}

impl ResolventProbe {
    pub fn new(cd: &CharacteristicData) -> Result<Self> {
        Self::with_tol(cd, APPROX_TOL)
    }

    /// Equivalence test with a custom residual tolerance.
    pub fn with_tol(cd: &CharacteristicData, tol: f64) -> Result<Self> {
        let equivalence = approx_equal_test(cd, &default_samples(), tol)?;
        let grid = SearchBox { re_min: 0.5, re_max: 4.5, im_min: 0.5, im_max: 4.5 }
            .grid(5)
            .into_iter()
            .map(|mu| cd.eval(mu))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cd: cd.clone(), equivalence, grid })
    }

    pub fn chardata(&self) -> &CharacteristicData {
        &self.cd
    }

    pub fn equivalence(&self) -> ApproxEqualResult {
        self.equivalence
    }

    /// `max |F|` over the probe grid.
    pub fn sampled_max(&self, u: &ExtensionParams) -> f64 {
        self.grid
            .iter()
            .map(|&(sp, sm)| det_f_values(u, sp, sm).norm())
            .fold(0.0, f64::max)
    }

    /// Structural test (`r = 0` and the phase condition) cross-checked by sampling.
    pub fn verdict(&self, u: &ExtensionParams) -> Result<Verdict> {
        let structural = family_from(self.equivalence).contains(u);
        let sampled = self.sampled_max(u) < IDENTICALLY_ZERO_TOL;
        if structural != sampled {
            return Err(Error::Internal(format!(
                "structural empty-resolvent test says {structural}, sampling says {sampled} (max |F| = {:.3e})",
                self.sampled_max(u)
            )));
        }
        Ok(if structural { Verdict::IdenticallyZeroDeterminant } else { Verdict::DiscreteSet })
    }

    pub fn nonreal_eigenvalues(&self, u: &ExtensionParams, b: &SearchBox) -> Result<SpectralReport> {
        self.nonreal_eigenvalues_with(u, b, &RootOptions::default())
    }

    pub fn nonreal_eigenvalues_with(
        &self,
        u: &ExtensionParams,
        b: &SearchBox,
        opts: &RootOptions,
    ) -> Result<SpectralReport> {
        let verdict = self.verdict(u)?;
        let samples = b
            .grid(5)
            .into_iter()
            .map(|mu| Ok((mu, det_f(u, &self.cd, mu)?.norm())))
            .collect::<Result<Vec<_>>>()?;
        if verdict == Verdict::IdenticallyZeroDeterminant {
            return Ok(SpectralReport { eigenvalues: Vec::new(), winding_total: 0, verdict, samples });
        }
        let rep = find_zeros(|mu| det_f(u, &self.cd, mu), b, opts)?;
        let eigenvalues = rep
            .zeros
            .iter()
            .map(|&z| Ok(Eigenvalue { value: z, residual: det_f(u, &self.cd, z)?.norm() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectralReport { eigenvalues, winding_total: rep.winding, verdict, samples })
    }
}

pub fn empty_resolvent_verdict(u: &ExtensionParams, cd: &CharacteristicData) -> Result<Verdict> {
    ResolventProbe::new(cd)?.verdict(u)
}

pub fn nonreal_eigenvalues(u: &ExtensionParams, cd: &CharacteristicData, b: &SearchBox) -> Result<SpectralReport> {
    ResolventProbe::new(cd)?.nonreal_eigenvalues(u, b)
}

/// Whether `F` vanishes identically for some extension of this data.
pub fn has_empty_resolvent_members(cd: &CharacteristicData) -> Result<bool> {
    let eq = approx_equal_test(cd, &default_samples(), APPROX_TOL)?;
    Ok(family_from(eq) != EmptyResolventFamily::Empty)
}
