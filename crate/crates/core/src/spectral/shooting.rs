//! Shooting oracle for `−y'' = μy` on `[−1, 0) ∪ (0, 1]` with `y(±1) = 0`.
//!
//! The defect elements are the solutions vanishing at `±1`:
//! `e₊₊ = sin √i(x − 1)` on `[0, 1]`, `e₊₋ = −sin √i(x + 1)` on `[−1, 0]`,
//! and `e₋₊`, `e₋₋` likewise with `−i`. Here everything is obtained by
//! numerical integration from the Dirichlet ends, and extensions are compared
//! through the boundary data `(y(0+), y'(0+), y(0−), y'(0−))`.

use nalgebra::Matrix4;

use super::SearchBox;
use crate::error::require_upper;
use crate::extensions::ExtensionParams;
use crate::ode::Dopri5;
use crate::sqrt::sqrt_upper;
use crate::{Error, Result, C64, I};

fn ode() -> Dopri5 {
    Dopri5 { rtol: 1e-13, atol: 1e-15, ..Dopri5::default() }
}

/// `(y(0), y'(0))` for `−y'' = λy` with `y(end) = 0`, `y'(end) = slope`.
fn shoot(lambda: C64, end: f64, slope: C64) -> Result<[C64; 2]> {
    let p = ode().integrate(
        |_, y: &[C64; 2]| [y[1], -lambda * y[0]],
        end,
        0.0,
        [C64::new(0.0, 0.0), slope],
    )?;
    let s = p.log_scale.exp();
    Ok([p.state[0] * s, p.state[1] * s])
}

/// Boundary data at `0±` of a function supported on one side.
fn data_plus(v: [C64; 2]) -> [C64; 4] {
    [v[0], v[1], C64::new(0.0, 0.0), C64::new(0.0, 0.0)]
}

fn data_minus(v: [C64; 2]) -> [C64; 4] {
    [C64::new(0.0, 0.0), C64::new(0.0, 0.0), v[0], v[1]]
}

/// Boundary data of `e₊₊, e₊₋, e₋₊, e₋₋` from integration.
pub fn defect_basis_data() -> Result<[[C64; 4]; 4]> {
    let (wp, wm) = (sqrt_upper(I), sqrt_upper(-I));
    Ok([
        data_plus(shoot(I, 1.0, wp)?),
        data_minus(shoot(I, -1.0, -wp)?),
        data_plus(shoot(-I, 1.0, wm)?),
        data_minus(shoot(-I, -1.0, -wm)?),
    ])
}

fn combine(coeffs: &[C64; 4], basis: &[[C64; 4]; 4]) -> [C64; 4] {
    let mut out = [C64::new(0.0, 0.0); 4];
    for (c, b) in coeffs.iter().zip(basis) {
        for k in 0..4 {
            out[k] += c * b[k];
        }
    }
    out
}

/// Precomputed defect data; reusable across many `μ`.
#[derive(Debug, Clone)]
pub struct ShootingOracle {
    basis: [[C64; 4]; 4],
}

impl ShootingOracle {
    pub fn new() -> Result<Self> {
        Ok(Self { basis: defect_basis_data()? })
    }

    /// Columns: eigen-solutions on each side, then the spanning vectors of the extension.
    fn matching(&self, u: &ExtensionParams, mu: C64) -> Result<Matrix4<C64>> {
        let one = C64::new(1.0, 0.0);
        let yp = data_plus(shoot(mu, 1.0, one)?);
        let ym = data_minus(shoot(mu, -1.0, -one)?);
        let (d1, d2) = u.spanning_vectors();
        let b1 = combine(&d1.0, &self.basis);
        let b2 = combine(&d2.0, &self.basis);
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            m[(k, 0)] = yp[k];
            m[(k, 1)] = ym[k];
            m[(k, 2)] = -b1[k];
            m[(k, 3)] = -b2[k];
        }
        Ok(m)
    }

    /// Holomorphic in `μ`; vanishes exactly at eigenvalues of `A_U`.
    pub fn determinant(&self, u: &ExtensionParams, mu: C64) -> Result<C64> {
        Ok(self.matching(u, mu)?.determinant())
    }

    /// Smallest singular value of the column-normalized matching matrix.
    pub fn residual(&self, u: &ExtensionParams, mu: C64) -> Result<f64> {
        require_upper(mu, "shooting_residual")?;
        let mut m = self.matching(u, mu)?;
        for mut col in m.column_iter_mut() {
            let n = col.norm();
            if n > 0.0 {
                col /= C64::new(n, 0.0);
            }
        }
        let sv = m.singular_values();
        Ok(sv.min())
    }

    /// `s₊(μ)` from `sin √μ(x − 1) = u + c(e₊₊ − s₊ e₋₊)` with `u(0) = u'(0) = 0`.
    pub fn s_plus(&self, mu: C64) -> Result<C64> {
        require_upper(mu, "oracle s_plus")?;
        let [y, dy] = shoot(mu, 1.0, sqrt_upper(mu))?;
        let (a, b) = (self.basis[0], self.basis[2]);
        Ok((y * a[1] - dy * a[0]) / (y * b[1] - dy * b[0]))
    }

    /// Same decomposition on `[−1, 0]` against `e₊₋`, `e₋₋`.
    pub fn s_minus(&self, mu: C64) -> Result<C64> {
        require_upper(mu, "oracle s_minus")?;
        let [y, dy] = shoot(mu, -1.0, -sqrt_upper(mu))?;
        let (a, b) = (self.basis[1], self.basis[3]);
        Ok((y * a[3] - dy * a[2]) / (y * b[3] - dy * b[2]))
    }

    /// Zeros of [`Self::determinant`] in a box: grid scan of the residual for
    /// local minima, then Newton on the determinant.
    pub fn zeros(&self, u: &ExtensionParams, b: &SearchBox, spacing: f64) -> Result<Vec<C64>> {
        if !(spacing > 0.0) {
            return Err(Error::Invalid("grid spacing must be positive".into()));
        }
        let nx = ((b.re_max - b.re_min) / spacing).ceil() as usize + 1;
        let ny = ((b.im_max - b.im_min) / spacing).ceil() as usize + 1;
        let at = |i: usize, j: usize| {
            C64::new(
                b.re_min + (b.re_max - b.re_min) * i as f64 / (nx - 1) as f64,
                b.im_min + (b.im_max - b.im_min) * j as f64 / (ny - 1) as f64,
            )
        };
        let mut grid = vec![0.0; nx * ny];
        for i in 0..nx {
            for j in 0..ny {
                grid[i * ny + j] = self.residual(u, at(i, j))?;
            }
        }
        let mut found: Vec<C64> = Vec::new();
        for i in 0..nx {
            for j in 0..ny {
                let v = grid[i * ny + j];
                let mut is_min = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        let (a, c) = (i as i64 + di, j as i64 + dj);
                        if (di, dj) != (0, 0) && a >= 0 && c >= 0 && (a as usize) < nx && (c as usize) < ny {
                            is_min &= v <= grid[a as usize * ny + c as usize];
                        }
                    }
                }
                if !is_min {
                    continue;
                }
                if let Some(z) = self.newton(u, at(i, j))? {
                    if b.contains_with_slack(z, 0.0) && found.iter().all(|w| (w - z).norm() > 1e-8) {
                        found.push(z);
                    }
                }
            }
        }
        found.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(found)
    }

    fn newton(&self, u: &ExtensionParams, start: C64) -> Result<Option<C64>> {
        let mut z = start;
        for _ in 0..50 {
            if z.im <= 0.0 {
                return Ok(None);
            }
            let h = 1e-6 * z.norm().max(1.0);
            let f = self.determinant(u, z)?;
            let df = (self.determinant(u, z + h)? - self.determinant(u, z - h)?) / (2.0 * h);
            if df.norm() == 0.0 {
                return Ok(None);
            }
            let step = f / df;
            z -= step;
            if step.norm() < 1e-14 * z.norm().max(1.0) {
                break;
            }
        }
        Ok((z.im > 0.0 && self.residual(u, z)? < 1e-8).then_some(z))
    }
}

/// Smallest singular value of the boundary matching problem for `A_U` at `μ`.
pub fn shooting_residual(u: &ExtensionParams, mu: C64) -> Result<f64> {
    require_upper(mu, "shooting_residual")?;
    ShootingOracle::new()?.residual(u, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::degenerate_sl;

    #[test]
    fn basis_matches_sines() {
        let data = defect_basis_data().unwrap();
        let w = sqrt_upper(I);
        // e₊₊ = sin √i(x − 1): value −sin √i and slope √i cos √i at 0+
        assert!((data[0][0] + w.sin()).norm() < 1e-11);
        assert!((data[0][1] - w * w.cos()).norm() < 1e-11);
        // e₊₋ = −sin √i(x + 1): value −sin √i and slope −√i cos √i at 0−
        assert!((data[1][2] + w.sin()).norm() < 1e-11);
        assert!((data[1][3] + w * w.cos()).norm() < 1e-11);
    }

    #[test]
    fn oracle_agrees_with_closed_form() {
        let oracle = ShootingOracle::new().unwrap();
        let cd = degenerate_sl();
        for mu in [C64::new(0.0, 2.0), C64::new(3.0, 0.5), C64::new(-4.0, 1.5)] {
            let sp = cd.s_plus(mu).unwrap();
            assert!((oracle.s_plus(mu).unwrap() - sp).norm() < 1e-9);
            assert!((oracle.s_minus(mu).unwrap() - sp).norm() < 1e-9);
        }
    }

    #[test]
    fn empty_resolvent_member_is_singular_everywhere() {
        let u = ExtensionParams::new(0.0, 1.3, 0.0, 1.0, 0.0).unwrap();
        assert!(shooting_residual(&u, C64::new(1.0, 1.0)).unwrap() < 1e-8);
    }

    #[test]
    fn real_spectrum_member_is_regular() {
        let u = ExtensionParams::new(0.7, 0.0, 0.2, 0.0, 1.0).unwrap();
        assert!(shooting_residual(&u, C64::new(0.0, 2.0)).unwrap() > 0.01);
        assert!(shooting_residual(&u, C64::new(0.0, -2.0)).is_err());
    }
}
