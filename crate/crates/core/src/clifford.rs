//! The complex Clifford algebra `Cl₂(J, R) = span{I, J, R, JR}` on the
//! boundary model, and the C-symmetries `C_{χ,ω}` it contains.
//!
//! `J` and `R` act by the same 2×2 matrix on both defect blocks, so every
//! element of the algebra does too. In block form `J ↦ σ_z`, `R ↦ σ_x` and
//! `iJR ↦ −σ_y`; the nontrivial fundamental symmetries are exactly the unit
//! vectors `α₁J + α₂R + α₃·iJR` with real `α`.

use std::f64::consts::TAU;

use nalgebra::Matrix4;

use crate::boundary_space::SymmetryMatrix;
use crate::{Error, Result, C64, I};

const ALG_TOL: f64 = 1e-12;
/// Eigenvalue floor for `JC > 0`.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// `α₀I + α₁J + α₂R + α₃JR`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordElement {
    pub coeffs: [C64; 4],
}

fn basis_matrices() -> [SymmetryMatrix; 4] {
    let j = SymmetryMatrix::j();
    let r = SymmetryMatrix::r();
    [SymmetryMatrix::identity(), j, r, j * r]
}

impl CliffordElement {
    pub const fn new(coeffs: [C64; 4]) -> Self {
        Self { coeffs }
    }

    pub fn real(a: [f64; 4]) -> Self {
        Self { coeffs: a.map(|v| C64::new(v, 0.0)) }
    }

    pub fn identity() -> Self {
        Self::real([1.0, 0.0, 0.0, 0.0])
    }
    pub fn j() -> Self {
        Self::real([0.0, 1.0, 0.0, 0.0])
    }
    pub fn r() -> Self {
        Self::real([0.0, 0.0, 1.0, 0.0])
    }
    pub fn jr() -> Self {
        Self::real([0.0, 0.0, 0.0, 1.0])
    }

    /// `α₁J + α₂R + α₃·iJR`.
    pub fn from_axis(alpha: [f64; 3]) -> Self {
        Self::new([
            C64::new(0.0, 0.0),
            C64::new(alpha[0], 0.0),
            C64::new(alpha[1], 0.0),
            I * alpha[2],
        ])
    }

    /// Real axis `(α₁, α₂, α₃)` when the element has the form `α₁J + α₂R + α₃·iJR`
    /// with real coefficients (not necessarily normalized).
    pub fn axis(&self) -> Option<[f64; 3]> {
        let [c0, c1, c2, c3] = self.coeffs;
        let imag_junk = c0.norm() + c1.im.abs() + c2.im.abs() + c3.re.abs();
        (imag_junk < ALG_TOL).then_some([c1.re, c2.re, c3.im])
    }

    pub fn as_matrix(&self) -> SymmetryMatrix {
        let mut m = Matrix4::zeros();
        for (c, b) in self.coeffs.iter().zip(basis_matrices()) {
            m += b.0 * *c;
        }
        SymmetryMatrix(m)
    }

    /// Project a 4×4 matrix onto the algebra. The basis is orthogonal for the
    /// Frobenius product with `‖B‖² = 4`; the second value is the residual of
    /// the projection.
    pub fn from_matrix(m: &SymmetryMatrix) -> (Self, f64) {
        let coeffs = basis_matrices().map(|b| (b.0.adjoint() * m.0).trace() / 4.0);
        let e = Self { coeffs };
        let residual = e.as_matrix().max_abs_diff(m);
        (e, residual)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_matrix(&(self.as_matrix() * other.as_matrix())).0
    }
}

/// `M² = I`, `M = M*` and `M ≠ ±I`.
pub fn is_fundamental_symmetry(e: &CliffordElement) -> bool {
    let m = e.as_matrix();
    let id = SymmetryMatrix::identity();
    let involution = (m * m).max_abs_diff(&id) < ALG_TOL;
    let selfadjoint = m.adjoint().max_abs_diff(&m) < ALG_TOL;
    let trivial = m.max_abs_diff(&id) < ALG_TOL
        || m.max_abs_diff(&(C64::new(-1.0, 0.0) * id)) < ALG_TOL;
    involution && selfadjoint && !trivial
}

/// A fundamental symmetry `g` of the algebra with `fg + gf = 0`.
///
/// Works on the real axis vector `α`: the partner is the unit vector in the
/// plane of `α` and the `R` axis that is orthogonal to `α` and leans toward
/// `R`. When `α` is within 30° of `±R` the `J` axis is used instead.
pub fn anticommuting_partner(f: &CliffordElement) -> Result<CliffordElement> {
    if !is_fundamental_symmetry(f) {
        return Err(Error::Domain("anticommuting_partner needs a fundamental symmetry".into()));
    }
    let a = f
        .axis()
        .ok_or_else(|| Error::Internal("fundamental symmetry without a real axis".into()))?;
    let reference = if a[1].abs() > 0.866 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dot: f64 = (0..3).map(|k| a[k] * reference[k]).sum();
    let mut b: [f64; 3] = std::array::from_fn(|k| reference[k] - dot * a[k]);
    // second Gram–Schmidt pass
    let dot2: f64 = (0..3).map(|k| a[k] * b[k]).sum();
    for k in 0..3 {
        b[k] -= dot2 * a[k];
    }
    let n = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(CliffordElement::from_axis(b.map(|v| v / n)))
}

/// Parameters of a C-symmetry commuting with `S`.
///
/// The restriction to `𝔑_i` is `𝒞_{χ₁,ω₁}` and to `𝔑_{-i}` is `𝒞_{χ₂,ω₂}`,
/// where `𝒞_{χ,ω} = [[cosh χ, sinh χ·e^{−iω}], [−sinh χ·e^{iω}, −cosh χ]]`.
/// When the characteristic function is not identically zero the two blocks
/// coincide and the operator lies in the Clifford algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CSymmetryParams {
    pub chi1: f64,
    pub omega1: f64,
    pub chi2: f64,
    pub omega2: f64,
}

fn wrap_angle(w: f64) -> f64 {
    let w = w.rem_euclid(TAU);
    if TAU - w < 1e-14 {
        0.0
    } else {
        w
    }
}

fn c_block(chi: f64, omega: f64) -> [[C64; 2]; 2] {
    let (ch, sh) = (chi.cosh(), chi.sinh());
    [
        [C64::new(ch, 0.0), C64::from_polar(sh, -omega)],
        [-C64::from_polar(sh, omega), C64::new(-ch, 0.0)],
    ]
}

impl CSymmetryParams {
    pub fn uniform(chi: f64, omega: f64) -> Self {
        let omega = wrap_angle(omega);
        Self { chi1: chi, omega1: omega, chi2: chi, omega2: omega }
    }

    pub fn split(chi1: f64, omega1: f64, chi2: f64, omega2: f64) -> Self {
        Self { chi1, omega1: wrap_angle(omega1), chi2, omega2: wrap_angle(omega2) }
    }

    /// `J` itself.
    pub fn j() -> Self {
        Self::uniform(0.0, 0.0)
    }

    pub fn is_uniform(&self) -> bool {
        self.chi1 == self.chi2 && self.omega1 == self.omega2
    }

    pub fn boundary_matrix(&self) -> SymmetryMatrix {
        SymmetryMatrix::from_blocks(c_block(self.chi1, self.omega1), c_block(self.chi2, self.omega2))
    }
}

/// `C_{χ,ω} = J[(cosh χ)I + (sinh χ)R_ω]` with `R_ω = R[cos ω + i(sin ω)J]`,
/// i.e. `(cosh χ)J + (sinh χ)(cos ω)JR − i(sinh χ)(sin ω)R`.
pub fn c_chi_omega(p: &CSymmetryParams) -> Result<CliffordElement> {
    if !p.is_uniform() {
        return Err(Error::Domain(
            "split C-symmetry parameters do not define an element of Cl2(J,R)".into(),
        ));
    }
    let (chi, omega) = (p.chi1, p.omega1);
    if chi == 0.0 {
        return Ok(CliffordElement::j());
    }
    let (ch, sh) = (chi.cosh(), chi.sinh());
    Ok(CliffordElement::new([
        C64::new(0.0, 0.0),
        C64::new(ch, 0.0),
        C64::new(0.0, -sh * omega.sin()),
        C64::new(sh * omega.cos(), 0.0),
    ]))
}

/// `C² = I` and `JC` Hermitian positive definite.
pub fn verify_c_axioms(c: &CliffordElement) -> bool {
    verify_c_axioms_matrix(&c.as_matrix())
}

pub fn verify_c_axioms_matrix(m: &SymmetryMatrix) -> bool {
    let scale = m.0.iter().fold(1.0_f64, |a, v| a.max(v.norm()));
    let tol = ALG_TOL * scale * scale;
    if (*m * *m).max_abs_diff(&SymmetryMatrix::identity()) > tol {
        return false;
    }
    let jc = SymmetryMatrix::j() * *m;
    if jc.adjoint().max_abs_diff(&jc) > tol {
        return false;
    }
    let herm = (jc.0 + jc.0.adjoint()) * C64::new(0.5, 0.0);
    herm.symmetric_eigenvalues().iter().all(|&ev| ev > POSITIVITY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anticommutator(a: &CliffordElement, b: &CliffordElement) -> f64 {
        let (ma, mb) = (a.as_matrix(), b.as_matrix());
        (ma * mb + mb * ma).max_abs_diff(&SymmetryMatrix(Matrix4::zeros()))
    }

    #[test]
    fn canonical_matrices() {
        assert_eq!(CliffordElement::identity().as_matrix(), SymmetryMatrix::identity());
        assert_eq!(CliffordElement::j().as_matrix(), SymmetryMatrix::j());
        assert_eq!(CliffordElement::r().as_matrix(), SymmetryMatrix::r());
    }

    #[test]
    fn fundamental_symmetry_examples() {
        assert!(is_fundamental_symmetry(&CliffordElement::j()));
        assert!(!is_fundamental_symmetry(&CliffordElement::identity()));
        assert!(!is_fundamental_symmetry(&CliffordElement::real([-1.0, 0.0, 0.0, 0.0])));
        assert!(is_fundamental_symmetry(&CliffordElement::real([0.0, 0.6, 0.8, 0.0])));
        // JR is anti-Hermitian; iJR is the third axis
        assert!(!is_fundamental_symmetry(&CliffordElement::jr()));
        assert!(is_fundamental_symmetry(&CliffordElement::from_axis([0.0, 0.0, 1.0])));
        assert!(!is_fundamental_symmetry(&CliffordElement::real([0.0, 0.6, 0.6, 0.0])));
    }

    #[test]
    fn partner_examples() {
        let g = anticommuting_partner(&CliffordElement::j()).unwrap();
        assert!(g.as_matrix().max_abs_diff(&SymmetryMatrix::r()) < 1e-15);
        let g = anticommuting_partner(&CliffordElement::r()).unwrap();
        assert!(g.as_matrix().max_abs_diff(&SymmetryMatrix::j()) < 1e-15);
        let f = CliffordElement::real([0.0, 0.6, 0.8, 0.0]);
        let g = anticommuting_partner(&f).unwrap();
        let expected = CliffordElement::real([0.0, -0.8, 0.6, 0.0]);
        assert!(g.as_matrix().max_abs_diff(&expected.as_matrix()) < 1e-15);
        assert!(anticommutator(&f, &g) < 1e-12);
        assert!(anticommuting_partner(&CliffordElement::identity()).is_err());
    }

    #[test]
    fn c_chi_omega_examples() {
        assert_eq!(c_chi_omega(&CSymmetryParams::uniform(0.0, 1.3)).unwrap(), CliffordElement::j());
        let c = c_chi_omega(&CSymmetryParams::uniform(1.0, 0.0)).unwrap().as_matrix();
        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        for off in [0, 2] {
            assert!((c.0[(off, off)] - ch).norm() < 1e-15);
            assert!((c.0[(off, off + 1)] - sh).norm() < 1e-15);
            assert!((c.0[(off + 1, off)] + sh).norm() < 1e-15);
            assert!((c.0[(off + 1, off + 1)] + ch).norm() < 1e-15);
        }
        let c = c_chi_omega(&CSymmetryParams::uniform(0.7, 2.1)).unwrap().as_matrix();
        assert!((c * c).max_abs_diff(&SymmetryMatrix::identity()) < 1e-12);
    }

    #[test]
    fn clifford_form_matches_block_form() {
        for (chi, omega) in [(0.3, 0.0), (-1.2, 2.5), (2.0, 5.9)] {
            let p = CSymmetryParams::uniform(chi, omega);
            let a = c_chi_omega(&p).unwrap().as_matrix();
            assert!(a.max_abs_diff(&p.boundary_matrix()) < 1e-14);
        }
    }

    #[test]
    fn c_axioms_examples() {
        assert!(verify_c_axioms(&c_chi_omega(&CSymmetryParams::uniform(0.9, 4.0)).unwrap()));
        assert!(verify_c_axioms(&CliffordElement::j()));
        assert!(!verify_c_axioms(&CliffordElement::r()));
        assert!(verify_c_axioms_matrix(&CSymmetryParams::split(0.4, 1.0, -2.0, 3.0).boundary_matrix()));
    }

    #[test]
    fn split_params_have_no_clifford_form() {
        assert!(c_chi_omega(&CSymmetryParams::split(0.1, 0.2, 0.1, 0.3)).is_err());
    }

    #[test]
    fn basis_is_independent() {
        let b = basis_matrices();
        let mut gram = nalgebra::Matrix4::<C64>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                gram[(i, j)] = (b[i].0.adjoint() * b[j].0).trace();
            }
        }
        assert_eq!(gram, nalgebra::Matrix4::identity() * C64::new(4.0, 0.0));
    }

    #[test]
    fn projection_round_trip() {
        let e = CliffordElement::new([C64::new(0.2, 1.0), C64::new(-0.5, 0.0), I, C64::new(3.0, -2.0)]);
        let (back, res) = CliffordElement::from_matrix(&e.as_matrix());
        assert!(res < 1e-15);
        for k in 0..4 {
            assert!((back.coeffs[k] - e.coeffs[k]).norm() < 1e-15);
        }
        // JR·JR = −I
        let sq = CliffordElement::jr().mul(&CliffordElement::jr());
        assert_eq!(sq, CliffordElement::real([-1.0, 0.0, 0.0, 0.0]));
    }
}
