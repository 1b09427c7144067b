//! Square root with the cut along `[0, ∞)`.

use crate::{C64, I};

/// `√λ` with `Im √λ > 0` off `[0, ∞)` and `√λ ≥ 0` on it.
///
/// This differs from the principal branch in the lower half-plane:
/// `sqrt_upper(-i) = e^{3πi/4}`.
pub fn sqrt_upper(z: C64) -> C64 {
    if z.im == 0.0 && z.re >= 0.0 {
        return C64::new(z.re.sqrt(), 0.0);
    }
    let w = I * (-z).sqrt();
    // -z can land on the principal cut with a signed zero; force the upper sheet.
    if w.im < 0.0 {
        -w
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn branch_values() {
        assert!(close(sqrt_upper(I), C64::from_polar(1.0, FRAC_PI_4)));
        assert!(close(sqrt_upper(-I), C64::from_polar(1.0, 3.0 * FRAC_PI_4)));
        assert!(close(sqrt_upper(C64::new(-4.0, 0.0)), C64::new(0.0, 2.0)));
        assert_eq!(sqrt_upper(C64::new(9.0, 0.0)), C64::new(3.0, 0.0));
        assert_eq!(sqrt_upper(C64::new(0.0, 0.0)), C64::new(0.0, 0.0));
    }

    #[test]
    fn squares_back_with_positive_imaginary_part() {
        for k in 0..64 {
            let t = 0.05 + k as f64 * 0.097;
            let z = C64::from_polar(1.0 + k as f64 * 0.3, t);
            let w = sqrt_upper(z);
            assert!((w * w - z).norm() < 1e-12 * z.norm());
            assert!(w.im > 0.0, "{z} -> {w}");
        }
    }
}
