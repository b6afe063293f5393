//! Log-gamma for complex arguments.
//!
//! Lanczos approximation with g = 671/128 and 14 coefficients (the
//! Numerical Recipes 3rd edition set), valid in the right half-plane, with
//! reflection for `Re z < 1/2`. Results are returned in log form so that
//! `|Gamma(x + iy)|` for large `|y|` does not underflow before it is combined
//! with other factors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{CrrError, Result};

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_88e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let tmp = z + LANCZOS_G;
    let tmp = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for &c in LANCZOS_COEFFS.iter() {
        y += 1.0;
        ser += c / y;
    }
    tmp + (ser * SQRT_2PI / z).ln()
}

/// `ln Gamma(z)` on the principal branch of the logarithm of each factor.
/// The imaginary part is only meaningful modulo `2 pi`; callers here use the
/// real part.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(CrrError::Domain(format!("non-finite gamma argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(CrrError::Pole(format!("Gamma has a pole at {}", z.re)));
    }
    if z.re < 0.5 && z.im.abs() < 100.0 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let s = (z * PI).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// `ln |Gamma(z)|`.
pub fn ln_abs_gamma(z: Complex64) -> Result<f64> {
    Ok(ln_gamma_complex(z)?.re)
}

/// `|Gamma(z)|` via the complex log-gamma.
pub fn complex_abs_gamma(z: Complex64) -> Result<f64> {
    Ok(ln_abs_gamma(z)?.exp())
}

/// `ln |Gamma(x)|` for real `x`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    ln_abs_gamma(Complex64::new(x, 0.0))
}

/// `Gamma(x)` for real `x` (sign included).
pub fn gamma_real(x: f64) -> Result<f64> {
    let mag = ln_gamma_real(x)?.exp();
    if x > 0.0 {
        return Ok(mag);
    }
    // Gamma alternates sign between consecutive negative integers.
    let k = (-x).floor() as i64;
    Ok(if k % 2 == 0 { -mag } else { mag })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        assert!((complex_abs_gamma(Complex64::new(1.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((complex_abs_gamma(Complex64::new(5.0, 0.0)).unwrap() - 24.0).abs() < 1e-12);
        let half = gamma_real(0.5).unwrap();
        assert!((half - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(-1.5).unwrap() - 4.0 / 3.0 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn imaginary_axis_identities() {
        // |Gamma(1 + iy)|^2 = pi y / sinh(pi y); |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        for &y in &[0.1, 1.0, 2.5, 7.0, 20.0, 50.0] {
            let g1 = complex_abs_gamma(Complex64::new(1.0, y)).unwrap();
            let want1 = (PI * y / (PI * y).sinh()).sqrt();
            assert!(((g1 - want1) / want1).abs() < 1e-12, "y = {y}");
            let lg = ln_abs_gamma(Complex64::new(0.5, y)).unwrap();
            let want = 0.5 * (PI.ln() - (PI * y).cosh().ln());
            assert!((lg - want).abs() < 1e-12 * want.abs().max(1.0), "y = {y}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(
            complex_abs_gamma(Complex64::new(0.0, 0.0)),
            Err(CrrError::Pole(_))
        ));
        assert!(complex_abs_gamma(Complex64::new(-3.0, 0.0)).is_err());
        assert!(complex_abs_gamma(Complex64::new(-3.0, 1e-3)).is_ok());
    }

    #[test]
    fn recurrence_in_argument() {
        // |Gamma(z + 1)| = |z| |Gamma(z)|
        for &(x, y) in &[(0.3, 0.4), (0.6, 3.0), (2.5, -1.0), (12.0, 30.0), (0.05, -2.0)] {
            let z = Complex64::new(x, y);
            let a = ln_abs_gamma(z + 1.0).unwrap();
            let b = ln_abs_gamma(z).unwrap() + z.norm().ln();
            assert!((a - b).abs() < 1e-13 * a.abs().max(1.0), "z = {z}");
        }
    }
}
