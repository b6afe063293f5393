//! Values checked against independent computations: exact rational
//! recurrences, a direct Bessel power series, and reference values computed
//! once at 40 digits with mpmath.

#![allow(clippy::excessive_precision)]

mod common;

use common::*;
use crr::coulomb::{bessel_j, coulomb_f, curly_n, gamow_factor};
use crr::crr::{crr_coeffs, crr_eval_hypergeometric, crr_eval_recurrence, crr_leading_coeff, crr_monic_coeffs};
use crr::gamma::{complex_abs_gamma, gamma_real};
use crr::hypergeometric::kummer_1f1;
use crr::{ParamB, SeriesControl};
use num_complex::Complex64;

#[test]
fn polynomial_values_match_high_precision_recurrence() {
    // mpmath, 40 digits
    let cases = [
        (0.6, -2.0, 30, 3.7, 30493225065.909232917f64),
        (1.0, 0.0, 7, 0.5, 0.01025390625),
        (2.5, 3.0, 12, -8.25, 4819963793.3502382554),
        (0.6, 3.0, 25, -0.3, 3.907755941976389996e-6),
        (2.5, -2.0, 30, 10.0, 1.4701263797259612727e+24),
    ];
    for (lam, eta, n, x, want) in cases {
        let b = ParamB::new(lam, eta);
        let r = crr_eval_recurrence(b, n, x).unwrap();
        let h = crr_eval_hypergeometric(b, n, x).unwrap();
        let tol = 1e-11 * want.abs().max(1.0);
        assert!((r - want).abs() <= tol, "{b} n={n} x={x}: {r} vs {want}");
        assert!((h - want).abs() <= tol, "hyper {b} n={n} x={x}: {h} vs {want}");
    }
}

#[test]
fn coefficients_match_exact_rational_recurrence() {
    for (lam, eta) in [(q(3, 5), q(-2, 1)), (q(1, 1), q(0, 1)), (q(5, 2), q(3, 1)), (q(7, 4), q(1, 3))] {
        let b = ParamB::new(to_f64(&lam), to_f64(&eta));
        let exact = exact_crr_coeffs(&lam, &eta, 20);
        for (n, poly) in exact.iter().enumerate() {
            let got = crr_coeffs(b, n).unwrap();
            let max = poly.iter().map(|c| to_f64(c).abs()).fold(0.0, f64::max);
            for (k, c) in poly.iter().enumerate() {
                let g = got.coeffs[k];
                assert!((g - to_f64(c)).abs() <= 1e-13 * max, "{b} n={n} k={k}: {g} vs {}", to_f64(c));
            }
            let lead = to_f64(poly.last().unwrap());
            assert!(rel_close(crr_leading_coeff(b.lambda, n), lead, 1e-14));
            let x = q(-7, 3);
            let v = exact_eval(poly, &x);
            assert!(exact_rel_err(crr_eval_recurrence(b, n, to_f64(&x)).unwrap(), &v) < 1e-13);
            let monic = crr_monic_coeffs(b, n).unwrap();
            assert_eq!(*monic.coeffs.last().unwrap(), 1.0);
        }
    }
}

#[test]
fn coulomb_f_reference_values() {
    let ctl = SeriesControl::default();
    // mpmath coulombf(L, eta, w)
    let cases = [
        (0, 0.0, 2.0, 0.9092974268256816954),
        (0, 1.5, 3.0, 0.73012911231115328198),
        (1, -2.0, 0.7, 0.57122375677696959166),
        (2, 0.5, 5.5, 0.89609145298283975495),
        (3, 3.0, 9.0, 1.2879250473489692234),
        (4, -1.0, 1.25, 0.010042803259892120365),
        (0, -3.0, 10.0, -0.43913481763008672012),
        (1, 2.5, 0.5, 0.00060946587148981827515),
    ];
    for (l, eta, w, want) in cases {
        let got = coulomb_f(l, eta, w, &ctl).unwrap();
        assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "F_{l}({eta}, {w}) = {got}, want {want}");
    }
}

#[test]
fn bessel_reference_values() {
    let ctl = SeriesControl::default();
    // mpmath besselj(alpha, w)
    let cases = [
        (0.0, 1.0, 0.76519768655796655145),
        (0.0, -7.5, 0.26633965788037839687),
        (0.3, 2.2, 0.32809047365090454182),
        (0.5, 9.9, -0.11602394668751681241),
        (2.7, 0.4, 0.0030752226742513385823),
        (2.7, 10.0, 0.14785146777645404302),
        (1.0, -3.0, -0.33905895852593645893),
        (0.3, 1e-3, 0.11393853750601629263),
    ];
    for (alpha, w, want) in cases {
        let got = bessel_j(alpha, w, &ctl).unwrap();
        assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "J_{alpha}({w}) = {got}, want {want}");
        let series = bessel_power_series(alpha, w);
        assert!((series - want).abs() <= 1e-13, "oracle J_{alpha}({w}) = {series}");
    }
    assert!(bessel_j(0.3, -1.0, &ctl).is_err());
}

#[test]
fn kummer_reference_values() {
    let ctl = SeriesControl::default();
    let c = Complex64::new;
    // mpmath hyp1f1(a, c, z)
    let cases = [
        (c(1.3, -0.4), 2.6, c(0.0, 6.0), c(-0.65986501830807219204, 0.094061477255460725321)),
        (c(2.0, 1.5), 4.0, c(0.0, -3.0), c(0.16295409351179354469, -2.297884104720491148)),
        (c(0.6, 3.0), 1.2, c(0.0, 18.0), c(0.051594870139792545896, -0.023337167711094808872)),
    ];
    for (a, cc, z, want) in cases {
        let got = kummer_1f1(a, c(cc, 0.0), z, &ctl).unwrap();
        assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "1F1({a}; {cc}; {z}) = {got}");
    }
}

#[test]
fn gamma_reference_values() {
    let c = Complex64::new;
    // mpmath abs(gamma(z))
    let cases = [
        (c(1.0, 1.0), 0.52156404686493984116),
        (c(0.5, -3.0), 0.02251777119947931341),
        (c(2.5, 7.0), 0.002112626621111978216),
        (c(-1.5, 0.5), 1.000815799736254213),
        (c(10.0, 0.1), 362689.23986540993222),
    ];
    for (z, want) in cases {
        let got = complex_abs_gamma(z).unwrap();
        assert!((got - want).abs() <= 1e-13 * want, "|Gamma({z})| = {got}");
    }
    let g37 = gamma_real(3.7).unwrap();
    assert!((g37 - 2.7 * 1.7 * GAMMA_1_7).abs() < 1e-14 * g37);
    assert!((gamma_real(1.3).unwrap() - GAMMA_1_3).abs() < 1e-15);
}

#[test]
fn gamow_factor_reference_values() {
    // |Gamma(1 + i)| e^{-pi/2} / Gamma(2) = e^{-pi/2} sqrt(pi / sinh(pi))
    let want = 0.10842251310207262395;
    let got = gamow_factor(ParamB::new(1.0, -1.0)).unwrap();
    assert!((got - want).abs() < 1e-15, "{got}");
    assert!((gamow_factor(ParamB::real(1.0)).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn curly_n_at_integer_lambda_one() {
    let ctl = SeriesControl::default();
    for w in linspace(-10.0, 10.0, 41) {
        let got = curly_n(ParamB::real(1.0), w, &ctl).unwrap();
        let want = if w == 0.0 { 1.0 } else { w.sin() / w };
        assert!((got - want).abs() < 1e-13, "w = {w}");
    }
}

#[test]
fn bessel_closed_form_is_exact_for_half_integer_lambda() {
    for alpha in [q(0, 1), q(3, 10), q(1, 2), q(27, 10), q(5, 1)] {
        let lam = &alpha + q(1, 2);
        let (a, b) = exact_ab(&lam, &q(0, 1), 24);
        let (ae, bo) = exact_bessel_closed(&alpha, 24);
        for (n, v) in ae.iter().enumerate() {
            assert_eq!(&a[2 * n], v);
        }
        for (n, v) in bo.iter().enumerate() {
            assert_eq!(&b[2 * n + 1], v);
        }
        for n in 0..12 {
            assert!(num_traits::Zero::is_zero(&a[2 * n + 1]));
            assert!(num_traits::Zero::is_zero(&b[2 * n]));
        }
    }
}
