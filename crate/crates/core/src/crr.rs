//! Complementary Romanovski-Routh polynomials `P_n(b; x)`.
//!
//! The primary route is the three-term recurrence
//!
//! ```text
//! P_{n+1}(x) = (x - c_{n+1}) P_n(x) - d_{n+1} (x^2 + 1) P_{n-1}(x),
//! P_0 = 1,  P_1 = x - eta/lambda,
//! ```
//!
//! with the terminating Gauss sum
//!
//! ```text
//! P_n(x) = (x - i)^n / 2^n * (2 lambda)_n / (lambda)_n * 2F1(-n, b; b + conj(b); -2i/(x - i))
//! ```
//!
//! as an independent second route. Forward recurrence at large `|x|` or
//! large `n` has relative error growing like `O(n eps cond)`; no stronger
//! guarantee is made.

use num_complex::Complex64;

use crate::chain::{c_coeff, d_coeff, one_minus_ell};
use crate::dd::{CDd, Dd};
use crate::error::{CrrError, Result};
use crate::hypergeometric::hyp2f1_terminating_dd;
use crate::param::ParamB;
use crate::poly::RealPolynomial;

/// Relative bound on the imaginary residue of the Gauss-sum route.
pub const HYPER_IMAG_TOL: f64 = 1e-10;

/// `P_0(x), ..., P_n(x)` by forward recurrence.
pub(crate) fn crr_sequence(b: ParamB, n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(x - c_coeff(b, 1));
    let q = x * x + 1.0;
    for k in 1..n {
        let next = (x - c_coeff(b, k + 1)) * out[k] - d_coeff(b.lambda, k) * q * out[k - 1];
        out.push(next);
    }
    out
}

/// `P_n(b; x)` by forward three-term recurrence.
pub fn crr_eval_recurrence(b: ParamB, n: usize, x: f64) -> Result<f64> {
    b.require_positive()?;
    Ok(*crr_sequence(b, n, x).last().unwrap())
}

/// Leading coefficient `(2 lambda)_n / (2^n (lambda)_n)`, as the product of
/// the `1 - ell_k`.
pub fn crr_leading_coeff(lambda: f64, n: usize) -> f64 {
    (1..=n).map(|k| one_minus_ell(lambda, k)).product()
}

/// `P_n(b; x)` from the terminating Gauss sum, evaluated in complex
/// double-double arithmetic.
///
/// The sum is mathematically real; an imaginary part larger than
/// [`HYPER_IMAG_TOL`] relative to the value (or to the rounding floor of
/// the sum) is reported as [`CrrError::ImaginaryResidue`].
pub fn crr_eval_hypergeometric(b: ParamB, n: usize, x: f64) -> Result<f64> {
    b.require_positive()?;
    if !x.is_finite() {
        return Err(CrrError::Domain(format!("x must be finite, got {x}")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    // -2i / (x - i) = (2 - 2 i x) / (x^2 + 1)
    let xd = Dd::new(x);
    let q = xd * xd + Dd::ONE;
    let arg = CDd::new(Dd::new(2.0) / q, Dd::new(-2.0 * x) / q);
    let bb = CDd::from_f64(b.lambda, b.eta);
    let c = CDd::from_f64(2.0 * b.lambda, 0.0);
    let sum = hyp2f1_terminating_dd(n, bb, c, arg)?;
    // (x - i)^n / 2^n * (2 lambda)_n / (lambda)_n = (x - i)^n * leading coefficient
    let base = CDd::from_f64(x, -1.0);
    let mut pow = CDd::ONE;
    for _ in 0..n {
        pow = pow * base;
    }
    let lead = crr_leading_coeff(b.lambda, n);
    let value = (pow * sum.value).scale(Dd::new(lead)).to_c64();
    let floor = pow.abs_f64() * lead * sum.rounding_floor(n);
    let bound = HYPER_IMAG_TOL * value.re.abs().max(floor);
    if value.im.abs() > bound {
        return Err(CrrError::ImaginaryResidue {
            context: "terminating Gauss sum for P_n",
            residue: value.im.abs(),
            bound,
        });
    }
    Ok(value.re)
}

/// Coefficients of `P_n(b; .)`, built by running the recurrence on
/// coefficient lists.
pub fn crr_coeffs(b: ParamB, n: usize) -> Result<RealPolynomial> {
    b.require_positive()?;
    let mut prev = vec![1.0];
    if n == 0 {
        return Ok(RealPolynomial::new(prev));
    }
    let mut cur = vec![-c_coeff(b, 1), 1.0];
    for k in 1..n {
        let ck = c_coeff(b, k + 1);
        let dk = d_coeff(b.lambda, k);
        let mut next = vec![0.0; k + 2];
        for (j, &a) in cur.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= ck * a;
        }
        for (j, &a) in prev.iter().enumerate() {
            next[j] -= dk * a;
            next[j + 2] -= dk * a;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(RealPolynomial::new(cur))
}

/// Coefficients of the monic polynomial `P^_n = P_n / p_n`.
pub fn crr_monic_coeffs(b: ParamB, n: usize) -> Result<RealPolynomial> {
    let p = crr_coeffs(b, n)?;
    let lead = crr_leading_coeff(b.lambda, n);
    let mut monic = p.scaled(1.0 / lead);
    // exact by construction; pin it against rounding in the rescale
    *monic.coeffs.last_mut().unwrap() = 1.0;
    Ok(monic)
}

/// `P^_0(x), ..., P^_n(x)` for complex `x` by the monic form of the recurrence,
/// `P^_{k+1} = [(x - c_{k+1}) P^_k - d_{k+1}/(1 - ell_k) (x^2+1) P^_{k-1}] / (1 - ell_{k+1})`.
pub fn crr_monic_sequence(b: ParamB, n: usize, x: Complex64) -> Result<Vec<Complex64>> {
    b.require_positive()?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex64::new(1.0, 0.0));
    if n == 0 {
        return Ok(out);
    }
    out.push(x - c_coeff(b, 1));
    let q = x * x + 1.0;
    for k in 1..n {
        let lam = b.lambda;
        let next = ((x - c_coeff(b, k + 1)) * out[k]
            - q * (d_coeff(lam, k) / one_minus_ell(lam, k)) * out[k - 1])
            / one_minus_ell(lam, k + 1);
        out.push(next);
    }
    Ok(out)
}

/// `P^_n(b; x)` at a complex point.
pub fn crr_monic_eval(b: ParamB, n: usize, x: Complex64) -> Result<Complex64> {
    Ok(*crr_monic_sequence(b, n, x)?.last().unwrap())
}

/// `dP_n/dx = n (1 - ell_n) P_{n-1}`. For `n = 0` the derivative of the
/// constant is returned as `0`.
pub fn crr_derivative_eval(b: ParamB, n: usize, x: f64) -> Result<f64> {
    b.require_positive()?;
    if n == 0 {
        return Ok(0.0);
    }
    let seq = crr_sequence(b, n - 1, x);
    Ok(n as f64 * one_minus_ell(b.lambda, n) * seq[n - 1])
}

/// The three terms `(A P'', -2 B P', C P)` of the differential equation.
fn ode_terms(b: ParamB, n: usize, x: f64) -> [f64; 3] {
    let lam = b.lambda;
    let seq = crr_sequence(b, n, x);
    let p = seq[n];
    let nf = n as f64;
    let dp = if n >= 1 {
        nf * one_minus_ell(lam, n) * seq[n - 1]
    } else {
        0.0
    };
    let d2p = if n >= 2 {
        nf * one_minus_ell(lam, n) * (nf - 1.0) * one_minus_ell(lam, n - 1) * seq[n - 2]
    } else {
        0.0
    };
    let a = x * x + 1.0;
    let bcoef = (lam + nf - 1.0) * x - b.eta;
    let ccoef = nf * (nf - 1.0 + 2.0 * lam);
    [a * d2p, -2.0 * bcoef * dp, ccoef * p]
}

/// Left-hand side `A P_n'' - 2 B P_n' + C P_n`, with both derivatives taken
/// through the derivative rule; identically zero in exact arithmetic.
pub fn crr_ode_residual(b: ParamB, n: usize, x: f64) -> Result<f64> {
    b.require_positive()?;
    Ok(ode_terms(b, n, x).iter().sum())
}

/// Magnitude scale for [`crr_ode_residual`]: the largest of the three terms
/// and 1.
pub fn crr_ode_scale(b: ParamB, n: usize, x: f64) -> Result<f64> {
    b.require_positive()?;
    Ok(ode_terms(b, n, x).iter().fold(1.0f64, |m, t| m.max(t.abs())))
}
