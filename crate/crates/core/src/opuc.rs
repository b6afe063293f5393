//! Orthogonal and para-orthogonal polynomials on the unit circle.
//!
//! For `lambda > -1/2` the probability measure
//!
//! ```text
//! dmu(b; theta) = 4^lambda |Gamma(b+1)|^2 / (Gamma(2 lambda + 1) 2 pi)
//!                 * exp((pi - theta) eta) * sin^(2 lambda)(theta/2) dtheta
//! ```
//!
//! has monic orthogonal polynomials
//! `Phi_n(b; z) = (2 lambda + 1)_n / (b + 1)_n * 2F1(-n, b + 1; 2 lambda + 1; 1 - z)`.
//! The para-orthogonal `R_n(b; z)` are the images of `P_n(b; x)` under the
//! Cayley map `zeta = (x + i)/(x - i)`, with `R_n(zeta) = 2^n P_n(x) / (x - i)^n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chain::{c_coeff, d_coeff, gamma_seq};
use crate::dd::{CDd, Dd};
use crate::error::{CrrError, Result};
use crate::gamma::{ln_abs_gamma, ln_gamma_real};
use crate::hypergeometric::{gauss_terms_dd, hyp2f1_terminating_dd};
use crate::param::ParamB;
use crate::poly::ComplexPolynomial;
use crate::quadrature::CirclePoint;

/// Tolerance on `||zeta| - 1|` accepted by [`cayley_to_line`].
pub const UNIT_CIRCLE_TOL: f64 = 1e-12;
/// Below this `|conj(w) z - 1|` the kernel quotient formula is refused.
pub const KERNEL_SINGULAR_TOL: f64 = 1e-14;
/// Relative agreement required between the three `R_n` constructions.
pub const METHOD_AGREEMENT_TOL: f64 = 1e-10;

/// `zeta = (x + i)/(x - i)`.
pub fn cayley_to_circle(x: f64) -> Complex64 {
    // (x + i)^2 / (x^2 + 1), rescaled for large |x|
    if x.abs() <= 1.0 {
        let q = x * x + 1.0;
        Complex64::new((x * x - 1.0) / q, 2.0 * x / q)
    } else {
        let t = 1.0 / x;
        let q = 1.0 + t * t;
        Complex64::new((1.0 - t * t) / q, 2.0 * t / q)
    }
}

/// `x = i (zeta + 1)/(zeta - 1)`, which is `cot(theta/2)` for `zeta = e^{i theta}`.
pub fn cayley_to_line(zeta: Complex64) -> Result<f64> {
    if !((zeta.norm() - 1.0).abs() <= UNIT_CIRCLE_TOL) {
        return Err(CrrError::Domain(format!("|zeta| = {} is not 1", zeta.norm())));
    }
    let re = 1.0 - zeta.re;
    let den = re * re + zeta.im * zeta.im;
    if den.sqrt() < UNIT_CIRCLE_TOL {
        return Err(CrrError::Pole("zeta = 1 is the image of x = infinity".into()));
    }
    Ok(2.0 * zeta.im / den)
}

fn one_minus(z: Complex64) -> CDd {
    CDd::new(Dd::ONE - Dd::new(z.re), Dd::new(-z.im))
}

/// `(2 lambda + 1)_n / (b + 1)_n`.
fn phi_prefactor(b: ParamB, n: usize) -> Complex64 {
    let bc = b.as_complex();
    (0..n).fold(Complex64::new(1.0, 0.0), |p, k| {
        let k = k as f64;
        p * (2.0 * b.lambda + 1.0 + k) / (bc + 1.0 + k)
    })
}

fn phi_parameters(b: ParamB) -> (CDd, CDd) {
    (
        CDd::from_f64(b.lambda + 1.0, b.eta),
        CDd::from_f64(2.0 * b.lambda + 1.0, 0.0),
    )
}

/// Monic orthogonal polynomial `Phi_n(b; z)`.
pub fn opuc_phi_eval(b: ParamB, n: usize, z: Complex64) -> Result<Complex64> {
    b.require_above_minus_half()?;
    let (a, c) = phi_parameters(b);
    let sum = hyp2f1_terminating_dd(n, a, c, one_minus(z))?;
    Ok((sum.value * CDd::from_c64(phi_prefactor(b, n))).to_c64())
}

/// Reversed polynomial `Phi_n^*(b; z) = z^n conj(Phi_n(b; 1/conj(z)))`,
/// summed directly so that `z = 0` needs no special case.
pub fn opuc_phi_star_eval(b: ParamB, n: usize, z: Complex64) -> Result<Complex64> {
    b.require_above_minus_half()?;
    let (a, c) = phi_parameters(b);
    let terms = gauss_terms_dd(n, a, c)?;
    // sum conj(t_k) z^(n-k) (z - 1)^k
    let zd = CDd::from_c64(z);
    let zm1 = CDd::new(Dd::new(z.re) - Dd::ONE, Dd::new(z.im));
    let mut zpow = vec![CDd::ONE; n + 1];
    for j in 1..=n {
        zpow[j] = zpow[j - 1] * zd;
    }
    let mut acc = CDd::ZERO;
    let mut pk = CDd::ONE;
    for (k, t) in terms.iter().enumerate() {
        acc = acc + t.conj() * zpow[n - k] * pk;
        pk = pk * zm1;
    }
    Ok((acc * CDd::from_c64(phi_prefactor(b, n).conj())).to_c64())
}

/// Expands `pref * sum t_k (1 - z)^k` into powers of `z`.
fn expand_in_one_minus_z(terms: &[CDd], pref: Complex64) -> ComplexPolynomial {
    let n = terms.len() - 1;
    let mut acc = vec![terms[n]];
    for k in (0..n).rev() {
        let mut next = vec![CDd::ZERO; acc.len() + 1];
        for (j, &a) in acc.iter().enumerate() {
            next[j] = next[j] + a;
            next[j + 1] = next[j + 1] - a;
        }
        next[0] = next[0] + terms[k];
        acc = next;
    }
    let p = CDd::from_c64(pref);
    ComplexPolynomial::new(acc.into_iter().map(|c| (c * p).to_c64()).collect())
}

/// Coefficients of `Phi_n(b; .)`.
pub fn opuc_phi_coeffs(b: ParamB, n: usize) -> Result<ComplexPolynomial> {
    b.require_above_minus_half()?;
    let (a, c) = phi_parameters(b);
    let terms = gauss_terms_dd(n, a, c)?;
    Ok(expand_in_one_minus_z(&terms, phi_prefactor(b, n)))
}

/// `||Phi_n||^2 = (2 lambda + 1)_n n! / |(b + 1)_n|^2`.
pub fn opuc_norm_sq(b: ParamB, n: usize) -> Result<f64> {
    b.require_above_minus_half()?;
    let bc = b.as_complex();
    Ok((0..n).fold(1.0, |p, k| {
        let kf = k as f64;
        p * (2.0 * b.lambda + 1.0 + kf) * (kf + 1.0) / (bc + 1.0 + kf).norm_sqr()
    }))
}

/// Christoffel-Darboux kernel `K_n(b; z, w) = sum_{k<=n} conj(phi_k(w)) phi_k(z)`,
/// through the quotient of `phi_{n+1}` and `phi_{n+1}^*`.
pub fn cd_kernel_eval(b: ParamB, n: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    let den = w.conj() * z - 1.0;
    if den.norm() < KERNEL_SINGULAR_TOL {
        return Err(CrrError::Singular(format!(
            "conj(w) z = 1 at z = {z}, w = {w}; the confluent kernel is not provided"
        )));
    }
    let s = opuc_norm_sq(b, n + 1)?.sqrt();
    let pz = opuc_phi_eval(b, n + 1, z)? / s;
    let pw = opuc_phi_eval(b, n + 1, w)? / s;
    let sz = opuc_phi_star_eval(b, n + 1, z)? / s;
    let sw = opuc_phi_star_eval(b, n + 1, w)? / s;
    Ok((pw.conj() * pz - sw.conj() * sz) / den)
}

/// Coefficients in `z` of `K_n(b; z, w)` for fixed `w`, by dividing the
/// kernel numerator by `conj(w) z - 1`.
pub fn cd_kernel_coeffs(b: ParamB, n: usize, w: Complex64) -> Result<ComplexPolynomial> {
    let s2 = opuc_norm_sq(b, n + 1)?;
    let phi = opuc_phi_coeffs(b, n + 1)?;
    let star = phi.star_at(n + 1);
    let cw = (phi.eval(w) / s2).conj();
    let csw = (star.eval(w) / s2).conj();
    let num: Vec<Complex64> = phi
        .coeffs
        .iter()
        .zip(star.coeffs.iter())
        .map(|(&p, &q)| cw * p - csw * q)
        .collect();
    // num_k = conj(w) q_{k-1} - q_k
    let wc = w.conj();
    let mut q = vec![Complex64::new(0.0, 0.0); n + 1];
    if w.norm() >= 1.0 {
        let mut next = Complex64::new(0.0, 0.0);
        for k in (1..=n + 1).rev() {
            q[k - 1] = (num[k] + next) / wc;
            next = q[k - 1];
        }
    } else {
        q[0] = -num[0];
        for k in 1..=n {
            q[k] = wc * q[k - 1] - num[k];
        }
    }
    Ok(ComplexPolynomial::new(q))
}

/// Construction route for the para-orthogonal polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParaMethod {
    /// `R_{n+1} = [(1 + i c_{n+1}) z + (1 - i c_{n+1})] R_n - 4 d_{n+1} z R_{n-1}`.
    Recurrence,
    /// `(2 lambda)_n / (lambda)_n * 2F1(-n, b; 2 lambda; 1 - z)`.
    Hypergeometric,
    /// `(b)_n/(lambda)_n * [z Phi_{n-1}(b; z) + (conj(b))_n/(b)_n * Phi_{n-1}^*(b; z)]`.
    Para,
}

/// `(R_n(z), R_n'(z))` by the recurrence and its derivative.
pub(crate) fn para_r_with_derivative(b: ParamB, n: usize, z: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if n == 0 {
        return (one, zero);
    }
    let i = Complex64::i();
    let c1 = c_coeff(b, 1);
    let (mut r0, mut dr0) = (one, zero);
    let (mut r1, mut dr1) = ((1.0 + i * c1) * z + (1.0 - i * c1), 1.0 + i * c1);
    for k in 1..n {
        let c = c_coeff(b, k + 1);
        let d4 = 4.0 * d_coeff(b.lambda, k);
        let a = (1.0 + i * c) * z + (1.0 - i * c);
        let r2 = a * r1 - d4 * z * r0;
        let dr2 = (1.0 + i * c) * r1 + a * dr1 - d4 * (r0 + z * dr0);
        (r0, dr0, r1, dr1) = (r1, dr1, r2, dr2);
    }
    (r1, dr1)
}

/// `prod_{k<n} (b + k)/(lambda + k)`.
fn b_over_lambda_poch(b: ParamB, n: usize) -> Complex64 {
    let bc = b.as_complex();
    (0..n).fold(Complex64::new(1.0, 0.0), |p, k| {
        let k = k as f64;
        p * (bc + k) / (b.lambda + k)
    })
}

/// Para-orthogonal polynomial `R_n(b; z)` by the chosen route.
pub fn para_r_eval(b: ParamB, n: usize, z: Complex64, method: ParaMethod) -> Result<Complex64> {
    b.require_positive()?;
    match method {
        ParaMethod::Recurrence => Ok(para_r_with_derivative(b, n, z).0),
        ParaMethod::Hypergeometric => {
            let lead: f64 = (0..n)
                .map(|k| (2.0 * b.lambda + k as f64) / (b.lambda + k as f64))
                .product();
            let sum = hyp2f1_terminating_dd(
                n,
                CDd::from_f64(b.lambda, b.eta),
                CDd::from_f64(2.0 * b.lambda, 0.0),
                one_minus(z),
            )?;
            Ok(sum.value.to_c64() * lead)
        }
        ParaMethod::Para => {
            if n == 0 {
                return Ok(Complex64::new(1.0, 0.0));
            }
            let p = b_over_lambda_poch(b, n);
            let phi = opuc_phi_eval(b, n - 1, z)?;
            let star = opuc_phi_star_eval(b, n - 1, z)?;
            Ok(p * z * phi + p.conj() * star)
        }
    }
}

/// Evaluates all three routes and returns the recurrence value with the
/// largest pairwise relative discrepancy. Fails with a consistency error
/// above [`METHOD_AGREEMENT_TOL`].
pub fn para_r_checked(b: ParamB, n: usize, z: Complex64) -> Result<(Complex64, f64)> {
    let r = para_r_eval(b, n, z, ParaMethod::Recurrence)?;
    let h = para_r_eval(b, n, z, ParaMethod::Hypergeometric)?;
    let p = para_r_eval(b, n, z, ParaMethod::Para)?;
    let scale = r.norm().max(h.norm()).max(p.norm()).max(1.0);
    let worst = [(r - h).norm(), (r - p).norm(), (h - p).norm()]
        .into_iter()
        .fold(0.0f64, f64::max)
        / scale;
    if worst > METHOD_AGREEMENT_TOL {
        return Err(CrrError::Consistency {
            context: format!("R_{n}({b}; {z}) construction routes"),
            discrepancy: worst,
            tolerance: METHOD_AGREEMENT_TOL,
        });
    }
    Ok((r, worst))
}

/// Coefficients of `R_n(b; .)`, from the recurrence run on coefficient lists.
pub fn para_r_coeffs(b: ParamB, n: usize) -> Result<ComplexPolynomial> {
    b.require_positive()?;
    let i = Complex64::i();
    let mut prev = vec![Complex64::new(1.0, 0.0)];
    if n == 0 {
        return Ok(ComplexPolynomial::new(prev));
    }
    let c1 = c_coeff(b, 1);
    let mut cur = vec![1.0 - i * c1, 1.0 + i * c1];
    for k in 1..n {
        let c = c_coeff(b, k + 1);
        let d4 = 4.0 * d_coeff(b.lambda, k);
        let mut next = vec![Complex64::new(0.0, 0.0); k + 2];
        for (j, &a) in cur.iter().enumerate() {
            next[j] += (1.0 - i * c) * a;
            next[j + 1] += (1.0 + i * c) * a;
        }
        for (j, &a) in prev.iter().enumerate() {
            next[j + 1] -= d4 * a;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(ComplexPolynomial::new(cur))
}

/// Zeros of `R_n(b; .)`: companion-matrix eigenvalues refined by Newton's
/// method on the recurrence, sorted by argument in `(0, 2 pi)`.
pub fn para_r_zeros(b: ParamB, n: usize) -> Result<Vec<Complex64>> {
    let p = para_r_coeffs(b, n)?;
    let mut roots = p.roots()?;
    for r in roots.iter_mut() {
        for _ in 0..30 {
            let (v, dv) = para_r_with_derivative(b, n, *r);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            *r -= step;
            if step.norm() <= 4.0 * f64::EPSILON * r.norm().max(1.0) {
                break;
            }
        }
    }
    let arg = |z: &Complex64| z.arg().rem_euclid(2.0 * PI);
    roots.sort_by(|a, b| arg(a).total_cmp(&arg(b)));
    Ok(roots)
}

/// `|R_n(b; z) - xi_n K_n(b - 1; z, 1)| / max(1, |R_n|)` with
/// `xi_n = 2^n prod_{j<=n} (1 - L_j)`, `L_j` the maximal parameters.
///
/// The factor `2^n` matches the normalization `R_n(1) = (2 lambda)_n / (lambda)_n`;
/// without it the relation already fails at `n = 1`, where `R_1 = z + 1` for real `b`.
pub fn kernel_relation_residual(b: ParamB, n: usize, z: Complex64) -> Result<f64> {
    b.require_above_half()?;
    let r = para_r_eval(b, n, z, ParaMethod::Recurrence)?;
    let xi = gamma_seq(b.lambda, n)?[n] * 2f64.powi(n as i32);
    let k = cd_kernel_eval(b.shift(-1.0), n, z, Complex64::new(1.0, 0.0))?;
    Ok((r - xi * k).norm() / r.norm().max(1.0))
}

/// The circle measure `dmu(b)` with its normalizing constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    pub b: ParamB,
    /// `4^lambda |Gamma(b+1)|^2 / (Gamma(2 lambda + 1) 2 pi)`.
    pub normalization: f64,
    ln_normalization: f64,
}

impl MeasureSpec {
    pub fn new(b: ParamB) -> Result<Self> {
        b.require_above_minus_half()?;
        let ln = b.lambda * 4f64.ln() + 2.0 * ln_abs_gamma(b.as_complex() + 1.0)?
            - ln_gamma_real(2.0 * b.lambda + 1.0)?
            - (2.0 * PI).ln();
        Ok(MeasureSpec {
            b,
            normalization: ln.exp(),
            ln_normalization: ln,
        })
    }

    /// Density with respect to `dtheta` at a prepared circle point.
    pub fn density_at(&self, p: &CirclePoint) -> f64 {
        (self.ln_normalization
            + (PI - p.theta) * self.b.eta
            + 2.0 * self.b.lambda * p.sin_half.ln())
        .exp()
    }

    pub fn density(&self, theta: f64) -> Result<f64> {
        if !(theta > 0.0 && theta < 2.0 * PI) {
            return Err(CrrError::Domain(format!(
                "theta = {theta} must lie strictly inside (0, 2 pi)"
            )));
        }
        Ok(self.density_at(&CirclePoint::from_theta(theta)))
    }
}

/// Density of `dmu(b)` with respect to `dtheta`.
pub fn measure_density_circle(b: ParamB, theta: f64) -> Result<f64> {
    MeasureSpec::new(b)?.density(theta)
}

/// `ln` of `2^(2 lambda - 1) |Gamma(b)|^2 / Gamma(2 lambda - 1) * e^(eta pi) / (2 pi)`,
/// the constant in front of the weight on the real line.
pub(crate) fn ln_line_normalization(b: ParamB) -> Result<f64> {
    b.require_above_half()?;
    Ok((2.0 * b.lambda - 1.0) * 2f64.ln() + 2.0 * ln_abs_gamma(b.as_complex())?
        - ln_gamma_real(2.0 * b.lambda - 1.0)?
        + b.eta * PI
        - (2.0 * PI).ln())
}

/// `ln(1 + x^2)` without overflow for large `|x|`.
pub(crate) fn ln_one_plus_sq(x: f64) -> f64 {
    if x.abs() <= 1.0 {
        (x * x).ln_1p()
    } else {
        2.0 * x.abs().ln() + (1.0 / (x * x)).ln_1p()
    }
}

/// Weight `nu(lambda, eta; x)` on the real line, with
/// `arccot x = pi/2 - atan x` taking values in `(0, pi)`.
pub fn measure_density_line(b: ParamB, x: f64) -> Result<f64> {
    let ln_k = ln_line_normalization(b)?;
    if !x.is_finite() {
        return Err(CrrError::Domain(format!("x must be finite, got {x}")));
    }
    let arccot = 0.5 * PI - x.atan();
    Ok((ln_k - 2.0 * b.eta * arccot - b.lambda * ln_one_plus_sq(x)).exp())
}

/// First moment `int zeta dmu(b - 1) = (1 - b)/conj(b)`.
pub fn moment_first(b: ParamB) -> Result<Complex64> {
    b.require_above_half()?;
    let bc = b.as_complex();
    Ok((1.0 - bc) / bc.conj())
}
