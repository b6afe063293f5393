//! Integration over the circle with algebraic endpoint singularities, and
//! over the real line through the Cayley pullback.
//!
//! Each half `[0, pi]` and `[pi, 2 pi]` of the circle is integrated with a
//! tanh-sinh rule written in the distance `delta` to the nearer endpoint of
//! the full interval, so `sin(theta/2)` is never formed by cancellation.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::chain::{c_coeff, d_coeff};
use crate::error::{CrrError, Result};
use crate::opuc::ln_line_normalization;
use crate::param::ParamB;

/// Default evaluation budget per integral.
pub const DEFAULT_BUDGET: usize = 200_000;
/// Half-width of the tanh-sinh parameter range; the outermost node sits
/// about `1e-272` from the endpoint.
const T_MAX: f64 = 5.3;
const H0: f64 = 0.5;
const MIN_LEVELS: usize = 3;

/// A point of the circle with the half-angle trigonometric values computed
/// from the distance to the nearer endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    pub theta: f64,
    pub sin_half: f64,
    pub cos_half: f64,
}

impl CirclePoint {
    pub fn from_theta(theta: f64) -> Self {
        if theta <= PI {
            Self::from_left(theta)
        } else {
            Self::from_right(2.0 * PI - theta)
        }
    }

    fn from_left(delta: f64) -> Self {
        CirclePoint {
            theta: delta,
            sin_half: (0.5 * delta).sin(),
            cos_half: (0.5 * delta).cos(),
        }
    }

    fn from_right(delta: f64) -> Self {
        CirclePoint {
            theta: 2.0 * PI - delta,
            sin_half: (0.5 * delta).sin(),
            cos_half: -(0.5 * delta).cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Whether `error_estimate <= tol` was reached within the budget.
    pub converged: bool,
}

impl QuadratureResult {
    /// Turns an unconverged result into an error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(CrrError::NonConvergence {
                iterations: self.evaluations,
                residual: self.error_estimate,
            })
        }
    }
}

/// Node `delta in (0, pi)` and weight `d delta / dt` at parameter `t`.
fn node(t: f64) -> (f64, f64) {
    let u = 0.5 * PI * t.sinh();
    let e = (-2.0 * u.abs()).exp();
    let delta = if u < 0.0 { PI * e / (1.0 + e) } else { PI / (1.0 + e) };
    // sech^2(u) = 4 e^{-2|u|} / (1 + e^{-2|u|})^2
    let w = 0.25 * PI * PI * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    (delta, w)
}

/// `int_0^{2 pi} f dtheta` for integrands whose endpoint behaviour is at worst
/// `sin^(2 b_exponent)(theta/2)`, `b_exponent > -1/2`, using the default budget.
pub fn integrate_circle<F>(f: F, b_exponent: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(&CirclePoint) -> Complex64,
{
    integrate_circle_with_budget(f, b_exponent, tol, DEFAULT_BUDGET)
}

pub fn integrate_circle_with_budget<F>(
    f: F,
    b_exponent: f64,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult>
where
    F: Fn(&CirclePoint) -> Complex64,
{
    if !(b_exponent > -0.5) {
        return Err(CrrError::Domain(format!(
            "endpoint exponent {b_exponent} is not integrable (needs > -1/2)"
        )));
    }
    if !(tol > 0.0) {
        return Err(CrrError::Domain("tolerance must be positive".into()));
    }
    let mut evaluations = 0usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let eval_at = |t: f64, sum: &mut Complex64, abs_sum: &mut f64, evaluations: &mut usize| -> Result<()> {
        let (delta, w) = node(t);
        if w == 0.0 || delta == 0.0 {
            return Ok(());
        }
        for p in [CirclePoint::from_left(delta), CirclePoint::from_right(delta)] {
            let v = f(&p);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(CrrError::Domain(format!(
                    "integrand is not finite at theta = {}",
                    p.theta
                )));
            }
            *sum += v * w;
            *abs_sum += v.norm() * w;
        }
        *evaluations += 2;
        Ok(())
    };

    let mut h = H0;
    let jmax = (T_MAX / h).floor() as i64;
    for j in -jmax..=jmax {
        eval_at(j as f64 * h, &mut sum, &mut abs_sum, &mut evaluations)?;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    let mut level = 0;
    loop {
        let next_cost = 2 * (2.0 * T_MAX / h).ceil() as usize;
        if evaluations + next_cost > budget {
            break;
        }
        h *= 0.5;
        level += 1;
        let jmax = (T_MAX / h).floor() as i64;
        let mut j = -jmax;
        if j % 2 == 0 {
            j += 1;
        }
        while j <= jmax {
            eval_at(j as f64 * h, &mut sum, &mut abs_sum, &mut evaluations)?;
            j += 2;
        }
        let next = sum * h;
        error = (next - estimate).norm();
        estimate = next;
        let floor = 64.0 * f64::EPSILON * abs_sum * h;
        if level >= MIN_LEVELS && (error <= tol || error <= floor) {
            break;
        }
    }
    Ok(QuadratureResult {
        value: estimate,
        error_estimate: error,
        evaluations,
        converged: error <= tol,
    })
}

/// `int_{-inf}^{inf} f dx` through `x = cot(theta/2)`, `dx = -dtheta / (2 sin^2(theta/2))`.
///
/// Values that overflow at `|x| > 1e100` are taken as zero, which assumes the
/// integrand decays there.
pub fn integrate_line<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_circle(
        |p| {
            let x = p.cos_half / p.sin_half;
            let v = f(x) / (2.0 * p.sin_half * p.sin_half);
            if !(v.re.is_finite() && v.im.is_finite()) && x.abs() > 1e100 {
                Complex64::new(0.0, 0.0)
            } else {
                v
            }
        },
        0.0,
        tol,
    )
}

/// Moment matrix `int x^m P_n(x)/(1 + x^2)^n nu(x) dx` for `m <= n <= n_max`;
/// entries with `m > n` are left at zero.
///
/// The integrand is evaluated on the circle in homogeneous form: with
/// `c = cos(theta/2)`, `s = sin(theta/2)` and `H_n = s^n P_n(c/s)`,
/// the entry is `int c^m s^(n-m) H_n * k e^(-eta theta) s^(2 lambda - 2) / 2 dtheta`.
pub fn orthogonality_matrix(b: ParamB, n_max: usize, tol: f64) -> Result<DMatrix<f64>> {
    let ln_k = ln_line_normalization(b)?;
    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |m| (m, n)))
        .collect();
    let values: Vec<Result<f64>> = pairs
        .par_iter()
        .map(|&(m, n)| {
            let r = integrate_circle(
                |p| {
                    let (c, s) = (p.cos_half, p.sin_half);
                    let mut h0 = 1.0;
                    let mut h1 = c - c_coeff(b, 1) * s;
                    let hn = if n == 0 {
                        h0
                    } else {
                        for k in 1..n {
                            let h2 = (c - c_coeff(b, k + 1) * s) * h1 - d_coeff(b.lambda, k) * h0;
                            h0 = h1;
                            h1 = h2;
                        }
                        h1
                    };
                    let weight =
                        0.5 * (ln_k - b.eta * p.theta + (2.0 * b.lambda - 2.0) * s.ln()).exp();
                    Complex64::new(c.powi(m as i32) * s.powi((n - m) as i32) * hn * weight, 0.0)
                },
                b.lambda - 1.0,
                tol,
            )?
            .require_converged()?;
            Ok(r.value.re)
        })
        .collect();
    let mut out = DMatrix::<f64>::zeros(n_max + 1, n_max + 1);
    for (&(m, n), v) in pairs.iter().zip(values) {
        out[(m, n)] = v?;
    }
    Ok(out)
}
