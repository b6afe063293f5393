//! Zeros of `P_n(b; .)` and the logarithmic-potential energy they minimize.
//!
//! With `m` unit charges at `x_1..x_m`, charges `lambda_m / 2` at `+-i`
//! (`lambda_m = lambda + m - 1`) and the field `-eta atan(x)`:
//!
//! ```text
//! E(x) = -sum_{j<k} ln|x_j - x_k| + (lambda_m / 2) sum ln(x_j^2 + 1) - eta sum atan(x_j)
//! ```
//!
//! The zeros of `P_m(b; .)` are a stationary point of `E`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::chain::one_minus_ell;
use crate::crr::{crr_monic_coeffs, crr_monic_sequence, crr_sequence};
use crate::error::{CrrError, Result};
use crate::param::ParamB;

/// Smallest admissible distance between two charges.
pub const COINCIDENCE_FLOOR: f64 = 1e-12;
/// Largest imaginary part tolerated on a polished zero, relative to `max(1, |x|)`.
pub const ZERO_IMAG_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 500;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroConfiguration {
    /// Strictly increasing positions.
    pub positions: Vec<f64>,
    pub energy: f64,
    /// Euclidean norm of the energy gradient at `positions`.
    pub grad_norm: f64,
    /// Newton iterations used (0 for the eigenvalue route).
    pub iterations: usize,
}

fn check_positions(lambda_m: f64, xs: &[f64]) -> Result<()> {
    if !lambda_m.is_finite() || xs.iter().any(|x| !x.is_finite()) {
        return Err(CrrError::Domain("positions and lambda_m must be finite".into()));
    }
    let m = xs.len() as f64;
    if !(lambda_m > m - 1.0) {
        return Err(CrrError::Domain(format!(
            "requires lambda_m > m - 1 = {}, got lambda_m = {lambda_m}",
            m - 1.0
        )));
    }
    let mut gap = f64::INFINITY;
    for (k, &a) in xs.iter().enumerate() {
        for &b in &xs[k + 1..] {
            gap = gap.min((a - b).abs());
        }
    }
    if gap < COINCIDENCE_FLOOR {
        return Err(CrrError::Coincidence {
            gap,
            floor: COINCIDENCE_FLOOR,
        });
    }
    Ok(())
}

/// Energy `E`. The positions are summed in sorted order, so the value does
/// not depend on how `xs` is ordered.
pub fn energy_eval(lambda_m: f64, eta: f64, xs: &[f64]) -> Result<f64> {
    check_positions(lambda_m, xs)?;
    let mut s = xs.to_vec();
    s.sort_by(f64::total_cmp);
    let mut pair = 0.0;
    for (k, &a) in s.iter().enumerate() {
        for &b in &s[k + 1..] {
            pair += (b - a).ln();
        }
    }
    let field: f64 = s
        .iter()
        .map(|&x| 0.5 * lambda_m * (x * x).ln_1p() - eta * x.atan())
        .sum();
    Ok(field - pair)
}

/// `dE/dx_k = -sum_{j != k} 1/(x_k - x_j) + (lambda_m x_k - eta)/(x_k^2 + 1)`,
/// in the order of `xs`.
pub fn energy_gradient(lambda_m: f64, eta: f64, xs: &[f64]) -> Result<Vec<f64>> {
    check_positions(lambda_m, xs)?;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let pair: f64 = xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &y)| 1.0 / (x - y))
                .sum();
            (lambda_m * x - eta) / (x * x + 1.0) - pair
        })
        .collect())
}

/// Analytic Hessian of `E`.
pub fn energy_hessian(lambda_m: f64, eta: f64, xs: &[f64]) -> Result<DMatrix<f64>> {
    check_positions(lambda_m, xs)?;
    let m = xs.len();
    let mut h = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let x = xs[k];
        let q = x * x + 1.0;
        let mut diag = (lambda_m * (1.0 - x * x) + 2.0 * eta * x) / (q * q);
        for j in 0..m {
            if j != k {
                let r = 1.0 / ((x - xs[j]) * (x - xs[j]));
                diag += r;
                h[(k, j)] = -r;
            }
        }
        h[(k, k)] = diag;
    }
    Ok(h)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn configuration(b: ParamB, mut positions: Vec<f64>, iterations: usize) -> Result<ZeroConfiguration> {
    positions.sort_by(f64::total_cmp);
    let lambda_m = b.lambda + positions.len() as f64 - 1.0;
    let energy = energy_eval(lambda_m, b.eta, &positions)?;
    let grad_norm = norm(&energy_gradient(lambda_m, b.eta, &positions)?);
    Ok(ZeroConfiguration {
        positions,
        energy,
        grad_norm,
        iterations,
    })
}

/// Zeros of `P_n(b; .)`: eigenvalues of the balanced companion matrix of the
/// monic polynomial, polished by complex Newton steps on `P^_n' = n P^_{n-1}`,
/// then by real Newton steps on `P_n' = n (1 - ell_n) P_{n-1}`.
pub fn crr_zeros(b: ParamB, n: usize) -> Result<ZeroConfiguration> {
    b.require_positive()?;
    if n == 0 {
        return Err(CrrError::Domain("P_0 has no zeros; n must be at least 1".into()));
    }
    let monic = crr_monic_coeffs(b, n)?;
    let roots = monic.to_complex().roots()?;
    let nf = n as f64;
    let mut xs = Vec::with_capacity(n);
    for mut z in roots {
        for _ in 0..10 {
            let seq = crr_monic_sequence(b, n, z)?;
            let d = seq[n - 1] * nf;
            if d.norm() == 0.0 {
                break;
            }
            let step = seq[n] / d;
            z -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
                break;
            }
        }
        let bound = ZERO_IMAG_TOL * z.re.abs().max(1.0);
        if z.im.abs() > bound {
            return Err(CrrError::Consistency {
                context: format!("zero {z} of P_{n}({b}) is not real"),
                discrepancy: z.im.abs(),
                tolerance: bound,
            });
        }
        let mut x = z.re;
        let slope = nf * one_minus_ell(b.lambda, n);
        for _ in 0..20 {
            let seq = crr_sequence(b, n, x);
            let d = slope * seq[n - 1];
            if d == 0.0 {
                break;
            }
            let step = seq[n] / d;
            x -= step;
            if step.abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        xs.push(x);
    }
    configuration(b, xs, 0)
}

/// Circle-uniform starting positions `cot(theta_k / 2)`, `theta_k = 2 pi k/(m+1)`.
pub fn auto_init(m: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (1..=m)
        .map(|k| 1.0 / (PI * k as f64 / (m as f64 + 1.0)).tan())
        .collect();
    xs.sort_by(f64::total_cmp);
    xs
}

/// Minimizes `E` for `m` charges with `lambda_m = lambda + m - 1`.
///
/// Damped Newton steps (the Hessian is shifted until its Cholesky
/// factorization exists), clipped so that no two neighbouring charges move by
/// more than half their gap, followed by Armijo backtracking. Stops when the
/// gradient norm is at most `tol`.
pub fn minimize_energy(
    m: usize,
    b: ParamB,
    init: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
) -> Result<ZeroConfiguration> {
    b.require_positive()?;
    if m == 0 {
        return Err(CrrError::Domain("need at least one charge".into()));
    }
    if !(tol > 0.0) {
        return Err(CrrError::Domain("tolerance must be positive".into()));
    }
    let lambda_m = b.lambda + m as f64 - 1.0;
    let eta = b.eta;
    let mut x = match init {
        Some(v) => {
            if v.len() != m {
                return Err(CrrError::LengthMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
            let mut v = v.to_vec();
            v.sort_by(f64::total_cmp);
            v
        }
        None => auto_init(m),
    };
    let mut e = energy_eval(lambda_m, eta, &x)?;
    let mut g = energy_gradient(lambda_m, eta, &x)?;
    for iter in 0..max_iter {
        if norm(&g) <= tol {
            return configuration(b, x, iter);
        }
        let h = energy_hessian(lambda_m, eta, &x)?;
        let gv = DVector::from_column_slice(&g);
        let scale = h.abs().max().max(1.0);
        let mut mu = 0.0;
        let dx = loop {
            let shifted = &h + DMatrix::<f64>::identity(m, m) * mu;
            if let Some(ch) = shifted.cholesky() {
                break -ch.solve(&gv);
            }
            mu = if mu == 0.0 { 1e-8 * scale } else { mu * 4.0 };
            if !mu.is_finite() {
                return Err(CrrError::Singular("Hessian shift diverged".into()));
            }
        };
        let mut s: f64 = 1.0;
        for k in 0..m.saturating_sub(1) {
            let rel = (dx[k + 1] - dx[k]).abs();
            if rel > 0.0 {
                s = s.min(0.5 * (x[k + 1] - x[k]) / rel);
            }
        }
        let slope: f64 = g.iter().zip(dx.iter()).map(|(a, b)| a * b).sum();
        let slack = 1e-14 * e.abs().max(1.0);
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, d)| a + s * d).collect();
            if let Ok(et) = energy_eval(lambda_m, eta, &trial) {
                if et <= e + 1e-4 * s * slope + slack {
                    accepted = Some((trial, et));
                    break;
                }
            }
            s *= 0.5;
        }
        let Some((trial, et)) = accepted else {
            return Err(CrrError::NonConvergence {
                iterations: iter,
                residual: norm(&g),
            });
        };
        x = trial;
        e = et;
        g = energy_gradient(lambda_m, eta, &x)?;
    }
    if norm(&g) <= tol {
        return configuration(b, x, max_iter);
    }
    Err(CrrError::NonConvergence {
        iterations: max_iter,
        residual: norm(&g),
    })
}

/// Cayley images `(x + i)/(x - i)` of a zero configuration.
pub fn circle_images(cfg: &ZeroConfiguration) -> Vec<Complex64> {
    cfg.positions.iter().map(|&x| crate::opuc::cayley_to_circle(x)).collect()
}
