//! Recurrence coefficients and the positive chain sequence `d_{n+1}`.
//!
//! Index conventions: vectors returned here are indexed by the mathematical
//! index directly, with unused leading slots set to `NAN` where the sequence
//! starts above zero. `c[n]` is `c_n` (n >= 1), `d[n]` is `d_n` (n >= 2),
//! `ell[n]` is `ell_n` (n >= 1), `big_l[n]` is `L_n` (n >= 1), and
//! `gamma[n]` is `gamma_n` (n >= 0).

use crate::error::{CrrError, Result};
use crate::param::ParamB;

/// Coefficients of the three-term recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs {
    /// `c[n] = eta / (lambda + n - 1)`, 1 <= n <= n_max; `c[0]` unused.
    pub c: Vec<f64>,
    /// `d[n+1] = n (2 lambda + n - 1) / (4 (lambda + n - 1)(lambda + n))`,
    /// 1 <= n <= n_max - 1; `d[0]`, `d[1]` unused.
    pub d: Vec<f64>,
}

/// `c_n` for `n >= 1`.
#[inline]
pub fn c_coeff(b: ParamB, n: usize) -> f64 {
    b.eta / (b.lambda + n as f64 - 1.0)
}

/// `d_{n+1}` for `n >= 1`.
#[inline]
pub fn d_coeff(lambda: f64, n: usize) -> f64 {
    let n = n as f64;
    0.25 * n * (2.0 * lambda + n - 1.0) / ((lambda + n - 1.0) * (lambda + n))
}

/// `1 - ell_n = (2 lambda + n - 1) / (2 (lambda + n - 1))` for `n >= 1`.
#[inline]
pub fn one_minus_ell(lambda: f64, n: usize) -> f64 {
    let n = n as f64;
    (2.0 * lambda + n - 1.0) / (2.0 * (lambda + n - 1.0))
}

pub fn recurrence_coeffs(b: ParamB, n_max: usize) -> Result<RecurrenceCoeffs> {
    b.require_positive()?;
    if n_max < 1 {
        return Err(CrrError::Domain("n_max must be at least 1".into()));
    }
    let mut c = vec![f64::NAN; n_max + 1];
    let mut d = vec![f64::NAN; n_max + 1];
    for n in 1..=n_max {
        c[n] = c_coeff(b, n);
        if n < n_max {
            d[n + 1] = d_coeff(b.lambda, n);
        }
    }
    Ok(RecurrenceCoeffs { c, d })
}

/// Minimal parameter sequence `ell_1 .. ell_{n_max}` (index 0 unused).
///
/// Evaluated from the closed ratio rather than by iterating the chain
/// relation forward, which drifts away from the minimal solution.
pub fn minimal_params(lambda: f64, n_max: usize) -> Result<Vec<f64>> {
    ParamB::real(lambda).require_positive()?;
    let ell = std::iter::once(f64::NAN)
        .chain((1..=n_max).map(|n| {
            let nf = n as f64;
            (nf - 1.0) / (2.0 * (lambda + nf - 1.0))
        }))
        .collect();
    Ok(ell)
}

/// Maximal parameter sequence `L_n = (2 lambda + n - 2) / (2 (lambda + n - 1))`.
/// Only distinct from the minimal one (and only guaranteed in (0,1)) for
/// `lambda > 1/2`.
pub fn maximal_params(lambda: f64, n_max: usize) -> Result<Vec<f64>> {
    ParamB::real(lambda).require_above_half()?;
    let big_l = std::iter::once(f64::NAN)
        .chain((1..=n_max).map(|n| {
            let nf = n as f64;
            0.5 * (2.0 * lambda + nf - 2.0) / (lambda + nf - 1.0)
        }))
        .collect();
    Ok(big_l)
}

/// `gamma_0 = 1`, `gamma_n = (1 - L_n) gamma_{n-1}`.
pub fn gamma_seq(lambda: f64, n_max: usize) -> Result<Vec<f64>> {
    let big_l = maximal_params(lambda, n_max)?;
    let mut gamma = Vec::with_capacity(n_max + 1);
    gamma.push(1.0);
    for n in 1..=n_max {
        let prev = gamma[n - 1];
        gamma.push((1.0 - big_l[n]) * prev);
    }
    Ok(gamma)
}

/// Checks whether `g` is a parameter sequence of the chain sequence `d`.
///
/// `d[n]` holds `d_n` for `n >= 2` and `g[n]` holds `g_n` for `n >= 1`
/// (index 0 ignored in both), with `g.len() == d.len()`. The test is
/// `g_1 in [0,1)`, `g_n in (0,1)` for `n >= 2`, and
/// `|(1 - g_n) g_{n+1} - d_{n+1}| <= tol` wherever both sides are present.
pub fn is_parameter_seq(d: &[f64], g: &[f64], tol: f64) -> Result<bool> {
    if d.len() != g.len() {
        return Err(CrrError::LengthMismatch {
            expected: d.len(),
            got: g.len(),
        });
    }
    if !(tol > 0.0) {
        return Err(CrrError::Domain("tolerance must be positive".into()));
    }
    let len = g.len();
    if len < 2 {
        return Ok(true);
    }
    if !(0.0..1.0).contains(&g[1]) {
        return Ok(false);
    }
    if g[2..].iter().any(|&v| !(v > 0.0 && v < 1.0)) {
        return Ok(false);
    }
    Ok((1..len - 1).all(|n| ((1.0 - g[n]) * g[n + 1] - d[n + 1]).abs() <= tol))
}

/// Default absolute tolerance for [`is_parameter_seq`].
pub const PARAMETER_SEQ_TOL: f64 = 1e-12;

/// Chain sequence and all of its parameter sequences for one `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSequences {
    pub lambda: f64,
    pub d: Vec<f64>,
    pub ell: Vec<f64>,
    /// Empty when `lambda <= 1/2`.
    pub big_l: Vec<f64>,
    /// Empty when `lambda <= 1/2`.
    pub gamma: Vec<f64>,
}

impl ChainSequences {
    pub fn new(lambda: f64, n_max: usize) -> Result<Self> {
        let coeffs = recurrence_coeffs(ParamB::real(lambda), n_max.max(1))?;
        let ell = minimal_params(lambda, n_max)?;
        let (big_l, gamma) = if lambda > 0.5 {
            (maximal_params(lambda, n_max)?, gamma_seq(lambda, n_max)?)
        } else {
            (Vec::new(), Vec::new())
        };
        let mut d = coeffs.d;
        d.truncate(n_max + 1);
        Ok(ChainSequences {
            lambda,
            d,
            ell,
            big_l,
            gamma,
        })
    }
}
