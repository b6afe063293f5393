//! Gauss and Kummer hypergeometric series.
//!
//! Both series are accumulated in double-double arithmetic with a running
//! term-ratio update. Inputs are plain `f64`/`Complex64` values, treated as
//! exact; only the final result is rounded.

use num_complex::Complex64;

use crate::dd::{CDd, Dd, EPS};
use crate::error::{CrrError, Result};
use crate::param::SeriesControl;

/// Largest `|z|` accepted by [`kummer_1f1`]. Beyond it the direct series
/// would need more than double-double headroom to cancel.
pub const KUMMER_MAX_ARG: f64 = 40.0;

/// A series value together with the sum of the magnitudes of its terms,
/// which bounds the rounding error of the summation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: CDd,
    pub abs_sum: f64,
}

impl SeriesSum {
    /// Rounding floor of the accumulated sum.
    pub fn rounding_floor(&self, terms: usize) -> f64 {
        4.0 * (terms as f64 + 1.0) * EPS * self.abs_sum
    }
}

fn nonpositive_integer(c: Complex64) -> Option<i64> {
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
        Some(c.re as i64)
    } else {
        None
    }
}

/// `2F1(-n, a; c; z)` as the finite sum over `k = 0..=n`.
pub(crate) fn hyp2f1_terminating_dd(n: usize, a: CDd, c: CDd, z: CDd) -> Result<SeriesSum> {
    if let Some(m) = nonpositive_integer(c.to_c64()) {
        if ((-m) as usize) < n {
            return Err(CrrError::Pole(format!(
                "2F1 lower parameter c = {m} hits a zero factor before the series terminates"
            )));
        }
    }
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut abs_sum = 1.0;
    for k in 0..n {
        let kd = Dd::new(k as f64);
        let num = CDd::new(kd - Dd::new(n as f64), Dd::ZERO) * CDd::new(a.re + kd, a.im);
        let den = CDd::new(c.re + kd, c.im).scale(Dd::new((k + 1) as f64));
        term = term * num / den * z;
        sum = sum + term;
        abs_sum += term.abs_f64();
    }
    Ok(SeriesSum {
        value: sum,
        abs_sum,
    })
}

/// Terms `t_k = (-n)_k (a)_k / ((c)_k k!)`, `k = 0..=n`, so that
/// `2F1(-n, a; c; z) = sum t_k z^k`.
pub(crate) fn gauss_terms_dd(n: usize, a: CDd, c: CDd) -> Result<Vec<CDd>> {
    hyp2f1_terminating_dd(n, a, c, CDd::ZERO)?;
    let mut terms = Vec::with_capacity(n + 1);
    let mut t = CDd::ONE;
    terms.push(t);
    for k in 0..n {
        let kd = Dd::new(k as f64);
        let num = CDd::new(kd - Dd::new(n as f64), Dd::ZERO) * CDd::new(a.re + kd, a.im);
        let den = CDd::new(c.re + kd, c.im).scale(Dd::new((k + 1) as f64));
        t = t * num / den;
        terms.push(t);
    }
    Ok(terms)
}

/// Terminating Gauss series `2F1(-n, a; c; z)`.
pub fn hyp2f1_terminating(n: usize, a: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    Ok(hyp2f1_terminating_dd(n, CDd::from_c64(a), CDd::from_c64(c), CDd::from_c64(z))?
        .value
        .to_c64())
}

/// Kummer series at double-double resolution.
pub(crate) fn kummer_1f1_dd(a: CDd, c: CDd, z: CDd, ctl: &SeriesControl) -> Result<SeriesSum> {
    ctl.validate()?;
    if nonpositive_integer(c.to_c64()).is_some() {
        return Err(CrrError::Pole(format!(
            "1F1 lower parameter c = {} is a non-positive integer",
            c.to_c64()
        )));
    }
    let zabs = z.abs_f64();
    if !zabs.is_finite() || zabs > KUMMER_MAX_ARG {
        return Err(CrrError::AccuracyLimit(format!(
            "|z| = {zabs} exceeds the direct-series range {KUMMER_MAX_ARG}"
        )));
    }
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut abs_sum = 1.0;
    let mut small_run = 0;
    for k in 0..ctl.max_terms {
        let kd = Dd::new(k as f64);
        let num = CDd::new(a.re + kd, a.im);
        let den = CDd::new(c.re + kd, c.im).scale(Dd::new((k + 1) as f64));
        term = term * num / den * z;
        sum = sum + term;
        let t = term.abs_f64();
        abs_sum += t;
        if t <= ctl.rel_tol * sum.abs_f64().max(ctl.abs_floor) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(SeriesSum {
                    value: sum,
                    abs_sum,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(CrrError::NonConvergence {
        iterations: ctl.max_terms,
        residual: term.abs_f64(),
    })
}

/// Kummer's confluent hypergeometric function `1F1(a; c; z)` by its power
/// series, for `|z| <= 40`.
pub fn kummer_1f1(a: Complex64, c: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    Ok(kummer_1f1_dd(CDd::from_c64(a), CDd::from_c64(c), CDd::from_c64(z), ctl)?
        .value
        .to_c64())
}
