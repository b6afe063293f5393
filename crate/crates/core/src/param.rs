use num_complex::Complex64;

use crate::error::{CrrError, Result};

/// The complex parameter `b = lambda + i eta` that indexes every family in
/// this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamB {
    pub lambda: f64,
    pub eta: f64,
}

impl ParamB {
    pub const fn new(lambda: f64, eta: f64) -> Self {
        ParamB { lambda, eta }
    }

    /// A real parameter (`eta = 0`).
    pub const fn real(lambda: f64) -> Self {
        ParamB { lambda, eta: 0.0 }
    }

    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.lambda, self.eta)
    }

    pub fn conj(self) -> Self {
        ParamB::new(self.lambda, -self.eta)
    }

    /// `b + k` for a real shift.
    pub fn shift(self, k: f64) -> Self {
        ParamB::new(self.lambda + k, self.eta)
    }

    pub(crate) fn require_finite(self) -> Result<()> {
        if self.lambda.is_finite() && self.eta.is_finite() {
            Ok(())
        } else {
            Err(CrrError::Domain(format!("non-finite parameter b = {self}")))
        }
    }

    /// `lambda > 0`, the standing hypothesis for polynomials and Coulomb functions.
    pub(crate) fn require_positive(self) -> Result<()> {
        self.require_finite()?;
        if self.lambda > 0.0 {
            Ok(())
        } else {
            Err(CrrError::Domain(format!(
                "requires lambda > 0, got lambda = {}",
                self.lambda
            )))
        }
    }

    /// `lambda > 1/2`, needed wherever the weight on the real line is integrated.
    pub(crate) fn require_above_half(self) -> Result<()> {
        self.require_finite()?;
        if self.lambda > 0.5 {
            Ok(())
        } else {
            Err(CrrError::Domain(format!(
                "requires lambda > 1/2, got lambda = {}",
                self.lambda
            )))
        }
    }

    /// `lambda > -1/2`, the existence range of the unit-circle family.
    pub(crate) fn require_above_minus_half(self) -> Result<()> {
        self.require_finite()?;
        if self.lambda > -0.5 {
            Ok(())
        } else {
            Err(CrrError::Domain(format!(
                "requires lambda > -1/2, got lambda = {}",
                self.lambda
            )))
        }
    }
}

impl std::fmt::Display for ParamB {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.eta < 0.0 {
            write!(f, "{}-{}i", self.lambda, -self.eta)
        } else {
            write!(f, "{}+{}i", self.lambda, self.eta)
        }
    }
}

/// Truncation policy for infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once `|term| <= rel_tol * |partial sum|` for three consecutive terms.
    pub rel_tol: f64,
    /// Partial sums below this magnitude are treated as zero for the stopping test.
    pub abs_floor: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            abs_floor: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesControl {
    /// Truncation at double-double resolution. Used where values are
    /// differenced (finite-difference residuals) and a data-dependent cut
    /// would show up as noise.
    pub fn extended() -> Self {
        SeriesControl {
            rel_tol: 1e-32,
            ..Default::default()
        }
    }

    /// Defaults, with `max_terms` taken from `CRR_MAX_TERMS` when set.
    pub fn from_env() -> Self {
        let mut ctl = SeriesControl::default();
        if let Some(n) = std::env::var("CRR_MAX_TERMS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            ctl.max_terms = n;
        }
        ctl
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || !(self.abs_floor >= 0.0) {
            return Err(CrrError::Domain(format!(
                "invalid series control: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Rising factorial `(z)_n` by forward product.
pub fn pochhammer(z: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (z + k as f64))
}

/// Complex rising factorial `(z)_n` by forward product.
pub fn pochhammer_c(z: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (z + k as f64))
}
