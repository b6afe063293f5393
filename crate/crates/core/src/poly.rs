//! Dense polynomials with real or complex coefficients.
//!
//! Coefficients are stored in increasing powers: `coeffs[k]` multiplies `x^k`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CrrError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    pub coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        RealPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> RealPolynomial {
        if self.coeffs.len() == 1 {
            return RealPolynomial::new(vec![0.0]);
        }
        RealPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scaled(&self, s: f64) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    pub coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        ComplexPolynomial { coeffs }
    }

    /// Nominal degree (length of the coefficient list minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> ComplexPolynomial {
        if self.coeffs.len() == 1 {
            return ComplexPolynomial::new(vec![Complex64::new(0.0, 0.0)]);
        }
        ComplexPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scaled(&self, s: Complex64) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Reversed conjugate at an explicit degree `n >= self.degree()`:
    /// `z^n conj(p(1/conj(z)))`.
    pub fn star_at(&self, n: usize) -> ComplexPolynomial {
        assert!(n >= self.degree(), "star degree below polynomial degree");
        let mut padded = self.coeffs.clone();
        padded.resize(n + 1, Complex64::new(0.0, 0.0));
        ComplexPolynomial::new(padded.iter().rev().map(|c| c.conj()).collect())
    }

    /// Roots by eigenvalues of the balanced companion matrix. When the QR
    /// iteration stalls (it can on spectra symmetric about the origin) the
    /// roots come from an Aberth-Ehrlich iteration instead.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        let lead = self.leading();
        if lead.norm() == 0.0 {
            return Err(CrrError::Domain("leading coefficient is zero".into()));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        balance(&mut m);
        match nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000) {
            Some(schur) => {
                let (_, t) = schur.unpack();
                Ok((0..n).map(|i| t[(i, i)]).collect())
            }
            None => aberth(&self.coeffs),
        }
    }
}

/// `p*` at the polynomial's own degree.
pub fn poly_star(p: &ComplexPolynomial) -> ComplexPolynomial {
    p.star_at(p.degree())
}

const ABERTH_MAX_ITER: usize = 500;

/// Simultaneous Aberth-Ehrlich iteration, started on a circle around the
/// root centroid whose radius bounds the root moduli.
fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let center = -monic[n - 1] / n as f64;
    let radius = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    let mut worst = f64::INFINITY;
    for _ in 0..ABERTH_MAX_ITER {
        worst = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                worst = worst.max(step.norm() / z[k].norm().max(f64::MIN_POSITIVE));
            }
        }
        if worst <= 4.0 * f64::EPSILON {
            return Ok(z);
        }
    }
    // slow final convergence is acceptable when the callers polish the roots
    if worst <= 1e-8 {
        return Ok(z);
    }
    Err(CrrError::NonConvergence {
        iterations: ABERTH_MAX_ITER,
        residual: worst,
    })
}

/// Parlett-Reinsch diagonal similarity balancing (powers of two, so exact).
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] *= g;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_handles_symmetric_spectrum() {
        // x^4 - 5 x^2 + 4 = (x^2 - 1)(x^2 - 4)
        let c = |v: f64| Complex64::new(v, 0.0);
        let mut r = aberth(&[c(4.0), c(0.0), c(-5.0), c(0.0), c(1.0)]).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (z, want) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((z - c(want)).norm() < 1e-14, "{z}");
        }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn star_reverses_and_conjugates() {
        let p = ComplexPolynomial::new(vec![c(1.0, 2.0), c(3.0, -1.0)]);
        let s = poly_star(&p);
        assert_eq!(s.coeffs, vec![c(3.0, 1.0), c(1.0, -2.0)]);
        let one = ComplexPolynomial::new(vec![c(1.0, 0.0)]);
        assert_eq!(one.star_at(1).coeffs, vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn star_on_the_circle_has_same_modulus() {
        let p = ComplexPolynomial::new(vec![c(0.3, 2.0), c(-1.0, 0.5), c(0.2, 0.1), c(1.0, 0.0)]);
        let s = poly_star(&p);
        for k in 0..7 {
            let z = Complex64::from_polar(1.0, 0.9 * k as f64);
            assert!((p.eval(z).norm() - s.eval(z).norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn companion_roots_of_known_polynomial() {
        // (x - 1)(x + 2)(x - 3i)
        let p = ComplexPolynomial::new(vec![c(0.0, 6.0), c(-2.0, -3.0), c(1.0, -3.0), c(1.0, 0.0)]);
        let mut roots = p.roots().unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let want = [c(-2.0, 0.0), c(0.0, 3.0), c(1.0, 0.0)];
        for (r, w) in roots.iter().zip(want.iter()) {
            assert!((r - w).norm() < 1e-12, "{r} vs {w}");
        }
    }

    #[test]
    fn real_derivative_and_eval() {
        let p = RealPolynomial::new(vec![-1.0, 0.0, 3.0]);
        assert_eq!(p.eval(1.0), 2.0);
        assert_eq!(p.derivative().coeffs, vec![0.0, 6.0]);
        assert_eq!(RealPolynomial::new(vec![4.0]).derivative().coeffs, vec![0.0]);
    }
}
