//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().expect("finite rational")
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 })
        .collect()
}

/// Ascending coefficient lists of `P_0 .. P_n` for rational `lambda`, `eta`,
/// from the three-term recurrence in exact arithmetic.
pub fn exact_crr_coeffs(lam: &Q, eta: &Q, n: usize) -> Vec<Vec<Q>> {
    let one = Q::one();
    let mut out = vec![vec![one.clone()]];
    if n == 0 {
        return out;
    }
    out.push(vec![-(eta / lam), one.clone()]);
    for k in 1..n {
        let kq = Q::from_integer(BigInt::from(k));
        let c = eta / (lam + &kq);
        let two = q(2, 1);
        let d = &kq * (&two * lam + &kq - &one)
            / (q(4, 1) * (lam + &kq - &one) * (lam + &kq));
        let (pk, pm) = (&out[k], &out[k - 1]);
        let mut next = vec![Q::zero(); k + 2];
        for (j, a) in pk.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= &c * a;
        }
        for (j, a) in pm.iter().enumerate() {
            next[j] -= &d * a;
            next[j + 2] -= &d * a;
        }
        out.push(next);
    }
    out
}

pub fn exact_eval(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// `a_n`, `b_n` from the 2x2 recurrence
/// `[a, b]_{n+1} = 2/(2 lambda + n) [[-eta, -(lambda+n)], [lambda+n, -eta]] [a, b]_n`.
pub fn exact_ab(lam: &Q, eta: &Q, order: usize) -> (Vec<Q>, Vec<Q>) {
    let mut a = vec![Q::one()];
    let mut b = vec![Q::zero()];
    for n in 0..order {
        let nq = Q::from_integer(BigInt::from(n));
        let s = q(2, 1) / (q(2, 1) * lam + &nq);
        let ln = lam + &nq;
        let an = -(eta * &a[n]) - &ln * &b[n];
        let bn = &ln * &a[n] - eta * &b[n];
        a.push(&s * an);
        b.push(&s * bn);
    }
    (a, b)
}

fn rising(z: &Q, n: usize) -> Q {
    (0..n).fold(Q::one(), |p, k| p * (z + Q::from_integer(BigInt::from(k))))
}

/// Closed forms at `eta = 0`, `lambda = alpha + 1/2`, exact:
/// `a_{2n} = (-1)^n 4^n (alpha+1/2)_{2n}/(2 alpha+1)_{2n}`,
/// `b_{2n+1} = (-1)^n 4^n (alpha+3/2)_{2n}/(2 alpha+2)_{2n}`.
pub fn exact_bessel_closed(alpha: &Q, order: usize) -> (Vec<Q>, Vec<Q>) {
    let mut a_even = Vec::new();
    let mut b_odd = Vec::new();
    let mut n = 0;
    while 2 * n <= order {
        let mut scale = Q::from_integer(BigInt::from(4).pow(n as u32));
        if n % 2 == 1 {
            scale = -scale;
        }
        a_even.push(&scale * rising(&(alpha + q(1, 2)), 2 * n) / rising(&(q(2, 1) * alpha + q(1, 1)), 2 * n));
        if 2 * n < order {
            b_odd.push(&scale * rising(&(alpha + q(3, 2)), 2 * n) / rising(&(q(2, 1) * alpha + q(2, 1)), 2 * n));
        }
        n += 1;
    }
    (a_even, b_odd)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

pub fn exact_rel_err(got: f64, want: &Q) -> f64 {
    let w = to_f64(want);
    if w == 0.0 {
        return got.abs();
    }
    let g = Q::from_float(got).expect("finite");
    to_f64(&((g - want).abs() / want.abs()))
}

/// `Gamma(1.3)` and `Gamma(1.7)` to double precision (tables).
pub const GAMMA_1_3: f64 = 0.897_470_696_306_277_2;
pub const GAMMA_1_7: f64 = 0.908_638_732_853_290_4;

/// `Gamma(alpha + 1)` for the orders used in the Bessel checks.
pub fn gamma_alpha_plus_one(alpha: f64) -> f64 {
    match alpha {
        0.0 | 1.0 => 1.0,
        0.3 => GAMMA_1_3,
        0.5 => 0.5 * std::f64::consts::PI.sqrt(),
        2.0 => 2.0,
        2.7 => 2.7 * 1.7 * GAMMA_1_7,
        _ => panic!("no tabulated Gamma({alpha} + 1)"),
    }
}

/// `J_alpha(w) = sum_k (-1)^k (w/2)^(2k+alpha) / (k! Gamma(k+alpha+1))`, with the
/// terms generated by their ratio. Negative `w` only for integer `alpha`.
pub fn bessel_power_series(alpha: f64, w: f64) -> f64 {
    let g = gamma_alpha_plus_one(alpha);
    let half = 0.5 * w;
    let lead = if alpha == alpha.round() {
        half.powi(alpha as i32)
    } else {
        assert!(w > 0.0);
        half.powf(alpha)
    };
    let mut term = lead / g;
    let mut sum = term;
    let mut comp = 0.0;
    for k in 1..400 {
        term *= -half * half / (k as f64 * (k as f64 + alpha));
        // Kahan summation against the cancellation at large |w|
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-20 * sum.abs().max(1e-300) && k > 2 * (half.abs() as usize) {
            break;
        }
    }
    sum
}
