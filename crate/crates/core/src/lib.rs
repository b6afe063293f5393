//! Complementary Romanovski-Routh polynomials and the functions built on them.
//!
//! The crate covers the polynomial family `P_n(b; x)` with `b = lambda + i eta`,
//! its chain-sequence coefficients, the associated orthogonal and
//! para-orthogonal polynomials on the unit circle, quadrature against the
//! orthogonality measures, the zeros and their electrostatic interpretation,
//! and the confluent hypergeometric stack (extended regular Coulomb wave
//! functions, Bessel functions, generating functions).

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod cli;
pub mod coulomb;
pub mod crr;
pub(crate) mod dd;
pub mod error;
pub mod gamma;
pub mod hypergeometric;
pub mod opuc;
pub mod param;
pub mod poly;
pub mod quadrature;
pub mod zeros;

pub use error::{CrrError, Result};
pub use param::{ParamB, SeriesControl};
pub use poly::{ComplexPolynomial, RealPolynomial};
