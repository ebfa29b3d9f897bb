//! Explicit Maclaurin-series solutions of the non-autonomous linear evolution
//! equation `dR/dt = A(t) R(t)`, `R(0) = I` (and the row-convention variant
//! `dR/dt = R(t) A(t)`), for matrix coefficients with polynomial time
//! dependence `A(t) = A_0 + A_1 t + ... + A_p t^p`.
//!
//! The crate is organised around independent routes to the same answer:
//!
//! - [`series`] builds `R(t) = I + R_1 t + R_2 t^2 + ...` from the fundamental
//!   recursion `n R_n = A_0 R_{n-1} + ... + A_{n-1}` and, separately, from the
//!   closed-form sum over noncommutative index sets weighted by the exact
//!   rationals of [`combinatorics`].
//! - [`peano_baker`] performs the iterated-integral construction exactly on
//!   matrix polynomials and serves as an oracle for the series engine.
//! - [`scalar`] solves the 1x1 problem in closed form and supplies the scalar
//!   majorants behind the truncation bounds.
//! - [`shift_algebra`] and [`bdp`] cover the birth-death application, where the
//!   generator splits into shift operators `A_j = lambda_j U - mu_j S U`.
//!
//! ```
//! use maclaurin_core::matrix::Matrix;
//! use maclaurin_core::series::{compute_coefficients, MatrixPolyCoefficients, Orientation};
//!
//! let a0 = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
//! let a1 = Matrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
//! let coeffs = MatrixPolyCoefficients::new(vec![a0, a1], Orientation::Left).unwrap();
//! let series = compute_coefficients(&coeffs, 20).unwrap();
//! let r = series.evaluate(0.5);
//! assert!((r.get(0, 0) - 1.0).abs() < 0.1);
//! ```

pub mod bdp;
pub mod combinatorics;
pub mod error;
pub mod format;
pub mod matfile;
pub mod matrix;
pub mod peano_baker;
pub mod scalar;
pub mod series;
pub mod shift_algebra;

pub use error::{Error, Result};
pub use matrix::Matrix;

/// Exact signed rational with arbitrary-precision numerator and denominator,
/// always normalised to lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
