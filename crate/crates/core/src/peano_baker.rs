//! Peano-Baker iteration `U_0 = I`, `U_n(t) = int_0^t A(s) U_{n-1}(s) ds` for
//! polynomial `A(t)`, carried out exactly on matrix-polynomial coefficients.
//! No quadrature is involved: products are polynomial convolutions and the
//! integral divides each coefficient by its new exponent.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::{compute_coefficients, MatrixPolyCoefficients, Orientation};

/// `sum_k C_k t^k` where `coefficients()[k] = C_k`; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolynomial {
    dim: usize,
    coeffs: Vec<Matrix>,
}

impl MatrixPolynomial {
    pub fn new(dim: usize, coeffs: Vec<Matrix>) -> Result<Self> {
        if let Some(m) = coeffs.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: format!("{}x{}", m.dim(), m.dim()) });
        }
        let mut p = MatrixPolynomial { dim, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(dim: usize) -> Self {
        MatrixPolynomial { dim, coeffs: Vec::new() }
    }

    pub fn identity(dim: usize) -> Self {
        MatrixPolynomial { dim, coeffs: vec![Matrix::identity(dim)] }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Matrix::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coefficient(&self, k: usize) -> Matrix {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|m| !m.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drop every power above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(max_degree + 1);
        let mut p = MatrixPolynomial { dim: self.dim, coeffs };
        p.trim();
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coefficient(k) + &other.coefficient(k)).collect();
        let mut p = MatrixPolynomial { dim: self.dim, coeffs };
        p.trim();
        p
    }

    /// Product `self * other` keeping powers up to `max_degree`.
    fn mul_capped(&self, other: &Self, max_degree: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return MatrixPolynomial::zero(self.dim);
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree + 1);
        let mut coeffs = vec![Matrix::zeros(self.dim); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += &a.matmul(b);
            }
        }
        let mut p = MatrixPolynomial { dim: self.dim, coeffs };
        p.trim();
        p
    }

    /// `int_0^t`, shifting every power up by one.
    fn integrate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Matrix::zeros(self.dim)];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c.scale(1.0 / (k + 1) as f64)));
        MatrixPolynomial { dim: self.dim, coeffs }
    }

    pub fn evaluate(&self, t: f64) -> Matrix {
        let mut acc = Matrix::zeros(self.dim);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t);
            acc += c;
        }
        acc
    }
}

fn coefficient_polynomial(coeffs: &MatrixPolyCoefficients) -> MatrixPolynomial {
    let mut p = MatrixPolynomial { dim: coeffs.dim(), coeffs: coeffs.coefficients().to_vec() };
    p.trim();
    p
}

/// Next iterate, keeping powers up to `max_degree`.
fn step(a: &MatrixPolynomial, prev: &MatrixPolynomial, orientation: Orientation, max_degree: usize) -> MatrixPolynomial {
    // integrating raises degrees by one, so the product may stop one lower
    let cap = max_degree.saturating_sub(1);
    let product = match orientation {
        Orientation::Left => a.mul_capped(prev, cap),
        Orientation::Right => prev.mul_capped(a, cap),
    };
    if max_degree == 0 {
        return MatrixPolynomial::zero(a.dim);
    }
    product.integrate()
}

/// The `n`-th iterate in full (degree `(p+1) n`).
pub fn pb_term(coeffs: &MatrixPolyCoefficients, n: usize) -> MatrixPolynomial {
    let a = coefficient_polynomial(coeffs);
    let full = (coeffs.degree() + 1) * n;
    let mut u = MatrixPolynomial::identity(coeffs.dim());
    for _ in 0..n {
        u = step(&a, &u, coeffs.orientation(), full);
    }
    u
}

/// `U_0 + ... + U_N` in full.
pub fn pb_partial_sum(coeffs: &MatrixPolyCoefficients, order: usize) -> MatrixPolynomial {
    pb_partial_sum_truncated(coeffs, order, (coeffs.degree() + 1) * order)
}

/// `U_0 + ... + U_N` with every power above `max_degree` discarded during the
/// iteration. Equal to truncating the full sum afterwards.
pub fn pb_partial_sum_truncated(coeffs: &MatrixPolyCoefficients, order: usize, max_degree: usize) -> MatrixPolynomial {
    let a = coefficient_polynomial(coeffs);
    let mut u = MatrixPolynomial::identity(coeffs.dim());
    let mut sum = u.clone();
    for n in 1..=order {
        // U_n starts at t^n, nothing left to keep
        if n > max_degree {
            break;
        }
        u = step(&a, &u, coeffs.orientation(), max_degree);
        sum = sum.add(&u);
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeGap {
    pub degree: usize,
    /// Largest entrywise `|[t^k] PB - R_k|`.
    pub abs_gap: f64,
    /// `abs_gap / max|R_k|`, or `abs_gap` when `R_k = 0`.
    pub rel_gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub order: usize,
    pub gaps: Vec<DegreeGap>,
}

impl EquivalenceReport {
    pub fn max_abs_gap(&self) -> f64 {
        self.gaps.iter().map(|g| g.abs_gap).fold(0.0, f64::max)
    }

    pub fn max_rel_gap(&self) -> f64 {
        self.gaps.iter().map(|g| g.rel_gap).fold(0.0, f64::max)
    }
}

/// Per-degree gap between the degree-`N` truncation of the Peano-Baker sum
/// and the recursion coefficients `R_0 ... R_N`.
pub fn pb_equivalence_report(coeffs: &MatrixPolyCoefficients, order: usize) -> Result<EquivalenceReport> {
    let series = compute_coefficients(coeffs, order)?;
    let pb = pb_partial_sum_truncated(coeffs, order, order);
    let gaps = (0..=order)
        .map(|k| {
            let r = series.coefficient(k);
            let abs_gap = pb.coefficient(k).max_abs_diff(r);
            let scale = r.max_abs();
            DegreeGap { degree: k, abs_gap, rel_gap: if scale > 0.0 { abs_gap / scale } else { abs_gap } }
        })
        .collect();
    Ok(EquivalenceReport { order, gaps })
}
