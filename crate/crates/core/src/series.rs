//! Maclaurin solution `R(t) = I + R_1 t + R_2 t^2 + ...` of `dR/dt = A(t) R`
//! (left orientation) or `dR/dt = R A(t)` (right orientation, the row-vector
//! convention of Markov chains), for `A(t) = A_0 + A_1 t + ... + A_p t^p`.
//!
//! Two independent constructions are provided:
//!
//! - [`compute_coefficients`] runs the fundamental recursion
//!   `n R_n = A_0 R_{n-1} + A_1 R_{n-2} + ... + A_{n-1}` (factors swapped for
//!   the right orientation). This is the production path.
//! - [`compute_coefficients_explicit`] sums `pi_m A_{m_1} ... A_{m_{n-q}}` over
//!   the restricted index sets. The number of words grows like a generalised
//!   Fibonacci sequence, so it is guarded and meant for validation.
//!
//! All bounds use the operator norm matching the orientation: the 1-norm (max
//! column sum) for left, the infinity-norm (max row sum) for right.

use crate::combinatorics::{enumerate_restricted_index_set, pi_denominator, restricted_cutoff, term_count};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{geometric_tail, polynomial_tail, truncated_majorant_coefficients};
use num_traits::ToPrimitive;

/// Largest number of words the explicit formula will expand.
pub const EXPLICIT_TERM_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `dR/dt = A(t) R(t)`
    Left,
    /// `dR/dt = R(t) A(t)`
    Right,
}

impl Orientation {
    /// Operator norm used for every bound in this orientation.
    pub fn norm(self, m: &Matrix) -> f64 {
        match self {
            Orientation::Left => m.norm_1(),
            Orientation::Right => m.norm_inf(),
        }
    }

    /// `coef * state` for left, `state * coef` for right.
    pub fn apply(self, coef: &Matrix, state: &Matrix) -> Matrix {
        match self {
            Orientation::Left => coef.matmul(state),
            Orientation::Right => state.matmul(coef),
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(Orientation::Left),
            "right" => Ok(Orientation::Right),
            other => Err(Error::InvalidArgument(format!("unknown orientation '{other}'"))),
        }
    }
}

/// Coefficients `A_0, ..., A_p` of a matrix polynomial evolution coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolyCoefficients {
    a: Vec<Matrix>,
    orientation: Orientation,
}

impl MatrixPolyCoefficients {
    pub fn new(a: Vec<Matrix>, orientation: Orientation) -> Result<Self> {
        let Some(first) = a.first() else {
            return Err(Error::InvalidArgument("at least one coefficient matrix is required".into()));
        };
        let dim = first.dim();
        if let Some((j, m)) = a.iter().enumerate().find(|(_, m)| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: format!("A_{j} of size {}x{}", m.dim(), m.dim()),
            });
        }
        Ok(MatrixPolyCoefficients { a, orientation })
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.a
    }

    pub fn coefficient(&self, j: usize) -> &Matrix {
        &self.a[j]
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.a[0].dim()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        MatrixPolyCoefficients { a: self.a.clone(), orientation }
    }

    /// `A(t)` by Horner's rule.
    pub fn eval(&self, t: f64) -> Matrix {
        let mut acc = Matrix::zeros(self.dim());
        for a in self.a.iter().rev() {
            acc = acc.scale(t);
            acc += a;
        }
        acc
    }

    /// Orientation norms `||A_j||`.
    pub fn norms(&self) -> Vec<f64> {
        self.a.iter().map(|m| self.orientation.norm(m)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Recursion,
    Explicit,
}

/// `R_0 = I, R_1, ..., R_N` with provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSeries {
    r: Vec<Matrix>,
    source: Source,
    orientation: Orientation,
}

impl MatrixSeries {
    pub fn coefficients(&self) -> &[Matrix] {
        &self.r
    }

    pub fn coefficient(&self, n: usize) -> &Matrix {
        &self.r[n]
    }

    pub fn order(&self) -> usize {
        self.r.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.r[0].dim()
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Horner evaluation of the degree-`N` matrix polynomial.
    pub fn evaluate(&self, t: f64) -> Matrix {
        let mut acc = Matrix::zeros(self.dim());
        for r in self.r.iter().rev() {
            acc = acc.scale(t);
            acc += r;
        }
        acc
    }
}

pub fn evaluate(series: &MatrixSeries, t: f64) -> Matrix {
    series.evaluate(t)
}

pub fn compute_coefficients(coeffs: &MatrixPolyCoefficients, order: usize) -> Result<MatrixSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    let dim = coeffs.dim();
    let orientation = coeffs.orientation();
    let mut r: Vec<Matrix> = Vec::with_capacity(order + 1);
    r.push(Matrix::identity(dim));
    for n in 1..=order {
        let mut acc = Matrix::zeros(dim);
        for (j, a) in coeffs.coefficients().iter().enumerate().take(n) {
            acc += &orientation.apply(a, &r[n - 1 - j]);
        }
        r.push(acc.scale(1.0 / n as f64));
    }
    Ok(MatrixSeries { r, source: Source::Recursion, orientation })
}

/// `R_n = sum_q sum_{m in S_{n,q,p}} pi_m A_m`, the word reversed for the
/// right orientation.
pub fn compute_coefficients_explicit(coeffs: &MatrixPolyCoefficients, n: usize) -> Result<Matrix> {
    if n < 1 {
        return Err(Error::InvalidArgument("coefficient index must be at least 1".into()));
    }
    let p = coeffs.degree();
    // a constant coefficient still enumerates with p = 1; words using A_1 are skipped
    let cap = p.max(1);
    let terms = term_count(n, cap);
    if terms > EXPLICIT_TERM_LIMIT {
        return Err(Error::TermGuard { terms, limit: EXPLICIT_TERM_LIMIT });
    }
    let dim = coeffs.dim();
    let mut total = Matrix::zeros(dim);
    for q in 0..=restricted_cutoff(n, cap) {
        for m in enumerate_restricted_index_set(n, q, cap)? {
            if m.max_entry() > p {
                continue;
            }
            let weight = 1.0 / pi_denominator(m.entries())?.to_f64().unwrap_or(f64::INFINITY);
            let mut word = Matrix::identity(dim);
            match coeffs.orientation() {
                Orientation::Left => {
                    for &j in m.entries() {
                        word = word.matmul(coeffs.coefficient(j));
                    }
                }
                Orientation::Right => {
                    for &j in m.entries().iter().rev() {
                        word = word.matmul(coeffs.coefficient(j));
                    }
                }
            }
            total.axpy(weight, &word);
        }
    }
    Ok(total)
}

/// Every coefficient up to `order` from the explicit formula.
pub fn explicit_series(coeffs: &MatrixPolyCoefficients, order: usize) -> Result<MatrixSeries> {
    let mut r = vec![Matrix::identity(coeffs.dim())];
    for n in 1..=order {
        r.push(compute_coefficients_explicit(coeffs, n)?);
    }
    Ok(MatrixSeries { r, source: Source::Explicit, orientation: coeffs.orientation() })
}

/// Truncation bound `sum_{n > N} r_n |t|^n` from a scalar majorant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBound {
    pub order: usize,
    pub t: f64,
    pub bound: f64,
    pub b: f64,
    pub d: f64,
    /// Extra uncertainty from cutting an analytic coefficient to a finite
    /// prefix; zero for genuinely polynomial input.
    pub prefix_uncertainty: f64,
}

impl TailBound {
    pub fn total(&self) -> f64 {
        self.bound + self.prefix_uncertainty
    }
}

/// Geometric envelope parameters with `||A_j|| <= d b^j` for every supplied `j`.
///
/// `d = ||A_0||` and then the smallest admissible `b`. When `A_0 = 0` but a
/// later coefficient is not, `b = 1` and `d = max_j ||A_j||`.
pub fn fit_majorant(coeffs: &MatrixPolyCoefficients) -> (f64, f64) {
    let norms = coeffs.norms();
    let d0 = norms[0];
    if norms.iter().all(|&x| x == 0.0) {
        return (0.0, 0.0);
    }
    if d0 == 0.0 {
        return (1.0, norms.iter().cloned().fold(0.0, f64::max));
    }
    let mut b: f64 = 0.0;
    for (j, &nj) in norms.iter().enumerate().skip(1) {
        if nj > 0.0 {
            // nudge up so that d b^j >= ||A_j|| survives rounding
            b = b.max((nj / d0).powf(1.0 / j as f64) * (1.0 + 4.0 * f64::EPSILON));
        }
    }
    (b, d0)
}

pub fn tail_bound(coeffs: &MatrixPolyCoefficients, order: usize, t: f64) -> TailBound {
    let (b, d) = fit_majorant(coeffs);
    let a: Vec<f64> = (0..=coeffs.degree()).map(|j| d * b.powi(j as i32)).collect();
    TailBound { order, t, bound: polynomial_tail(&a, t.abs(), order), b, d, prefix_uncertainty: 0.0 }
}

/// Envelope `||A_j|| <= d b^j` asserted for all `j`, including coefficients
/// beyond the supplied prefix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticTail {
    pub b: f64,
    pub d: f64,
}

/// Tail bound when the supplied coefficients are only a prefix of an analytic
/// family bounded by `tail`. The prefix-truncation term bounds the effect of
/// the unseen `A_j`, `j > p`, on `R_1 ... R_N`.
pub fn tail_bound_analytic(
    coeffs: &MatrixPolyCoefficients,
    tail: AnalyticTail,
    order: usize,
    t: f64,
) -> Result<TailBound> {
    let AnalyticTail { b, d } = tail;
    if !(b >= 0.0 && d >= 0.0 && b.is_finite() && d.is_finite()) {
        return Err(Error::InvalidArgument("envelope parameters must be finite and nonnegative".into()));
    }
    for (j, nj) in coeffs.norms().into_iter().enumerate() {
        if nj > d * b.powi(j as i32) * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "||A_{j}|| = {nj} exceeds the envelope d b^j = {}",
                d * b.powi(j as i32)
            )));
        }
    }
    let s = t.abs();
    let bound = geometric_tail(b, d, s, order);
    let full = crate::scalar::majorant_coefficients(b, d, order);
    let cut = truncated_majorant_coefficients(b, d, coeffs.degree(), order);
    let prefix_uncertainty: f64 = (1..=order)
        .map(|n| (full.r(n) - cut.r(n)).max(0.0) * s.powi(n as i32))
        .sum();
    Ok(TailBound { order, t, bound, b, d, prefix_uncertainty: prefix_uncertainty * (1.0 + 1e-10) })
}

/// `|| (F(t+h) - F(t-h)) / 2h - A(t) F(t) ||` for an arbitrary candidate
/// solution `F`, product order following the orientation.
pub fn residual_of(
    coeffs: &MatrixPolyCoefficients,
    f: impl Fn(f64) -> Matrix,
    t: f64,
    h: f64,
) -> f64 {
    let plus = f(t + h);
    let minus = f(t - h);
    let mut derivative = &plus - &minus;
    derivative = derivative.scale(0.5 / h);
    let rhs = coeffs.orientation().apply(&coeffs.eval(t), &f(t));
    coeffs.orientation().norm(&(&derivative - &rhs))
}

pub fn residual(coeffs: &MatrixPolyCoefficients, series: &MatrixSeries, t: f64, h: f64) -> f64 {
    residual_of(coeffs, |s| series.evaluate(s), t, h)
}

/// Truncated Taylor series of `exp(B(t))`, `B(t) = sum_j A_j t^{j+1} / (j+1)`,
/// up to and including `B^terms / terms!`. Only a solution when the family
/// `A(t)` commutes.
pub fn naive_exponential(coeffs: &MatrixPolyCoefficients, t: f64, terms: usize) -> Matrix {
    let dim = coeffs.dim();
    let mut b = Matrix::zeros(dim);
    for (j, a) in coeffs.coefficients().iter().enumerate() {
        b.axpy(t.powi(j as i32 + 1) / (j as f64 + 1.0), a);
    }
    let mut term = Matrix::identity(dim);
    let mut acc = term.clone();
    for k in 1..=terms.max(1) {
        term = term.matmul(&b).scale(1.0 / k as f64);
        acc += &term;
    }
    acc
}

/// Coefficients of `A(t0 + s)` as a polynomial in `s`:
/// `A~_j = sum_{k >= j} C(k, j) t0^{k-j} A_k`.
pub fn recenter(coeffs: &MatrixPolyCoefficients, t0: f64) -> MatrixPolyCoefficients {
    let p = coeffs.degree();
    let dim = coeffs.dim();
    let shifted = (0..=p)
        .map(|j| {
            let mut acc = Matrix::zeros(dim);
            let mut binom = 1.0;
            for k in j..=p {
                if k > j {
                    binom = binom * k as f64 / (k - j) as f64;
                }
                acc.axpy(binom * t0.powi((k - j) as i32), coeffs.coefficient(k));
            }
            acc
        })
        .collect();
    MatrixPolyCoefficients { a: shifted, orientation: coeffs.orientation() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub r: Matrix,
    /// Accumulated certified bound on `||R(t) - r||` from the per-step tails.
    pub error_bound: f64,
}

/// Grid `0 = t_0 < ... < t_K = T` with spacing `step` (the last interval may
/// be shorter).
pub fn step_grid(t_end: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidArgument(format!("step must be positive and finite, got {step}")));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::InvalidArgument(format!("end time must be finite and >= 0, got {t_end}")));
    }
    let steps = ((t_end / step) - 1e-9).ceil().max(1.0) as usize;
    let mut grid: Vec<f64> = (0..steps).map(|i| i as f64 * step).collect();
    grid.push(t_end);
    Ok(grid)
}

/// Trajectory of `R(t)` by composing local expansions: on each interval the
/// coefficient is re-centred, a fresh order-`N` series is built and the
/// propagator is multiplied in (on the left for left orientation, on the
/// right otherwise).
pub fn solve_stepped(
    coeffs: &MatrixPolyCoefficients,
    t_end: f64,
    step: f64,
    order: usize,
) -> Result<Vec<TrajectoryPoint>> {
    let grid = step_grid(t_end, step)?;
    solve_on_grid(coeffs, &grid, order)
}

/// As [`solve_stepped`] on a caller-supplied increasing grid starting at 0.
pub fn solve_on_grid(
    coeffs: &MatrixPolyCoefficients,
    grid: &[f64],
    order: usize,
) -> Result<Vec<TrajectoryPoint>> {
    if grid.first() != Some(&0.0) {
        return Err(Error::InvalidArgument("time grid must start at 0".into()));
    }
    let orientation = coeffs.orientation();
    let mut r = Matrix::identity(coeffs.dim());
    let mut err = 0.0;
    let mut out = vec![TrajectoryPoint { t: 0.0, r: r.clone(), error_bound: 0.0 }];
    for w in grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let h = t1 - t0;
        if h.is_nan() || h < 0.0 {
            return Err(Error::InvalidArgument("time grid must be nondecreasing".into()));
        }
        let local = recenter(coeffs, t0);
        let series = compute_coefficients(&local, order)?;
        let phi = series.evaluate(h);
        let tail = tail_bound(&local, order, h).bound;
        // R - r~ = Phi (R_prev - r~_prev) + (Phi - Phi~) r~_prev
        err = (orientation.norm(&phi) + tail) * err + tail * orientation.norm(&r);
        r = orientation.apply(&phi, &r);
        out.push(TrajectoryPoint { t: t1, r: r.clone(), error_bound: err });
    }
    Ok(out)
}

/// `A(t) = [[0, 1], [t, 0]]`, whose solution is not `exp(int_0^t A)`.
pub fn counterexample_coefficients() -> MatrixPolyCoefficients {
    let a0 = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).expect("square");
    let a1 = Matrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).expect("square");
    MatrixPolyCoefficients::new(vec![a0, a1], Orientation::Left).expect("consistent dims")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CounterexampleRow {
    pub t: f64,
    pub maclaurin_residual: f64,
    pub naive_residual: f64,
}

/// Residuals of the Maclaurin solution and of `exp(int_0^t A)` side by side.
pub fn counterexample_table(
    times: &[f64],
    order: usize,
    h: f64,
    naive_terms: usize,
) -> Result<Vec<CounterexampleRow>> {
    let coeffs = counterexample_coefficients();
    let series = compute_coefficients(&coeffs, order)?;
    Ok(times
        .iter()
        .map(|&t| CounterexampleRow {
            t,
            maclaurin_residual: residual(&coeffs, &series, t, h),
            naive_residual: residual_of(&coeffs, |s| naive_exponential(&coeffs, s, naive_terms), t, h),
        })
        .collect())
}
