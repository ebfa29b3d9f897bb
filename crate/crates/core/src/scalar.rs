//! The scalar problem `dr/dt = a(t) r(t)`, `r(0) = 1`, with
//! `a(t) = a_0 + a_1 t + ... + a_p t^p`.
//!
//! Besides the plain recursion and closed form, this module is the majorant
//! engine for the matrix series: if `||A_j|| <= a_j` then `||R_n|| <= r_n`
//! for the scalar series built from the nonnegative `a_j`. The tail sums
//! below turn that into certified truncation bounds.

use crate::error::{Error, Result};

/// Relative inflation applied to computed tail sums to absorb rounding in the
/// recursion (all terms are nonnegative, so the error is a few ulps per term).
const ROUNDING_MARGIN: f64 = 1e-10;
const MAX_TAIL_TERMS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarPolyCoefficient(Vec<f64>);

impl ScalarPolyCoefficient {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidArgument("coefficient list must be nonempty".into()));
        }
        if let Some(j) = a.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("coefficient a_{j} is not finite")));
        }
        Ok(ScalarPolyCoefficient(a))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &a| acc * t + a)
    }
}

/// Maclaurin coefficients `r_0 = 1, r_1, ..., r_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarSeries(Vec<f64>);

impl ScalarSeries {
    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn r(&self, n: usize) -> f64 {
        self.0[n]
    }

    /// Horner evaluation of the truncated series.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &r| acc * t + r)
    }
}

/// Forward substitution in `n r_n = sum_{j <= min(p, n-1)} a_j r_{n-1-j}`.
pub fn scalar_coefficients(a: &ScalarPolyCoefficient, order: usize) -> ScalarSeries {
    ScalarSeries(recursion(a.as_slice(), order))
}

fn recursion(a: &[f64], order: usize) -> Vec<f64> {
    let mut r = Vec::with_capacity(order + 1);
    r.push(1.0);
    for n in 1..=order {
        let s: f64 = a.iter().take(n).enumerate().map(|(j, aj)| aj * r[n - 1 - j]).sum();
        r.push(s / n as f64);
    }
    r
}

/// `r_n = sum_{q=0}^{floor(n/2)} a_0^{n-2q} a_1^q / ((n-2q)! q! 2^q)` for a
/// linear coefficient.
pub fn scalar_explicit_rn(a0: f64, a1: f64, n: usize) -> f64 {
    let mut fact = vec![1.0f64; n + 1];
    for k in 1..=n {
        fact[k] = fact[k - 1] * k as f64;
    }
    (0..=n / 2)
        .map(|q| {
            let k0 = n - 2 * q;
            a0.powi(k0 as i32) * a1.powi(q as i32) / (fact[k0] * fact[q] * 2f64.powi(q as i32))
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedForm {
    pub value: f64,
    /// Set when the exponent is too large for `f64`; `value` is then infinite.
    pub overflow: bool,
}

/// `exp(sum_j a_j t^{j+1} / (j + 1))`.
pub fn scalar_closed_form(a: &ScalarPolyCoefficient, t: f64) -> ClosedForm {
    let exponent: f64 = a
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, aj)| aj * t.powi(j as i32 + 1) / (j as f64 + 1.0))
        .sum();
    let value = exponent.exp();
    ClosedForm { value, overflow: value.is_infinite() }
}

/// `d c^{floor(n/2)} / floor(n/2)!`, the growth bound for the linear case.
pub fn coefficient_bound(c: f64, d: f64, n: usize) -> f64 {
    let h = n / 2;
    let mut v = d;
    for k in 1..=h {
        v *= c / k as f64;
    }
    v
}

/// Constants `(c, d)` for the linear-case bound: `c = max(|a_0|, |a_1|)` and
/// `d = max(1, max_{1 <= n < 2c} |r_n| floor(n/2)! / c^{floor(n/2)})`.
///
/// The floor of 1 covers `r_0 = 1`. With it, every odd step `n = 2k + 1 >= 2c`
/// and every even step of the induction close, so the window `n < 2c` is
/// sufficient.
pub fn bound_constants(a0: f64, a1: f64) -> (f64, f64) {
    let c = a0.abs().max(a1.abs());
    if c == 0.0 {
        return (0.0, 1.0);
    }
    let window = (2.0 * c).ceil() as usize;
    let r = recursion(&[a0, a1], window);
    let mut d: f64 = 1.0;
    for (n, rn) in r.iter().enumerate().skip(1) {
        if (n as f64) < 2.0 * c {
            d = d.max(rn.abs() / coefficient_bound(c, 1.0, n));
        }
    }
    (c, d)
}

/// Scalar series for the geometric family `a_j = d b^j`, all `j < N`
/// (higher `j` cannot reach order `N`).
pub fn majorant_coefficients(b: f64, d: f64, order: usize) -> ScalarSeries {
    let a: Vec<f64> = (0..order.max(1)).map(|j| d * b.powi(j as i32)).collect();
    ScalarSeries(recursion(&a, order))
}

/// Geometric family cut at degree `p`: `a_j = d b^j` for `j <= p`, zero after.
pub fn truncated_majorant_coefficients(b: f64, d: f64, p: usize, order: usize) -> ScalarSeries {
    let a: Vec<f64> = (0..=p).map(|j| d * b.powi(j as i32)).collect();
    ScalarSeries(recursion(&a, order))
}

/// Certified upper estimate of `sum_{n > order} r_n t^n` for the scalar
/// series with nonnegative polynomial coefficient `a`, `t >= 0`.
///
/// Terms are summed directly up to an index `M` independent of `order` (so
/// the result is nonincreasing in `order`); from `M` on, `v_n = r_n t^n`
/// satisfies `v_n <= (alpha / n) max(v_{n-1}, ..., v_{n-1-p})` with
/// `alpha = sum_j a_j t^{j+1}`, which bounds the remainder geometrically.
pub fn polynomial_tail(a: &[f64], t: f64, order: usize) -> f64 {
    assert!(t >= 0.0, "tail requires t >= 0");
    assert!(a.iter().all(|&x| x >= 0.0), "majorant coefficients must be nonnegative");
    if t == 0.0 || a.iter().all(|&x| x == 0.0) {
        return 0.0;
    }
    let p = a.len() - 1;
    let w: Vec<f64> = a.iter().enumerate().map(|(j, aj)| aj * t.powi(j as i32 + 1)).collect();
    let alpha: f64 = w.iter().sum();
    if !alpha.is_finite() {
        return f64::INFINITY;
    }

    let mut v = vec![1.0f64];
    let mut head_sum = 1.0;
    let remainder_at = |v: &[f64], m: usize| -> f64 {
        let theta = alpha / m as f64;
        let window = v[m.saturating_sub(p + 1)..m].iter().fold(0.0f64, |x, &y| x.max(y));
        (p + 1) as f64 * window * theta / (1.0 - theta)
    };

    // global stopping index
    let min_m = ((2.0 * alpha).ceil() as usize).max(p + 1).max(1);
    let mut stop = None;
    let mut m = 1;
    while m <= MAX_TAIL_TERMS {
        if m >= min_m {
            let rem = remainder_at(&v, m);
            if rem <= head_sum * f64::EPSILON * 1e-2 || rem == 0.0 {
                stop = Some(m);
                break;
            }
        }
        let vm: f64 = w.iter().take(m).enumerate().map(|(j, wj)| wj * v[m - 1 - j]).sum::<f64>()
            / m as f64;
        v.push(vm);
        head_sum += vm;
        m += 1;
    }
    let Some(m0) = stop else { return f64::INFINITY };

    let stop_at = m0.max(order + 1);
    while v.len() < stop_at {
        let m = v.len();
        let vm: f64 = w.iter().take(m).enumerate().map(|(j, wj)| wj * v[m - 1 - j]).sum::<f64>()
            / m as f64;
        v.push(vm);
    }
    let direct: f64 = v[order + 1..stop_at].iter().sum();
    (direct + remainder_at(&v, stop_at)) * (1.0 + ROUNDING_MARGIN)
}

/// Certified upper estimate of `sum_{n > order} r_n t^n` for the infinite
/// geometric family `a_j = d b^j`, whose series is `(1 - b t)^{-d/b}`.
/// Infinite when `b t >= 1`.
pub fn geometric_tail(b: f64, d: f64, t: f64, order: usize) -> f64 {
    assert!(t >= 0.0 && b >= 0.0 && d >= 0.0, "tail requires nonnegative b, d, t");
    if b == 0.0 {
        return polynomial_tail(&[d], t, order);
    }
    if t == 0.0 || d == 0.0 {
        return 0.0;
    }
    let x = b * t;
    if x >= 1.0 {
        return f64::INFINITY;
    }
    let gamma = d / b;
    let ratio_sup = |m: usize| x * ((gamma + m as f64) / (m as f64 + 1.0)).max(1.0);

    let mut v = vec![1.0f64];
    let mut head_sum = 1.0;
    let mut stop = None;
    for m in 1..=MAX_TAIL_TERMS {
        let next = v[m - 1] * (gamma + (m - 1) as f64) / m as f64 * x;
        v.push(next);
        head_sum += next;
        let rho = ratio_sup(m);
        if rho < 1.0 && v[m] / (1.0 - rho) <= head_sum * f64::EPSILON * 1e-2 {
            stop = Some(m);
            break;
        }
    }
    let Some(m0) = stop else { return f64::INFINITY };
    let stop_at = m0.max(order + 1);
    while v.len() <= stop_at {
        let m = v.len();
        v.push(v[m - 1] * (gamma + (m - 1) as f64) / m as f64 * x);
    }
    let direct: f64 = v[order + 1..stop_at].iter().sum();
    let rem = v[stop_at] / (1.0 - ratio_sup(stop_at));
    (direct + rem) * (1.0 + ROUNDING_MARGIN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(a: &[f64]) -> ScalarPolyCoefficient {
        ScalarPolyCoefficient::new(a.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn early_coefficients() {
        let (a0, a1) = (1.7, -0.6);
        let s = scalar_coefficients(&coeffs(&[a0, a1]), 4);
        assert_eq!(s.r(0), 1.0);
        assert!(close(s.r(1), a0, 1e-15));
        assert!(close(s.r(2), a0 * a0 / 2.0 + a1 / 2.0, 1e-15));
        assert!(close(s.r(3), a0.powi(3) / 6.0 + a0 * a1 / 2.0, 1e-15));
        assert!(close(s.r(4), a0.powi(4) / 24.0 + a0 * a0 * a1 / 4.0 + a1 * a1 / 8.0, 1e-14));
    }

    #[test]
    fn seventh_coefficient_unit_inputs() {
        let s = scalar_coefficients(&coeffs(&[1.0, 1.0]), 7);
        let expected = 1.0 / 5040.0 + 1.0 / 240.0 + 1.0 / 48.0 + 1.0 / 48.0;
        assert!(close(s.r(7), expected, 1e-14));
    }

    #[test]
    fn autonomous_case() {
        let a0 = -1.3f64;
        let s = scalar_coefficients(&coeffs(&[a0, 0.0]), 12);
        let mut fact = 1.0;
        for n in 1..=12 {
            fact *= n as f64;
            assert!(close(s.r(n), a0.powi(n as i32) / fact, 1e-13));
            assert!(close(scalar_explicit_rn(a0, 0.0, n), a0.powi(n as i32) / fact, 1e-13));
        }
    }

    #[test]
    fn explicit_rn_examples() {
        let (a0, a1) = (0.4, 2.5);
        assert!(close(scalar_explicit_rn(a0, a1, 3), a0.powi(3) / 6.0 + a0 * a1 / 2.0, 1e-15));
        let hand = 16.0 / 24.0 + 4.0 * 3.0 / 4.0 + 9.0 / 8.0;
        assert!(close(scalar_explicit_rn(2.0, 3.0, 4), hand, 1e-15));
    }

    #[test]
    fn explicit_matches_recursion_on_grid() {
        for &a0 in &[-4.0, -2.5, -1.0, 0.0, 0.5, 3.0, 4.0] {
            for &a1 in &[-4.0, -1.5, 0.0, 1.0, 2.0, 4.0] {
                let s = scalar_coefficients(&coeffs(&[a0, a1]), 20);
                for n in 1..=20 {
                    let e = scalar_explicit_rn(a0, a1, n);
                    let scale = scalar_explicit_rn(a0.abs(), a1.abs(), n);
                    assert!((s.r(n) - e).abs() <= 1e-12 * scale, "a0={a0} a1={a1} n={n}");
                }
            }
        }
    }

    #[test]
    fn closed_form_values() {
        let a = coeffs(&[0.3, -0.8]);
        let t = 1.4;
        let cf = scalar_closed_form(&a, t);
        assert!(close(cf.value, (0.3 * t - 0.8 * t * t / 2.0).exp(), 1e-15));
        assert!(!cf.overflow);
        assert_eq!(scalar_closed_form(&a, 0.0).value, 1.0);
        let big = scalar_closed_form(&coeffs(&[800.0]), 1.0);
        assert!(big.overflow && big.value.is_infinite());
    }

    #[test]
    fn partial_sums_converge() {
        let a = coeffs(&[1.0, 1.0]);
        let exact = scalar_closed_form(&a, 0.5).value;
        let s = scalar_coefficients(&a, 30);
        assert!((s.evaluate(0.5) - exact).abs() < 1e-12);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(coefficient_bound(3.0, 2.5, 1), 2.5);
        assert!(close(coefficient_bound(2.0, 1.0, 6), 8.0 / 6.0, 1e-15));
    }

    #[test]
    fn linear_bound_sweep() {
        let grid = [-3.0, -1.2, -0.3, 0.0, 0.25, 0.7, 1.0, 1.6, 2.9];
        for &a0 in &grid {
            for &a1 in &grid {
                let (c, d) = bound_constants(a0, a1);
                if c == 0.0 {
                    continue;
                }
                let s = scalar_coefficients(&coeffs(&[a0, a1]), 40);
                for n in 1..=40 {
                    let bound = coefficient_bound(c, d, n);
                    assert!(s.r(n).abs() <= bound * (1.0 + 1e-12), "a0={a0} a1={a1} n={n}");
                }
            }
        }
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(majorant_coefficients(0.7, 1.9, 1).r(1), 1.9);
        // a = (1, 1, 1): r_1 = 1, r_2 = (1 + 1)/2 = 1, r_3 = (1 + 1 + 1)/3 = 1
        let s = majorant_coefficients(1.0, 1.0, 3);
        assert_eq!(s.coefficients(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn geometric_family_matches_binomial_series() {
        // (1 - b t)^{-d/b} has coefficients (d/b)_n / n! b^n
        let (b, d) = (0.8, 1.3);
        let s = majorant_coefficients(b, d, 15);
        let gamma = d / b;
        let mut c = 1.0;
        for n in 1..=15 {
            c *= (gamma + (n - 1) as f64) / n as f64 * b;
            assert!(close(s.r(n), c, 1e-13), "n={n}");
        }
    }

    #[test]
    fn polynomial_tail_dominates_and_decreases() {
        let a = [1.0, 1.0];
        let t = 0.9;
        let s = scalar_coefficients(&coeffs(&a), 200);
        let mut prev = f64::INFINITY;
        for order in 0..40 {
            let bound = polynomial_tail(&a, t, order);
            let actual: f64 = (order + 1..=200).map(|n| s.r(n) * t.powi(n as i32)).sum();
            assert!(bound >= actual, "order={order}");
            if order <= 20 {
                assert!(bound <= actual * (1.0 + 1e-6), "order={order} too loose");
            }
            assert!(bound <= prev);
            prev = bound;
        }
        assert_eq!(polynomial_tail(&[0.0, 0.0], 1.0, 3), 0.0);
        assert_eq!(polynomial_tail(&a, 0.0, 3), 0.0);
    }

    #[test]
    fn geometric_tail_behaviour() {
        let (b, d, t): (f64, f64, f64) = (0.5, 1.0, 1.0);
        let truth_total = (1.0 - b * t).powf(-d / b);
        let s = majorant_coefficients(b, d, 30);
        let head = s.evaluate(t);
        let bound = geometric_tail(b, d, t, 30);
        assert!(bound >= (truth_total - head) * (1.0 - 1e-9));
        assert!(geometric_tail(b, d, 2.0, 10).is_infinite());
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert!(ScalarPolyCoefficient::new(vec![]).is_err());
        assert!(ScalarPolyCoefficient::new(vec![1.0, f64::NAN]).is_err());
    }
}
