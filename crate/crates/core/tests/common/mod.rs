//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! the series engines: products, exponentials and integrators are written
//! out directly so they can serve as independent references.
#![allow(dead_code)]

use maclaurin_core::series::{MatrixPolyCoefficients, Orientation};
use maclaurin_core::Matrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mat(rows: &[&[f64]]) -> Matrix {
    Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn linear_3x3(orientation: Orientation) -> MatrixPolyCoefficients {
    let a0 = mat(&[&[1.0, -1.0, 2.0], &[1.0, -2.0, 1.0], &[2.0, 1.0, 1.0]]);
    let a1 = mat(&[&[2.0, 1.0, 3.0], &[-2.0, 1.0, 2.0], &[-3.0, 2.0, 1.0]]);
    MatrixPolyCoefficients::new(vec![a0, a1], orientation).unwrap()
}

pub fn scalar_coeffs(a: &[f64]) -> MatrixPolyCoefficients {
    MatrixPolyCoefficients::new(a.iter().map(|&x| mat(&[&[x]])).collect(), Orientation::Left).unwrap()
}

/// Integer entries in `[-3, 3]`, dimension `1..=max_dim`, degree `0..=max_p`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_dim: usize, max_p: usize, orientation: Orientation) -> MatrixPolyCoefficients {
    let dim = rng.gen_range(1..=max_dim);
    let p = rng.gen_range(0..=max_p);
    let a = (0..=p).map(|_| Matrix::from_fn(dim, |_, _| rng.gen_range(-3i32..=3) as f64)).collect();
    MatrixPolyCoefficients::new(a, orientation).unwrap()
}

fn poly_at(coeffs: &MatrixPolyCoefficients, t: f64) -> Matrix {
    let mut acc = Matrix::zeros(coeffs.dim());
    for (j, a) in coeffs.coefficients().iter().enumerate() {
        acc.axpy(t.powi(j as i32), a);
    }
    acc
}

fn rhs(coeffs: &MatrixPolyCoefficients, t: f64, r: &Matrix) -> Matrix {
    let a = poly_at(coeffs, t);
    match coeffs.orientation() {
        Orientation::Left => a.matmul(r),
        Orientation::Right => r.matmul(&a),
    }
}

/// Classical fourth-order Runge-Kutta from `R(0) = I` with `steps` equal steps.
pub fn rk4(coeffs: &MatrixPolyCoefficients, t_end: f64, steps: usize) -> Matrix {
    let h = t_end / steps as f64;
    let mut r = Matrix::identity(coeffs.dim());
    for i in 0..steps {
        let t = i as f64 * h;
        let k1 = rhs(coeffs, t, &r);
        let mut y = r.clone();
        y.axpy(h / 2.0, &k1);
        let k2 = rhs(coeffs, t + h / 2.0, &y);
        let mut y = r.clone();
        y.axpy(h / 2.0, &k2);
        let k3 = rhs(coeffs, t + h / 2.0, &y);
        let mut y = r.clone();
        y.axpy(h, &k3);
        let k4 = rhs(coeffs, t + h, &y);
        r.axpy(h / 6.0, &k1);
        r.axpy(h / 3.0, &k2);
        r.axpy(h / 3.0, &k3);
        r.axpy(h / 6.0, &k4);
    }
    r
}

/// `exp(M)` by scaling and squaring with a degree-20 Taylor polynomial.
pub fn expm(m: &Matrix) -> Matrix {
    let norm = m.norm_inf();
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.25 {
        squarings += 1;
    }
    let scaled = m.scale(1.0 / 2f64.powi(squarings));
    let mut term = Matrix::identity(m.dim());
    let mut acc = term.clone();
    for k in 1..=20 {
        term = term.matmul(&scaled).scale(1.0 / k as f64);
        acc += &term;
    }
    for _ in 0..squarings {
        acc = acc.matmul(&acc);
    }
    acc
}

/// `p0 exp(t Q)` for a generator `Q` by uniformization:
/// `sum_k Poisson(k; L t) p0 P^k` with `P = I + Q / L`.
pub fn uniformized(q: &Matrix, p0: &[f64], t: f64) -> Vec<f64> {
    let n = q.dim();
    let rate = (0..n).map(|i| -q.get(i, i)).fold(0.0, f64::max);
    let mut p = Matrix::identity(n);
    p.axpy(1.0 / rate, q);
    let lt = rate * t;
    let mut weight = (-lt).exp();
    let mut v = p0.to_vec();
    let mut out: Vec<f64> = v.iter().map(|x| x * weight).collect();
    let mut k = 0usize;
    let mut mass = weight;
    while 1.0 - mass > 1e-15 && k < 10_000 {
        k += 1;
        v = p.left_apply(&v);
        weight *= lt / k as f64;
        mass += weight;
        for (o, x) in out.iter_mut().zip(&v) {
            *o += weight * x;
        }
    }
    out
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
