//! Birth-death chain with rates `lambda(t) = lambda_0 + lambda_1 t` and
//! `mu(t) = mu_0 + mu_1 t`, truncated to finitely many states. Distributions
//! are row vectors and evolve as `p(t) = p(0) R(t)` with `dR/dt = R A(t)`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::{compute_coefficients, solve_stepped, MatrixPolyCoefficients, MatrixSeries, Orientation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    /// Last row `(..., mu, -mu)`: no births out of the last state, so every
    /// row sums to zero and mass is conserved.
    #[default]
    AbsorbLast,
    /// Plain truncation, last row `(..., mu, -(lambda + mu))`: births out of
    /// the last state are lost and show up as leakage.
    ReflectNone,
}

impl std::str::FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "absorb_last" | "absorb" => Ok(Boundary::AbsorbLast),
            "reflect_none" | "none" | "raw" => Ok(Boundary::ReflectNone),
            other => Err(Error::InvalidArgument(format!("unknown boundary '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BirthDeathSpec {
    pub lambda: [f64; 2],
    pub mu: [f64; 2],
    pub states: usize,
    pub boundary: Boundary,
}

impl BirthDeathSpec {
    /// `lambda_0, mu_0` must be positive; the slopes may be zero, which gives
    /// the time-homogeneous chain.
    pub fn new(lambda: [f64; 2], mu: [f64; 2], states: usize, boundary: Boundary) -> Result<Self> {
        let ok = |x: f64, strict: bool| x.is_finite() && if strict { x > 0.0 } else { x >= 0.0 };
        if !ok(lambda[0], true) || !ok(mu[0], true) {
            return Err(Error::InvalidArgument("lambda_0 and mu_0 must be positive".into()));
        }
        if !ok(lambda[1], false) || !ok(mu[1], false) {
            return Err(Error::InvalidArgument("lambda_1 and mu_1 must be nonnegative".into()));
        }
        check_states(states)?;
        Ok(BirthDeathSpec { lambda, mu, states, boundary })
    }

    /// `A_0` and `A_1`.
    pub fn generators(&self) -> Result<[Matrix; 2]> {
        Ok([
            build_generator(self.lambda[0], self.mu[0], self.states, self.boundary)?,
            build_generator(self.lambda[1], self.mu[1], self.states, self.boundary)?,
        ])
    }

    pub fn coefficients(&self) -> Result<MatrixPolyCoefficients> {
        let [a0, a1] = self.generators()?;
        MatrixPolyCoefficients::new(vec![a0, a1], Orientation::Right)
    }
}

fn check_states(states: usize) -> Result<()> {
    if states < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 states, got {states}")));
    }
    Ok(())
}

/// Tridiagonal `lambda U + mu L`: first row `(-lambda, lambda, 0, ...)`,
/// interior rows `(mu, -(lambda + mu), lambda)`, last row per `boundary`.
pub fn build_generator(lam: f64, mu: f64, states: usize, boundary: Boundary) -> Result<Matrix> {
    check_states(states)?;
    let n = states;
    let mut a = Matrix::zeros(n);
    a.set(0, 0, -lam);
    a.set(0, 1, lam);
    for i in 1..n - 1 {
        a.set(i, i - 1, mu);
        a.set(i, i, -(lam + mu));
        a.set(i, i + 1, lam);
    }
    a.set(n - 1, n - 2, mu);
    a.set(
        n - 1,
        n - 1,
        match boundary {
            Boundary::AbsorbLast => -mu,
            Boundary::ReflectNone => -(lam + mu),
        },
    );
    Ok(a)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTrajectory {
    pub times: Vec<f64>,
    /// `p(t)` for each time, never renormalised.
    pub rows: Vec<Vec<f64>>,
    /// `|1 - sum_i p_i(t)|`
    pub leakage: Vec<f64>,
    /// Certified bound on the truncation error of each row (1-norm).
    pub error_bounds: Vec<f64>,
}

/// `e_1`: all mass in the first state.
pub fn first_state(states: usize) -> Vec<f64> {
    let mut p = vec![0.0; states];
    p[0] = 1.0;
    p
}

/// Trajectory on `steps` equal intervals of `[0, T]` plus the order-`N`
/// series of `R` at the origin. `initial` defaults to [`first_state`].
pub fn solve_bdp(
    spec: &BirthDeathSpec,
    t_end: f64,
    steps: usize,
    order: usize,
    initial: Option<&[f64]>,
) -> Result<(DistributionTrajectory, MatrixSeries)> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if !t_end.is_finite() || t_end <= 0.0 {
        return Err(Error::InvalidArgument(format!("end time must be positive and finite, got {t_end}")));
    }
    let p0 = match initial {
        Some(p) if p.len() != spec.states => {
            return Err(Error::DimensionMismatch {
                expected: spec.states,
                found: format!("initial vector of length {}", p.len()),
            })
        }
        Some(p) => p.to_vec(),
        None => first_state(spec.states),
    };
    let coeffs = spec.coefficients()?;
    let series = compute_coefficients(&coeffs, order)?;
    let points = solve_stepped(&coeffs, t_end, t_end / steps as f64, order)?;
    let norm0: f64 = p0.iter().map(|x| x.abs()).sum();
    let mut traj = DistributionTrajectory { times: vec![], rows: vec![], leakage: vec![], error_bounds: vec![] };
    for pt in points {
        let row = pt.r.left_apply(&p0);
        traj.leakage.push((1.0 - row.iter().sum::<f64>()).abs());
        traj.times.push(pt.t);
        traj.rows.push(row);
        traj.error_bounds.push(norm0 * pt.error_bound);
    }
    Ok((traj, series))
}

/// Entries below this are reported as negative probabilities.
pub const NEGATIVE_TOLERANCE: f64 = -1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StochasticityRow {
    pub t: f64,
    pub leakage: f64,
    pub min_entry: f64,
    pub negative: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StochasticityReport {
    pub rows: Vec<StochasticityRow>,
}

impl StochasticityReport {
    pub fn max_leakage(&self) -> f64 {
        self.rows.iter().map(|r| r.leakage).fold(0.0, f64::max)
    }

    pub fn min_entry(&self) -> f64 {
        self.rows.iter().map(|r| r.min_entry).fold(f64::INFINITY, f64::min)
    }

    pub fn any_negative(&self) -> bool {
        self.rows.iter().any(|r| r.negative)
    }
}

pub fn stochasticity_report(traj: &DistributionTrajectory) -> StochasticityReport {
    let rows = traj
        .times
        .iter()
        .zip(&traj.rows)
        .zip(&traj.leakage)
        .map(|((&t, row), &leakage)| {
            let min_entry = row.iter().cloned().fold(f64::INFINITY, f64::min);
            StochasticityRow { t, leakage, min_entry, negative: min_entry < NEGATIVE_TOLERANCE }
        })
        .collect();
    StochasticityReport { rows }
}
