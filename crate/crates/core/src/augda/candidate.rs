use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AugdaError, FunctionalEquation};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_0f_da;

/// Sample points are drawn log-uniformly from `[1e-3, 1e3]` per coordinate.
pub const SAMPLE_LOG10_RANGE: (f64, f64) = (-3.0, 3.0);

/// The two P-families of closed-form solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `(c / (1 + sum x_i^P))^(1/P)`, solving the `alpha = -1` equation.
    PeriodForm,
    /// `(k (sum x_i^P + sum_{i<j} (x_i x_j)^P))^(1/P)`, solving `alpha = 2`.
    DistanceForm,
}

impl Family {
    /// The functional-equation exponent this family solves.
    pub fn alpha(self) -> i64 {
        match self {
            Family::PeriodForm => -1,
            Family::DistanceForm => 2,
        }
    }
}

/// Anything that can be plugged into a functional equation.
pub trait TrialFunction {
    fn eval(&self, x: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64> TrialFunction for F {
    fn eval(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CandidateSolution {
    pub family: Family,
    pub power: u32,
    pub constant: f64,
}

pub fn candidate(family: Family, power: u32, constant: f64) -> Result<CandidateSolution, AugdaError> {
    if power == 0 {
        return Err(AugdaError::InvalidArgument("P must be a positive integer".into()));
    }
    if !(constant > 0.0 && constant.is_finite()) {
        return Err(AugdaError::NonPositive {
            name: "constant",
            value: constant,
        });
    }
    Ok(CandidateSolution {
        family,
        power,
        constant,
    })
}

/// `value^(1/p)` using the correctly rounded roots where they exist.
pub(crate) fn root(value: f64, p: u32) -> f64 {
    match p {
        1 => value,
        2 => value.sqrt(),
        3 => value.cbrt(),
        _ => value.powf(1.0 / p as f64),
    }
}

impl TrialFunction for CandidateSolution {
    fn eval(&self, x: &[f64]) -> f64 {
        let p = self.power as i32;
        match self.family {
            Family::PeriodForm => {
                let sum = x.iter().fold(1.0, |acc, &xi| acc + xi.powi(p));
                root(self.constant / sum, self.power)
            }
            Family::DistanceForm => {
                let mut sum: f64 = x.iter().map(|&xi| xi.powi(p)).sum();
                for i in 0..x.len() {
                    for j in i + 1..x.len() {
                        sum += (x[i] * x[j]).powi(p);
                    }
                }
                root(self.constant * sum, self.power)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_residual: f64,
    pub worst_point: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify_functional_equation(
    f: &impl TrialFunction,
    fe: &FunctionalEquation,
    samples: usize,
    tol: f64,
) -> Result<VerificationReport, AugdaError> {
    verify_functional_equation_seeded(f, fe, samples, tol, DEFAULT_SEED)
}

/// Maximum relative residual `|psi(x) - x_1^alpha psi(T x)| / |psi(x)|` over
/// seeded log-uniform sample points.
pub fn verify_functional_equation_seeded(
    f: &impl TrialFunction,
    fe: &FunctionalEquation,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport, AugdaError> {
    if samples == 0 {
        return Err(AugdaError::InvalidArgument("samples must be >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(AugdaError::InvalidArgument("tol must be > 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = SAMPLE_LOG10_RANGE;
    let mut max_residual = 0.0;
    let mut worst_point = Vec::new();
    for _ in 0..samples {
        let x: Vec<f64> = (0..fe.arity)
            .map(|_| 10f64.powf(rng.gen_range(lo..hi)))
            .collect();
        let lhs = f.eval(&x);
        let (factor, args) = fe.transform(&x);
        let rhs = factor * f.eval(&args);
        let residual = (lhs - rhs).abs() / lhs.abs();
        if !residual.is_finite() {
            return Err(AugdaError::NonFinite { point: x });
        }
        if residual > max_residual || worst_point.is_empty() {
            max_residual = residual;
            worst_point = x;
        }
    }
    Ok(VerificationReport {
        max_residual,
        worst_point,
        samples,
        seed,
        tol,
        pass: max_residual <= tol,
    })
}
