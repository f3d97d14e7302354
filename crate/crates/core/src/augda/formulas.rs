//! Period and distance formulas obtained by substituting the P-family
//! solutions back into the reduced systems.
//!
//! Every evaluator sorts the masses ascending and accumulates sums and pair
//! sums in one fixed order, so results are bit-identical under any
//! relabeling of the bodies.

use std::f64::consts::PI;

use itertools::Itertools;
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::candidate::root;
use super::AugdaError;
use crate::dimquant::{default_base, parse_dim, DimVector};

/// Period-from-energy constant, `pi^2 / 2`, fixed by the two-body limit.
pub const PERIOD_ENERGY_CONSTANT: f64 = PI * PI / 2.0;

/// Kepler's constant in `T^2 = 4 pi^2 a^3 / (G (m1 + m2))`.
pub const KEPLER_CONSTANT: f64 = 4.0 * PI * PI;

/// Two-body distance constant that turns `d` into the semi-major axis.
pub const KEPLER_DISTANCE_CONSTANT: f64 = 1.0 / 8.0;

/// Published linear fit `T (-E)^(-3/2) = 3.074 m3 - 0.617` for the
/// equal-pair free-fall three-body family.
pub const LILIAO_SLOPE: f64 = 3.074;
pub const LILIAO_INTERCEPT: f64 = -0.617;

/// Permutation checks enumerate all `n!` orderings up to this `n`.
pub const EXHAUSTIVE_PERMUTATION_LIMIT: usize = 6;
const RANDOM_PERMUTATIONS: usize = 100;
const PERMUTATION_SEED: u64 = 0x9e37_79b9;

fn canonical(masses: &[f64]) -> Vec<f64> {
    let mut sorted = masses.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
}

fn check_masses(masses: &[f64]) -> Result<(), AugdaError> {
    if masses.is_empty() {
        return Err(AugdaError::InvalidArgument("at least one mass is required".into()));
    }
    for &m in masses {
        positive("mass", m)?;
    }
    Ok(())
}

fn positive(name: &'static str, value: f64) -> Result<f64, AugdaError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(AugdaError::NonPositive { name, value })
    }
}

fn bounded(energy: f64) -> Result<f64, AugdaError> {
    if energy < 0.0 && energy.is_finite() {
        Ok(-energy)
    } else {
        Err(AugdaError::Unbounded { energy })
    }
}

fn mass_sum(sorted: &[f64]) -> f64 {
    sorted.iter().sum()
}

fn power_sum(sorted: &[f64], p: u32) -> f64 {
    sorted.iter().map(|m| m.powi(p as i32)).sum()
}

/// `sum_{i<j} (m_i m_j)^p` in sorted pair order.
fn pair_power_sum(sorted: &[f64], p: u32) -> f64 {
    let mut sum = 0.0;
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            sum += (sorted[i] * sorted[j]).powi(p as i32);
        }
    }
    sum
}

/// `(sum_{i<j} (m_i m_j)^P)^(3/P) / sum m_i` for P in {1, 3}.
fn energy_mass_factor(sorted: &[f64], p: u32) -> Result<f64, AugdaError> {
    let pairs = match p {
        1 => pair_power_sum(sorted, 1).powi(3),
        3 => pair_power_sum(sorted, 3),
        _ => return Err(AugdaError::UnsupportedPower(p)),
    };
    Ok(pairs / mass_sum(sorted))
}

/// `T^2 = c_T d^3 G^-1 (sum m_i)^-1`.
pub fn period_from_distance(masses: &[f64], d: f64, g: f64, c_t: f64) -> Result<f64, AugdaError> {
    period_from_distance_p(masses, d, g, 1, c_t)
}

/// General P-family period: `T^2 = d^3 G^-1 (c_T / sum m_i^P)^(1/P)`.
pub fn period_from_distance_p(
    masses: &[f64],
    d: f64,
    g: f64,
    power: u32,
    c_t: f64,
) -> Result<f64, AugdaError> {
    check_masses(masses)?;
    let (d, g, c_t) = (positive("d", d)?, positive("G", g)?, positive("c_T", c_t)?);
    if power == 0 {
        return Err(AugdaError::InvalidArgument("P must be a positive integer".into()));
    }
    let sorted = canonical(masses);
    Ok(d.powi(3) / g * root(c_t / power_sum(&sorted, power), power))
}

/// `d = (k_d (-E)^-P G^P sum_{i<j} (m_i m_j)^P)^(1/P)`.
pub fn distance_from_energy(
    masses: &[f64],
    e: f64,
    g: f64,
    power: u32,
    k_d: f64,
) -> Result<f64, AugdaError> {
    check_masses(masses)?;
    let neg_e = bounded(e)?;
    let (g, k_d) = (positive("G", g)?, positive("k_d", k_d)?);
    if power == 0 {
        return Err(AugdaError::InvalidArgument("P must be a positive integer".into()));
    }
    let sorted = canonical(masses);
    let p = power as i32;
    Ok(root(
        k_d * (g / neg_e).powi(p) * pair_power_sum(&sorted, power),
        power,
    ))
}

/// `T^2 = (pi^2/2) (-E)^-3 G^2 S_P (sum m_i)^-1` with
/// `S_3 = sum_{i<j} (m_i m_j)^3` and `S_1 = (sum_{i<j} m_i m_j)^3`.
pub fn period_from_energy(masses: &[f64], e: f64, g: f64, power: u32) -> Result<f64, AugdaError> {
    period_from_energy_with_constant(masses, e, g, power, PERIOD_ENERGY_CONSTANT)
}

pub fn period_from_energy_with_constant(
    masses: &[f64],
    e: f64,
    g: f64,
    power: u32,
    constant: f64,
) -> Result<f64, AugdaError> {
    check_masses(masses)?;
    let factor = energy_mass_factor(&canonical(masses), power)?;
    energy_period(factor, e, g, constant)
}

fn energy_period(mass_factor: f64, e: f64, g: f64, constant: f64) -> Result<f64, AugdaError> {
    let neg_e = bounded(e)?;
    let g = positive("G", g)?;
    let constant = positive("constant", constant)?;
    Ok(constant * mass_factor * (g * g) / neg_e.powi(3))
}

/// Equal-mass closed forms: `(pi^2/4) (-E)^-3 G^2 m^5 (n-1)` for P = 3 and
/// `(pi^2/16) (-E)^-3 G^2 m^5 n^2 (n-1)^3` for P = 1.
pub fn equal_mass_period(n: usize, m: f64, e: f64, g: f64, power: u32) -> Result<f64, AugdaError> {
    if n == 0 {
        return Err(AugdaError::InvalidArgument("n must be >= 1".into()));
    }
    let m = positive("mass", m)?;
    let nf = n as f64;
    // Written against the pi^2/2 constant so the mass factor is the same
    // real number the general evaluator forms.
    let factor = match power {
        3 => m.powi(5) * ((nf - 1.0) / 2.0),
        1 => m.powi(5) * (nf * nf * (nf - 1.0).powi(3) / 8.0),
        _ => return Err(AugdaError::UnsupportedPower(power)),
    };
    energy_period(factor, e, g, PERIOD_ENERGY_CONSTANT)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub value_n: f64,
    pub value_extended: f64,
    pub rel_diff: f64,
}

/// Compares the period of `masses` with that of `masses` plus one body of
/// mass `epsilon >= 0`.
pub fn limit_consistency(
    masses: &[f64],
    e: f64,
    g: f64,
    power: u32,
    epsilon: f64,
) -> Result<LimitReport, AugdaError> {
    check_masses(masses)?;
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(AugdaError::NonPositive {
            name: "epsilon",
            value: epsilon,
        });
    }
    let value_n = period_from_energy(masses, e, g, power)?;
    let mut extended = masses.to_vec();
    extended.push(epsilon);
    let factor = energy_mass_factor(&canonical(&extended), power)?;
    let value_extended = energy_period(factor, e, g, PERIOD_ENERGY_CONSTANT)?;
    Ok(LimitReport {
        value_n,
        value_extended,
        rel_diff: (value_extended - value_n).abs() / value_n.abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaKind {
    /// `T^2` from masses, a symmetric distance `d` and `G`.
    PeriodFromDistance,
    /// `d` from masses, energy `E` and `G`.
    DistanceFromEnergy,
    /// `T^2` from masses, energy `E` and `G`.
    PeriodFromEnergy,
}

/// A concrete period or distance formula. `arg` in [`Formula::evaluate`] is
/// the distance for [`FormulaKind::PeriodFromDistance`] and the energy
/// otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Formula {
    pub kind: FormulaKind,
    pub n: usize,
    pub power: u32,
    pub constant: f64,
}

impl Formula {
    pub fn new(kind: FormulaKind, n: usize, power: u32, constant: f64) -> Result<Self, AugdaError> {
        if n == 0 {
            return Err(AugdaError::InvalidArgument("n must be >= 1".into()));
        }
        if power == 0 {
            return Err(AugdaError::InvalidArgument("P must be a positive integer".into()));
        }
        if kind == FormulaKind::PeriodFromEnergy && !matches!(power, 1 | 3) {
            return Err(AugdaError::UnsupportedPower(power));
        }
        positive("constant", constant)?;
        Ok(Formula {
            kind,
            n,
            power,
            constant,
        })
    }

    pub fn evaluate(&self, masses: &[f64], arg: f64, g: f64) -> Result<f64, AugdaError> {
        if masses.len() != self.n {
            return Err(AugdaError::InvalidArgument(format!(
                "formula is for {} bodies, got {} masses",
                self.n,
                masses.len()
            )));
        }
        match self.kind {
            FormulaKind::PeriodFromDistance => {
                period_from_distance_p(masses, arg, g, self.power, self.constant)
            }
            FormulaKind::DistanceFromEnergy => {
                distance_from_energy(masses, arg, g, self.power, self.constant)
            }
            FormulaKind::PeriodFromEnergy => {
                period_from_energy_with_constant(masses, arg, g, self.power, self.constant)
            }
        }
    }

    /// Dimension of the formula's right-hand side, assembled exponent by
    /// exponent over `L, T, M`.
    pub fn dimension(&self) -> DimVector {
        let base = default_base();
        let dim = |f: &str| parse_dim(f, &base).expect("static formula");
        let (d, g, m, e) = (dim("L"), dim("L^3 T^-2 M^-1"), dim("M"), dim("L^2 T^-2 M"));
        let p = self.power as i64;
        let inv_p = Rational64::new(1, p);
        match self.kind {
            // d^3 G^-1 (sum m^P)^(-1/P)
            FormulaKind::PeriodFromDistance => {
                &(&d.powi(3) / &g) / &m.powi(p).pow(inv_p)
            }
            // ((-E)^-P G^P (m m)^P)^(1/P)
            FormulaKind::DistanceFromEnergy => (&(&e.powi(-p) * &g.powi(p))
                * &(&m * &m).powi(p))
                .pow(inv_p),
            // (-E)^-3 G^2 ((m m)^P)^(3/P) (sum m)^-1
            FormulaKind::PeriodFromEnergy => {
                &(&(&e.powi(-3) * &g.powi(2)) * &(&m * &m).powi(p).pow(Rational64::new(3, p)))
                    / &m
            }
        }
    }

    /// `T^2` for period formulas, `L` for the distance formula.
    pub fn expected_dimension(&self) -> DimVector {
        let base = default_base();
        let f = match self.kind {
            FormulaKind::DistanceFromEnergy => "L",
            _ => "T^2",
        };
        parse_dim(f, &base).expect("static formula")
    }

    pub fn is_homogeneous(&self) -> bool {
        self.dimension() == self.expected_dimension()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermutationReport {
    pub permutations_checked: usize,
    pub exhaustive: bool,
    pub pass: bool,
    /// First ordering whose value differed from the identity ordering.
    pub counterexample: Option<Vec<f64>>,
}

/// Evaluates `f` under every reordering of `masses` (all `n!` for
/// `n <= 6`, else 100 seeded shuffles) and requires bit-identical results.
pub fn permutation_invariance_check<F>(f: F, masses: &[f64]) -> PermutationReport
where
    F: Fn(&[f64]) -> f64,
{
    let reference = f(masses).to_bits();
    let mut checked = 0;
    let mut counterexample = None;
    let mut visit = |perm: Vec<f64>| {
        checked += 1;
        if counterexample.is_none() && f(&perm).to_bits() != reference {
            counterexample = Some(perm);
        }
    };
    let exhaustive = masses.len() <= EXHAUSTIVE_PERMUTATION_LIMIT;
    if exhaustive {
        for perm in masses.iter().copied().permutations(masses.len()) {
            visit(perm);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PERMUTATION_SEED);
        for _ in 0..RANDOM_PERMUTATIONS {
            let mut perm = masses.to_vec();
            perm.shuffle(&mut rng);
            visit(perm);
        }
    }
    PermutationReport {
        permutations_checked: checked,
        exhaustive,
        pass: counterexample.is_none(),
        counterexample,
    }
}

impl Formula {
    /// [`permutation_invariance_check`] applied to this formula; evaluation
    /// errors count as failures.
    pub fn permutation_invariance(&self, masses: &[f64], arg: f64, g: f64) -> PermutationReport {
        let mut report = permutation_invariance_check(
            |ms| self.evaluate(ms, arg, g).unwrap_or(f64::NAN),
            masses,
        );
        if self.evaluate(masses, arg, g).is_err() {
            report.pass = false;
            report.counterexample = Some(masses.to_vec());
        }
        report
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LiLiaoRow {
    pub m3: f64,
    /// `T (-E)^(3/2)` from the P = 3 energy formula with `G = m1 = m2 = 1`.
    pub formula: f64,
    /// `3.074 m3 - 0.617`, tabulated exactly as published.
    pub fit: f64,
}

impl LiLiaoRow {
    pub fn diff(&self) -> f64 {
        self.formula - self.fit
    }
}

pub fn liliao_compare(m3: f64) -> Result<LiLiaoRow, AugdaError> {
    if !(m3 >= 0.0 && m3.is_finite()) {
        return Err(AugdaError::NonPositive {
            name: "m3",
            value: m3,
        });
    }
    let formula = (PERIOD_ENERGY_CONSTANT * (1.0 + 2.0 * m3.powi(3)) / (2.0 + m3)).sqrt();
    Ok(LiLiaoRow {
        m3,
        formula,
        fit: LILIAO_SLOPE * m3 + LILIAO_INTERCEPT,
    })
}

pub fn liliao_grid(m3_values: &[f64]) -> Result<Vec<LiLiaoRow>, AugdaError> {
    m3_values.iter().map(|&m3| liliao_compare(m3)).collect()
}

/// CSV with columns `m3,formula,fit,diff`.
pub fn liliao_csv(rows: &[LiLiaoRow]) -> String {
    let mut out = String::from("m3,formula,fit,diff\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.m3, r.formula, r.fit, r.diff()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn period_from_distance_examples() {
        let t2 = period_from_distance(&[1.0, 1.0], 1.0, 1.0, KEPLER_CONSTANT).unwrap();
        assert!(rel(t2, 2.0 * PI * PI) < 1e-15);
        let t2 = period_from_distance(&[2.0, 3.0, 5.0], 1.0, 1.0, 1.0).unwrap();
        assert_eq!(t2, 0.1);
        assert!(period_from_distance(&[1.0, 0.0], 1.0, 1.0, 1.0).is_err());
        assert!(period_from_distance(&[1.0], -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn distance_from_energy_examples() {
        let d = distance_from_energy(&[1.0, 1.0], -0.5, 1.0, 1, 0.125).unwrap();
        assert_eq!(d, 0.25);
        let d = distance_from_energy(&[1.0, 1.0, 1.0], -1.0, 1.0, 3, 1.0).unwrap();
        assert!(rel(d, 3f64.cbrt()) < 1e-15);
        // P = 1 three equal masses: the pair sum is 3 m^2.
        let d = distance_from_energy(&[2.0, 2.0, 2.0], -1.0, 1.0, 1, 1.0).unwrap();
        assert_eq!(d, 12.0);
        assert!(matches!(
            distance_from_energy(&[1.0, 1.0], 0.0, 1.0, 1, 1.0),
            Err(AugdaError::Unbounded { .. })
        ));
    }

    #[test]
    fn period_from_energy_examples() {
        // Two-body oracle: a = 1/2, T^2 = 4 pi^2 a^3 / 2 = pi^2 / 4.
        for p in [1, 3] {
            let t2 = period_from_energy(&[1.0, 1.0], -1.0, 1.0, p).unwrap();
            assert!(rel(t2, PI * PI / 4.0) < 1e-15);
        }
        let t2 = period_from_energy(&[1.0; 3], -1.0, 1.0, 3).unwrap();
        assert!(rel(t2, PI * PI / 2.0) < 1e-15);
        let t2 = period_from_energy(&[1.0; 3], -1.0, 1.0, 1).unwrap();
        assert!(rel(t2, 9.0 * PI * PI / 2.0) < 1e-15);
        assert!(matches!(
            period_from_energy(&[1.0, 1.0], -1.0, 1.0, 2),
            Err(AugdaError::UnsupportedPower(2))
        ));
        assert!(period_from_energy(&[1.0, 1.0], 1.0, 1.0, 3).is_err());
    }

    #[test]
    fn equal_mass_examples() {
        let t2 = equal_mass_period(3, 1.0, -1.0, 1.0, 3).unwrap();
        assert!(rel(t2, PI * PI / 2.0) < 1e-15);
        assert_eq!(
            equal_mass_period(2, 1.3, -0.7, 1.0, 1).unwrap(),
            equal_mass_period(2, 1.3, -0.7, 1.0, 3).unwrap()
        );
        for n in 2..=10 {
            let p1 = equal_mass_period(n, 1.0, -1.0, 1.0, 1).unwrap();
            let p3 = equal_mass_period(n, 1.0, -1.0, 1.0, 3).unwrap();
            let pairs = (n * (n - 1)) as f64 / 2.0;
            assert!(rel((p1 / p3).sqrt(), pairs) < 1e-12);
        }
    }

    #[test]
    fn limit_examples() {
        let r = limit_consistency(&[1.0, 1.0], -1.0, 1.0, 3, 1e-8).unwrap();
        assert!(r.rel_diff <= 1e-6);
        let r = limit_consistency(&[1.0, 1.0], -1.0, 1.0, 3, 0.0).unwrap();
        assert_eq!(r.value_n, r.value_extended);
        let r = limit_consistency(&[1.0, 2.0, 3.0], -1.0, 1.0, 1, 1e-8).unwrap();
        assert!(r.rel_diff <= 1e-6);
        assert!(limit_consistency(&[1.0], -1.0, 1.0, 3, -1e-3).is_err());
    }

    #[test]
    fn permutation_examples() {
        let f = Formula::new(FormulaKind::PeriodFromEnergy, 3, 3, PERIOD_ENERGY_CONSTANT).unwrap();
        let r = f.permutation_invariance(&[1.0, 2.0, 3.0], -1.0, 1.0);
        assert!(r.pass && r.exhaustive);
        assert_eq!(r.permutations_checked, 6);

        let r = permutation_invariance_check(|m| m[0] * m[0] * m[1], &[1.0, 2.0, 3.0]);
        assert!(!r.pass);
        assert!(r.counterexample.is_some());

        let f = Formula::new(FormulaKind::PeriodFromDistance, 4, 1, KEPLER_CONSTANT).unwrap();
        let r = f.permutation_invariance(&[1.0, 2.0, 3.0, 4.0], 1.3, 1.0);
        assert!(r.pass);
        assert_eq!(r.permutations_checked, 24);
    }

    #[test]
    fn many_bodies_use_random_permutations() {
        let masses: Vec<f64> = (1..=8).map(|i| 0.37 * i as f64).collect();
        let f = Formula::new(FormulaKind::DistanceFromEnergy, 8, 3, 0.125).unwrap();
        let r = f.permutation_invariance(&masses, -2.0, 1.0);
        assert!(r.pass && !r.exhaustive);
        assert_eq!(r.permutations_checked, 100);
    }

    #[test]
    fn formulas_are_homogeneous() {
        for p in 1..=6 {
            for kind in [FormulaKind::PeriodFromDistance, FormulaKind::DistanceFromEnergy] {
                assert!(Formula::new(kind, 3, p, 1.0).unwrap().is_homogeneous());
            }
        }
        for p in [1, 3] {
            let f = Formula::new(FormulaKind::PeriodFromEnergy, 3, p, 1.0).unwrap();
            assert!(f.is_homogeneous());
        }
        assert!(Formula::new(FormulaKind::PeriodFromEnergy, 3, 2, 1.0).is_err());
    }

    #[test]
    fn liliao_examples() {
        let r = liliao_compare(1.0).unwrap();
        assert!(rel(r.formula, PI / 2f64.sqrt()) < 1e-15);
        assert!((r.fit - 2.457).abs() < 1e-12);
        let r = liliao_compare(0.0).unwrap();
        assert!(r.fit < 0.0);
        assert!(rel(r.formula, PI / 2.0) < 1e-15);
        let big = liliao_compare(1e4).unwrap();
        assert!(big.formula > liliao_compare(1e2).unwrap().formula);
        assert!(big.fit > 0.0);
        let csv = liliao_csv(&liliao_grid(&[0.0, 1.0]).unwrap());
        assert!(csv.starts_with("m3,formula,fit,diff\n0,"));
        assert!(liliao_compare(-1.0).is_err());
    }
}
