//! Augmented dimensional analysis: symmetry-constrained equation systems,
//! the functional equations they induce, the P-family candidate solutions,
//! and the period and distance formulas built from them.

mod candidate;
mod formulas;
mod system;

pub use candidate::{
    candidate, verify_functional_equation, verify_functional_equation_seeded, CandidateSolution,
    Family, TrialFunction, VerificationReport, DEFAULT_SEED, SAMPLE_LOG10_RANGE,
};
pub use formulas::{
    distance_from_energy, equal_mass_period, limit_consistency, liliao_compare, liliao_csv,
    liliao_grid, period_from_distance, period_from_distance_p, period_from_energy,
    period_from_energy_with_constant, permutation_invariance_check, Formula, FormulaKind,
    LiLiaoRow, LimitReport, PermutationReport, EXHAUSTIVE_PERMUTATION_LIMIT, KEPLER_CONSTANT,
    KEPLER_DISTANCE_CONSTANT, LILIAO_INTERCEPT, LILIAO_SLOPE, PERIOD_ENERGY_CONSTANT,
};
pub use system::{
    derive_functional_equation, generate_full_system, reduce_system, FunctionalEquation,
    PiEquation, PiSystem,
};

use thiserror::Error;

use crate::dimquant::DimError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AugdaError {
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error("symmetric variables `{first}` and `{other}` have different dimensions")]
    SymmetricDimensionMismatch { first: String, other: String },
    #[error("system is not symmetric-reducible: {0}")]
    NotReducible(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("energy {energy} is not negative: the system is unbounded and has no period")]
    Unbounded { energy: f64 },
    #[error("P = {0} is not supported here (only 1 and 3)")]
    UnsupportedPower(u32),
    #[error("non-finite evaluation at {point:?}")]
    NonFinite { point: Vec<f64> },
}
