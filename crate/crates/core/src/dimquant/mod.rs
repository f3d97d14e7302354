//! Exact dimensional algebra.
//!
//! Dimension vectors carry rational exponents over a configurable list of
//! base dimensions (by default `L`, `T`, `M`). Rank, repeating-set
//! enumeration and exponent solving all run in exact rational arithmetic, so
//! every reconstruction identity holds with equality.

mod matrix;
mod problem;
mod vector;

pub use matrix::{
    rank, rank_of, repeating_sets, solve_exponents, DimMatrix, ExponentSolution, PiGroup,
    RepeatingSet,
};
pub use problem::ProblemFile;
pub use vector::{default_base, parse_dim, DimVector, QuantitySpec, QuantityVar, DEFAULT_BASE};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimError {
    #[error("malformed dimensional formula `{formula}`: {reason}")]
    Malformed { formula: String, reason: String },
    #[error("base dimension `{name}` is not declared (base: {base:?})")]
    UnknownBase { name: String, base: Vec<String> },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("`{name}` has {found} exponents, base has {expected}")]
    LengthMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("target `{target}` is not dimensionally expressible over the arguments")]
    TargetNotExpressible { target: String },
    #[error("variables {set:?} are not dimensionally independent")]
    NotIndependent { set: Vec<String> },
    #[error("`{name}` is not expressible over {set:?}")]
    NotExpressible { name: String, set: Vec<String> },
    #[error("argument index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}
