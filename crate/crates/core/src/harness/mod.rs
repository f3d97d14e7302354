//! Batch runner behind the `augdim` binary: derivation reports, simulation
//! runs and formula-vs-simulation comparison tables, all written as
//! reproducible artifacts.

mod artifacts;
mod check;
mod derive;
mod simulate;

pub use artifacts::{config_hash, write_atomic, ArtifactHeader};
pub use check::{check_scenarios, cmd_check, collect_inputs, ComparisonRow, CheckReport, FormulaPeriod};
pub use derive::{cmd_derive, derive_problem, CandidateResidual, DeriveReport, ReducedEquation};
pub use simulate::{cmd_simulate, run_scenario, SimulationOutcome, SimulateReport};

use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::augda::{AugdaError, DEFAULT_SEED};
use crate::nbody::NbodyError;

/// Process exit codes of the CLI.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const SINGULARITY: i32 = 3;
    pub const NOT_PERIODIC: i32 = 4;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {source}", located(path, *line))]
    Problem {
        path: PathBuf,
        line: Option<usize>,
        source: AugdaError,
    },
    #[error("{path}: {source}")]
    Scenario { path: PathBuf, source: NbodyError },
    #[error("{path}: no periodic return found ({}, threshold {threshold})", closest(*min_distance))]
    NotPeriodic {
        path: PathBuf,
        min_distance: Option<f64>,
        threshold: f64,
    },
    #[error("{0}")]
    Config(String),
}

fn closest(min_distance: Option<f64>) -> String {
    match min_distance {
        Some(d) => format!("closest return {d:.3e}"),
        None => "never left the initial point".into(),
    }
}

fn located(path: &std::path::Path, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("{}:{l}", path.display()),
        None => path.display().to_string(),
    }
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } => exit::IO,
            HarnessError::Scenario {
                source: NbodyError::Singularity { .. },
                ..
            } => exit::SINGULARITY,
            HarnessError::NotPeriodic { .. } => exit::NOT_PERIODIC,
            _ => exit::VALIDATION,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, e: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            message: e.to_string(),
        }
    }
}

/// Parameters shared by every command. Everything except `out_dir` feeds
/// the config hash.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(skip)]
    pub out_dir: PathBuf,
    pub seed: u64,
    /// Pass threshold for functional-equation residuals.
    pub tol: f64,
    /// Sample points per functional-equation check.
    pub samples: usize,
    /// P values reported by `derive` and `check`.
    pub powers: Vec<u32>,
    /// `m3` values for the Li-Liao table written by `check`.
    pub liliao: Option<Vec<f64>>,
    /// Keep every `stride`-th sample in trajectory CSVs.
    pub stride: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            out_dir: PathBuf::from("out"),
            seed: DEFAULT_SEED,
            tol: 1e-12,
            samples: 1000,
            powers: vec![1, 3],
            liliao: None,
            stride: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(self.tol > 0.0) {
            return Err(HarnessError::Config(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.samples == 0 {
            return Err(HarnessError::Config("sample count must be >= 1".into()));
        }
        if self.powers.is_empty() {
            return Err(HarnessError::Config("--P needs at least one power".into()));
        }
        if let Some(p) = self.powers.iter().find(|&&p| !matches!(p, 1 | 3)) {
            return Err(HarnessError::Config(format!("--P {p} is not supported (only 1 and 3)")));
        }
        if let Some(grid) = &self.liliao {
            if grid.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
                return Err(HarnessError::Config("--liliao values must be finite and >= 0".into()));
            }
        }
        if self.stride == 0 {
            return Err(HarnessError::Config("--stride must be >= 1".into()));
        }
        Ok(())
    }
}

pub(crate) fn read_input(path: &std::path::Path) -> Result<Vec<u8>, HarnessError> {
    std::fs::read(path).map_err(|e| HarnessError::io(path, e))
}

/// File stem used to name a command's artifacts.
pub(crate) fn stem(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let p = PathBuf::from("x.json");
        let sing = HarnessError::Scenario {
            path: p.clone(),
            source: NbodyError::Singularity {
                time: 1.0,
                i: 0,
                j: 1,
                separation: 0.0,
            },
        };
        let np = HarnessError::NotPeriodic {
            path: p.clone(),
            min_distance: None,
            threshold: 1e-4,
        };
        let bad = HarnessError::Scenario {
            path: p,
            source: NbodyError::InvalidState("x".into()),
        };
        assert_eq!(sing.exit_code(), exit::SINGULARITY);
        assert_eq!(np.exit_code(), exit::NOT_PERIODIC);
        assert_eq!(bad.exit_code(), exit::VALIDATION);
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            powers: vec![2],
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            tol: 0.0,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
