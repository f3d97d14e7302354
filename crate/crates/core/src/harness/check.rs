use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::artifacts::{write_atomic, write_json};
use super::simulate::{load_scenario, run_scenario};
use super::{read_input, stem, ArtifactHeader, HarnessError, RunConfig};
use crate::augda::{liliao_csv, liliao_grid, period_from_energy, LiLiaoRow, PERIOD_ENERGY_CONSTANT};
use crate::nbody::{fmt_f64, Recurrence};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FormulaPeriod {
    pub power: u32,
    /// `T` predicted from the measured energy.
    pub period: f64,
    /// `T^2 (-E)^3 (sum m) / (G^2 S_P)`, equal to `pi^2 / 2` when the
    /// formula is exact for this orbit.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub scenario: String,
    pub bodies: usize,
    pub period: f64,
    pub residual: f64,
    pub energy: f64,
    pub mean_distance: f64,
    pub formulas: Vec<FormulaPeriod>,
}

impl ComparisonRow {
    pub fn ratio(&self, power: u32) -> Option<f64> {
        self.formulas.iter().find(|f| f.power == power).map(|f| f.ratio)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub header: ArtifactHeader,
    pub rows: Vec<ComparisonRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub liliao: Option<Vec<LiLiaoRow>>,
}

/// Expands directories into their `*.json` files, sorted by name.
pub fn collect_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>, HarnessError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| HarnessError::io(p, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        return Err(HarnessError::Config("no scenario files given".into()));
    }
    Ok(out)
}

fn comparison_row(path: &Path, powers: &[u32]) -> Result<ComparisonRow, HarnessError> {
    let (file, _) = load_scenario(path)?;
    let scenario_err = |source| HarnessError::Scenario {
        path: path.to_path_buf(),
        source,
    };
    let out = run_scenario(&file).map_err(scenario_err)?;
    let p = match out.recurrence {
        Recurrence::Periodic(p) => p,
        Recurrence::NotPeriodic {
            min_distance,
            threshold,
            ..
        } => {
            return Err(HarnessError::NotPeriodic {
                path: path.to_path_buf(),
                min_distance,
                threshold,
            })
        }
    };
    let masses: Vec<f64> = file.bodies.iter().map(|b| b.mass).collect();
    let formulas = powers
        .iter()
        .map(|&power| {
            let t2 = period_from_energy(&masses, out.energy, file.g, power).map_err(|source| {
                HarnessError::Problem {
                    path: path.to_path_buf(),
                    line: None,
                    source,
                }
            })?;
            Ok(FormulaPeriod {
                power,
                period: t2.sqrt(),
                ratio: PERIOD_ENERGY_CONSTANT * p.period * p.period / t2,
            })
        })
        .collect::<Result<_, HarnessError>>()?;
    Ok(ComparisonRow {
        scenario: file.name.clone().unwrap_or_else(|| stem(path)),
        bodies: masses.len(),
        period: p.period,
        residual: p.residual,
        energy: out.energy,
        mean_distance: out.mean_distance.unwrap_or(f64::NAN),
        formulas,
    })
}

/// One row per scenario, computed in parallel and returned in input order.
/// The first failing scenario (in input order) is reported.
pub fn check_scenarios(paths: &[PathBuf], powers: &[u32]) -> Result<Vec<ComparisonRow>, HarnessError> {
    let rows: Vec<Result<ComparisonRow, HarnessError>> =
        paths.par_iter().map(|p| comparison_row(p, powers)).collect();
    rows.into_iter().collect()
}

fn comparison_csv(header: &ArtifactHeader, rows: &[ComparisonRow], powers: &[u32]) -> String {
    let mut out = header.csv_comment();
    out.push_str("scenario,bodies,period,residual,energy,mean_distance");
    for p in powers {
        let _ = write!(out, ",formula_T_P{p},ratio_P{p}");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{}", r.scenario, r.bodies);
        for x in [r.period, r.residual, r.energy, r.mean_distance] {
            let _ = write!(out, ",{}", fmt_f64(x));
        }
        for f in &r.formulas {
            let _ = write!(out, ",{},{}", fmt_f64(f.period), fmt_f64(f.ratio));
        }
        out.push('\n');
    }
    out
}

/// Plot-ready series: one array per column, keyed by name.
#[derive(Serialize)]
struct PlotData<'a> {
    #[serde(flatten)]
    header: &'a ArtifactHeader,
    scenario: Vec<&'a str>,
    measured_period: Vec<f64>,
    energy: Vec<f64>,
    mean_distance: Vec<f64>,
    series: Vec<PlotSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    liliao: Option<&'a [LiLiaoRow]>,
}

#[derive(Serialize)]
struct PlotSeries {
    power: u32,
    formula_period: Vec<f64>,
    ratio: Vec<f64>,
}

/// Compares measured periods with the energy formulas. Writes
/// `comparison.csv`, `comparison.plot.json` and, with `cfg.liliao`,
/// `liliao.csv`.
pub fn cmd_check(paths: &[PathBuf], cfg: &RunConfig) -> Result<CheckReport, HarnessError> {
    cfg.validate()?;
    let files = collect_inputs(paths)?;
    let inputs = files
        .iter()
        .map(|f| read_input(f).map(|b| (f.as_path(), b)))
        .collect::<Result<Vec<_>, _>>()?;
    let borrowed: Vec<(&Path, &[u8])> = inputs.iter().map(|(p, b)| (*p, b.as_slice())).collect();
    let header = ArtifactHeader::new("check", &borrowed, cfg);
    let rows = check_scenarios(&files, &cfg.powers)?;
    let liliao = match &cfg.liliao {
        Some(grid) => Some(liliao_grid(grid).map_err(|e| HarnessError::Config(e.to_string()))?),
        None => None,
    };

    write_atomic(
        &cfg.out_dir.join("comparison.csv"),
        comparison_csv(&header, &rows, &cfg.powers).as_bytes(),
    )?;
    let plot = PlotData {
        header: &header,
        scenario: rows.iter().map(|r| r.scenario.as_str()).collect(),
        measured_period: rows.iter().map(|r| r.period).collect(),
        energy: rows.iter().map(|r| r.energy).collect(),
        mean_distance: rows.iter().map(|r| r.mean_distance).collect(),
        series: cfg
            .powers
            .iter()
            .enumerate()
            .map(|(k, &power)| PlotSeries {
                power,
                formula_period: rows.iter().map(|r| r.formulas[k].period).collect(),
                ratio: rows.iter().map(|r| r.formulas[k].ratio).collect(),
            })
            .collect(),
        liliao: liliao.as_deref(),
    };
    write_json(&cfg.out_dir.join("comparison.plot.json"), &plot)?;
    if let Some(table) = &liliao {
        let text = header.csv_comment() + &liliao_csv(table);
        write_atomic(&cfg.out_dir.join("liliao.csv"), text.as_bytes())?;
    }
    Ok(CheckReport {
        header,
        rows,
        liliao,
    })
}
