use std::path::Path;

use serde::Serialize;

use super::artifacts::{write_atomic, write_json};
use super::{read_input, stem, ArtifactHeader, HarnessError, RunConfig};
use crate::nbody::{
    detect_period, energy_csv, integrate, mean_distance, total_energy, trajectory_csv,
    NbodyError, Recurrence, ScenarioFile, Scheme, Trajectory,
};

/// Everything measured from one scenario run.
#[derive(Clone, Debug)]
pub struct SimulationOutcome {
    pub trajectory: Trajectory,
    pub recurrence: Recurrence,
    /// Initial total energy.
    pub energy: f64,
    /// Largest `|E(t) - E(0)| / |E(0)|` over the run.
    pub max_energy_drift: f64,
    /// Mean extremal distance over the first detected period.
    pub mean_distance: Option<f64>,
}

/// Integrates a scenario from its center-of-mass frame and searches for the
/// period.
pub fn run_scenario(file: &ScenarioFile) -> Result<SimulationOutcome, NbodyError> {
    let state = file.state()?;
    let set = &file.integrate;
    let trajectory = integrate(&state, set.dt, set.steps, set.scheme)?;
    let recurrence = detect_period(&trajectory, file.detect.threshold)?;
    let energies = trajectory.energies()?;
    let energy = total_energy(&state)?;
    let scale = if energy != 0.0 { energy.abs() } else { 1.0 };
    let max_energy_drift = energies
        .iter()
        .map(|e| (e - energy).abs() / scale)
        .fold(0.0, f64::max);
    let mean_distance = match (&recurrence, state.len()) {
        (Recurrence::Periodic(p), n) if n >= 2 => Some(mean_distance(&trajectory.window(p.period))?),
        _ => None,
    };
    Ok(SimulationOutcome {
        trajectory,
        recurrence,
        energy,
        max_energy_drift,
        mean_distance,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulateReport {
    #[serde(flatten)]
    pub header: ArtifactHeader,
    pub scenario: String,
    pub bodies: usize,
    pub scheme: Scheme,
    pub dt: f64,
    pub steps: usize,
    pub energy: f64,
    pub max_energy_drift: f64,
    pub recurrence: Recurrence,
    pub mean_distance: Option<f64>,
}

pub(crate) fn load_scenario(path: &Path) -> Result<(ScenarioFile, Vec<u8>), HarnessError> {
    let bytes = read_input(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let file = ScenarioFile::from_json(&text).map_err(|source| HarnessError::Scenario {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((file, bytes))
}

/// Runs one scenario file. Writes `<stem>.trajectory.csv`,
/// `<stem>.energy.csv` and `<stem>.period.json`; a run without a detected
/// period still writes them and then reports [`HarnessError::NotPeriodic`].
pub fn cmd_simulate(path: &Path, cfg: &RunConfig) -> Result<SimulateReport, HarnessError> {
    cfg.validate()?;
    let (file, bytes) = load_scenario(path)?;
    let header = ArtifactHeader::new("simulate", &[(path, &bytes)], cfg);
    let scenario_err = |source| HarnessError::Scenario {
        path: path.to_path_buf(),
        source,
    };
    let out = run_scenario(&file).map_err(scenario_err)?;
    let name = stem(path);
    let comment = header.csv_comment();
    let traj = comment.clone() + &trajectory_csv(&out.trajectory, cfg.stride);
    write_atomic(&cfg.out_dir.join(format!("{name}.trajectory.csv")), traj.as_bytes())?;
    let energy = comment + &energy_csv(&out.trajectory).map_err(scenario_err)?;
    write_atomic(&cfg.out_dir.join(format!("{name}.energy.csv")), energy.as_bytes())?;
    let report = SimulateReport {
        header,
        scenario: file.name.clone().unwrap_or_else(|| name.clone()),
        bodies: file.bodies.len(),
        scheme: file.integrate.scheme,
        dt: file.integrate.dt,
        steps: file.integrate.steps,
        energy: out.energy,
        max_energy_drift: out.max_energy_drift,
        recurrence: out.recurrence,
        mean_distance: out.mean_distance,
    };
    write_json(&cfg.out_dir.join(format!("{name}.period.json")), &report)?;
    match out.recurrence {
        Recurrence::Periodic(_) => Ok(report),
        Recurrence::NotPeriodic {
            min_distance,
            threshold,
            ..
        } => Err(HarnessError::NotPeriodic {
            path: path.to_path_buf(),
            min_distance,
            threshold,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbody::{hyperbolic_two_body, kepler_two_body_init};
    use std::f64::consts::PI;

    #[test]
    fn kepler_run() {
        let t = PI * 2f64.sqrt();
        let s = kepler_two_body_init(1.0, 1.0, 1.0, 0.5, 1.0).unwrap();
        let file = ScenarioFile::from_state("k", &s, t, 20_000, 1.2);
        let out = run_scenario(&file).unwrap();
        let p = out.recurrence.periodic().unwrap();
        assert!((p.period - t).abs() / t < 1e-6);
        assert!((out.energy + 0.5).abs() < 1e-12);
        assert!((out.mean_distance.unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn artifacts_and_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig {
            out_dir: dir.path().join("out"),
            stride: 100,
            ..RunConfig::default()
        };
        let s = hyperbolic_two_body(1.0, 1.0, 1.0, 1.2, 1.0).unwrap();
        let file = ScenarioFile::from_state("h", &s, 10.0, 1000, 3.0);
        let path = dir.path().join("h.json");
        std::fs::write(&path, file.to_json()).unwrap();
        let err = cmd_simulate(&path, &cfg).unwrap_err();
        assert_eq!(err.exit_code(), super::super::exit::NOT_PERIODIC);
        for name in ["h.trajectory.csv", "h.energy.csv", "h.period.json"] {
            assert!(cfg.out_dir.join(name).exists(), "{name}");
        }
        let csv = std::fs::read_to_string(cfg.out_dir.join("h.trajectory.csv")).unwrap();
        assert!(csv.starts_with("# augdim simulate config_hash="));
    }
}
