use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{kepler_scale, Body, NbodyError, Scheme, SystemState, Trajectory};

pub const DEFAULT_THRESHOLD: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateSettings {
    pub dt: f64,
    pub steps: usize,
    #[serde(default)]
    pub scheme: Scheme,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectSettings {
    pub threshold: f64,
}

impl Default for DetectSettings {
    fn default() -> Self {
        DetectSettings {
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

/// Scenario description as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "G")]
    pub g: f64,
    pub bodies: Vec<Body>,
    pub integrate: IntegrateSettings,
    #[serde(default)]
    pub detect: DetectSettings,
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self, NbodyError> {
        let file: ScenarioFile = serde_json::from_str(text)
            .map_err(|e| NbodyError::InvalidArgument(format!("scenario JSON: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Wraps a state with integration settings covering `periods` of `t`.
    pub fn from_state(name: &str, s: &SystemState, t: f64, steps_per_period: usize, periods: f64) -> Self {
        ScenarioFile {
            name: Some(name.to_string()),
            g: s.g(),
            bodies: s.bodies().to_vec(),
            integrate: IntegrateSettings {
                dt: t / steps_per_period as f64,
                steps: (periods * steps_per_period as f64).ceil() as usize,
                scheme: Scheme::VelocityVerlet,
            },
            detect: DetectSettings::default(),
        }
    }

    /// The same scenario under [`kepler_scale`], with `dt` rescaled so the
    /// sampled trajectory is the time-stretched original.
    pub fn scaled(&self, lambda: f64) -> Result<ScenarioFile, NbodyError> {
        let s = kepler_scale(&self.raw_state()?, lambda)?;
        let mut out = self.clone();
        out.bodies = s.bodies().to_vec();
        out.integrate.dt *= lambda * lambda.sqrt();
        out.name = self.name.as_ref().map(|n| format!("{n}-x{lambda}"));
        Ok(out)
    }

    fn validate(&self) -> Result<(), NbodyError> {
        let i = &self.integrate;
        if !(i.dt > 0.0 && i.dt.is_finite()) {
            return Err(NbodyError::InvalidArgument(format!("integrate.dt must be positive, got {}", i.dt)));
        }
        if i.steps == 0 {
            return Err(NbodyError::InvalidArgument("integrate.steps must be >= 1".into()));
        }
        if !(self.detect.threshold > 0.0) {
            return Err(NbodyError::InvalidArgument(format!(
                "detect.threshold must be positive, got {}",
                self.detect.threshold
            )));
        }
        self.raw_state().map(|_| ())
    }

    fn raw_state(&self) -> Result<SystemState, NbodyError> {
        SystemState::new(self.bodies.clone(), self.g, 0.0)
    }

    /// The initial state, moved to the zero-momentum center-of-mass frame.
    pub fn state(&self) -> Result<SystemState, NbodyError> {
        Ok(self.raw_state()?.to_com_frame())
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `t` followed by position and velocity columns for each body, keeping every
/// `stride`-th sample (the last one is always kept).
pub fn trajectory_csv(traj: &Trajectory, stride: usize) -> String {
    let stride = stride.max(1);
    let last = traj.len() - 1;
    let n = traj.body_count();
    let mut out = String::from("t");
    for k in 1..=n {
        for c in ["x", "y", "z", "vx", "vy", "vz"] {
            let _ = write!(out, ",b{k}_{c}");
        }
    }
    out.push('\n');
    for (k, s) in traj.samples().iter().enumerate() {
        if k % stride != 0 && k != last {
            continue;
        }
        out.push_str(&fmt_f64(s.time()));
        for b in s.bodies() {
            for v in [b.position, b.velocity] {
                for c in [v.x, v.y, v.z] {
                    out.push(',');
                    out.push_str(&fmt_f64(c));
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Columns `t,E,rel_drift`, drift relative to `|E(0)|`.
pub fn energy_csv(traj: &Trajectory) -> Result<String, NbodyError> {
    let energies = traj.energies()?;
    let e0 = energies[0];
    let scale = if e0 != 0.0 { e0.abs() } else { 1.0 };
    let mut out = String::from("t,E,rel_drift\n");
    for (s, e) in traj.samples().iter().zip(&energies) {
        let _ = writeln!(out, "{},{},{}", fmt_f64(s.time()), fmt_f64(*e), fmt_f64((e - e0) / scale));
    }
    Ok(out)
}
