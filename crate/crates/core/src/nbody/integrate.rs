use serde::{Deserialize, Serialize};

use super::state::accumulate_accelerations;
use super::{total_energy, Body, NbodyError, SystemState, Vec3};

/// Relative separation floor applied by [`integrate`].
pub const DEFAULT_FLOOR_FRACTION: f64 = 1e-8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Second-order symplectic, time-reversible. The default.
    #[default]
    #[serde(rename = "verlet", alias = "velocity-verlet")]
    VelocityVerlet,
    /// Classical fourth-order Runge-Kutta, kept for cross-checks.
    #[serde(rename = "rk4")]
    Rk4,
}

/// Uniformly sampled states, one per step including the initial state.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    samples: Vec<SystemState>,
    dt: f64,
}

impl Trajectory {
    pub fn new(samples: Vec<SystemState>, dt: f64) -> Result<Self, NbodyError> {
        if samples.is_empty() {
            return Err(NbodyError::InvalidArgument("empty trajectory".into()));
        }
        if !(dt > 0.0) {
            return Err(NbodyError::InvalidArgument(format!("dt must be positive, got {dt}")));
        }
        let n = samples[0].len();
        if samples.windows(2).any(|w| !(w[1].time() > w[0].time()) || w[1].len() != n) {
            return Err(NbodyError::InvalidArgument(
                "samples must share a body count and have increasing times".into(),
            ));
        }
        Ok(Trajectory { samples, dt })
    }

    pub fn samples(&self) -> &[SystemState] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &SystemState {
        &self.samples[0]
    }

    pub fn last(&self) -> &SystemState {
        self.samples.last().expect("non-empty trajectory")
    }

    pub fn body_count(&self) -> usize {
        self.first().len()
    }

    pub fn duration(&self) -> f64 {
        self.last().time() - self.first().time()
    }

    /// The leading samples covering at most `duration` past the start.
    pub fn window(&self, duration: f64) -> Trajectory {
        let t0 = self.first().time();
        let end = self
            .samples
            .iter()
            .position(|s| s.time() - t0 > duration)
            .unwrap_or(self.samples.len())
            .max(1);
        Trajectory {
            samples: self.samples[..end].to_vec(),
            dt: self.dt,
        }
    }

    /// Every sample with its bodies reordered; see [`SystemState::relabeled`].
    pub fn relabeled(&self, order: &[usize]) -> Result<Trajectory, NbodyError> {
        let samples = self
            .samples
            .iter()
            .map(|s| s.relabeled(order))
            .collect::<Result<_, _>>()?;
        Ok(Trajectory {
            samples,
            dt: self.dt,
        })
    }

    pub fn energies(&self) -> Result<Vec<f64>, NbodyError> {
        self.samples.iter().map(total_energy).collect()
    }
}

/// Integrates with the default separation floor: `1e-8` of the initial RMS
/// pair distance.
pub fn integrate(
    s: &SystemState,
    dt: f64,
    steps: usize,
    scheme: Scheme,
) -> Result<Trajectory, NbodyError> {
    let floor = DEFAULT_FLOOR_FRACTION * s.rms_pair_distance();
    integrate_with_floor(s, dt, steps, scheme, floor)
}

pub fn integrate_with_floor(
    s: &SystemState,
    dt: f64,
    steps: usize,
    scheme: Scheme,
    floor: f64,
) -> Result<Trajectory, NbodyError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(NbodyError::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(s.clone());
    match scheme {
        Scheme::VelocityVerlet => verlet(s, dt, steps, floor, &mut samples)?,
        Scheme::Rk4 => rk4(s, dt, steps, floor, &mut samples)?,
    }
    Ok(Trajectory { samples, dt })
}

fn verlet(
    s: &SystemState,
    dt: f64,
    steps: usize,
    floor: f64,
    samples: &mut Vec<SystemState>,
) -> Result<(), NbodyError> {
    let t0 = s.time();
    let half = 0.5 * dt;
    let mut state = s.clone();
    let mut acc = vec![Vec3::ZERO; s.len()];
    accumulate_accelerations(state.bodies(), state.g(), floor, t0, &mut acc)?;
    for k in 1..=steps {
        let t = t0 + k as f64 * dt;
        for (b, a) in state.bodies_mut().iter_mut().zip(&acc) {
            b.velocity += *a * half;
            b.position += b.velocity * dt;
        }
        let g = state.g();
        accumulate_accelerations(state.bodies(), g, floor, t, &mut acc)?;
        for (b, a) in state.bodies_mut().iter_mut().zip(&acc) {
            b.velocity += *a * half;
        }
        state.set_time(t);
        samples.push(state.clone());
    }
    Ok(())
}

fn rk4(
    s: &SystemState,
    dt: f64,
    steps: usize,
    floor: f64,
    samples: &mut Vec<SystemState>,
) -> Result<(), NbodyError> {
    let t0 = s.time();
    let n = s.len();
    let g = s.g();
    let mut state = s.clone();
    let mut acc = vec![Vec3::ZERO; n];
    let mut scratch: Vec<Body> = state.bodies().to_vec();

    // Derivative (dq, dv) of `base` displaced by (dq_in, dv_in) * h.
    let mut deriv = |base: &[Body],
                     shift: Option<(&[Vec3], &[Vec3], f64)>,
                     t: f64|
     -> Result<(Vec<Vec3>, Vec<Vec3>), NbodyError> {
        for (k, b) in base.iter().enumerate() {
            scratch[k] = *b;
            if let Some((dq, dv, h)) = shift {
                scratch[k].position += dq[k] * h;
                scratch[k].velocity += dv[k] * h;
            }
        }
        accumulate_accelerations(&scratch, g, floor, t, &mut acc)?;
        Ok((scratch.iter().map(|b| b.velocity).collect(), acc.clone()))
    };

    for k in 1..=steps {
        let t = t0 + (k - 1) as f64 * dt;
        let base = state.bodies().to_vec();
        let (q1, v1) = deriv(&base, None, t)?;
        let (q2, v2) = deriv(&base, Some((&q1, &v1, 0.5 * dt)), t + 0.5 * dt)?;
        let (q3, v3) = deriv(&base, Some((&q2, &v2, 0.5 * dt)), t + 0.5 * dt)?;
        let (q4, v4) = deriv(&base, Some((&q3, &v3, dt)), t + dt)?;
        for (i, b) in state.bodies_mut().iter_mut().enumerate() {
            b.position += (q1[i] + 2.0 * q2[i] + 2.0 * q3[i] + q4[i]) * (dt / 6.0);
            b.velocity += (v1[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]) * (dt / 6.0);
        }
        state.set_time(t0 + k as f64 * dt);
        samples.push(state.clone());
    }
    Ok(())
}
