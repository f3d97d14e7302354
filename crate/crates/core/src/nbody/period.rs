use serde::Serialize;

use super::{NbodyError, SystemState, Trajectory};

/// Relative size of total momentum and center-of-mass offset tolerated by
/// [`detect_period`].
const COM_FRAME_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodEstimate {
    pub period: f64,
    /// Normalized phase-space distance at the detected return.
    pub residual: f64,
    /// Whether the three-point refinement was applied.
    pub refined: bool,
    /// Sample index of the bracketing minimum.
    pub index: usize,
}

/// Outcome of a recurrence search. Not finding a return is a result, not an
/// error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Recurrence {
    Periodic(PeriodEstimate),
    NotPeriodic {
        /// Smallest sampled return distance after departure, if it departed.
        min_distance: Option<f64>,
        threshold: f64,
        samples: usize,
    },
}

impl Recurrence {
    pub fn periodic(&self) -> Option<&PeriodEstimate> {
        match self {
            Recurrence::Periodic(p) => Some(p),
            Recurrence::NotPeriodic { .. } => None,
        }
    }
}

fn rms_scales(traj: &Trajectory) -> (f64, f64) {
    let (mut q, mut v, mut n) = (0.0, 0.0, 0usize);
    for s in traj.samples() {
        for b in s.bodies() {
            q += b.position.norm_sq();
            v += b.velocity.norm_sq();
            n += 1;
        }
    }
    ((q / n as f64).sqrt(), (v / n as f64).sqrt())
}

fn check_com_frame(s: &SystemState, l: f64, v: f64) -> Result<(), NbodyError> {
    let m = s.total_mass();
    let com = s.center_of_mass().norm();
    let vcom = s.total_momentum().norm() / m;
    if com > COM_FRAME_TOL * l.max(f64::MIN_POSITIVE) || vcom > COM_FRAME_TOL * v.max(f64::MIN_POSITIVE) {
        return Err(NbodyError::NotComFrame);
    }
    Ok(())
}

/// `D(t)` for every sample, normalized by the trajectory's RMS position and
/// velocity scales.
pub fn return_distance(traj: &Trajectory) -> Vec<f64> {
    let (l, v) = rms_scales(traj);
    let (il2, iv2) = (inv_sq(l), inv_sq(v));
    let start = traj.first().bodies();
    traj.samples()
        .iter()
        .map(|s| {
            let mut dq = 0.0;
            let mut dv = 0.0;
            for (b, b0) in s.bodies().iter().zip(start) {
                dq += (b.position - b0.position).norm_sq();
                dv += (b.velocity - b0.velocity).norm_sq();
            }
            (dq * il2 + dv * iv2).sqrt()
        })
        .collect()
}

fn inv_sq(x: f64) -> f64 {
    if x > 0.0 {
        1.0 / (x * x)
    } else {
        0.0
    }
}

/// Finds the first return of the trajectory to its initial phase-space point.
///
/// After `D` first exceeds `threshold`, each local minimum of the sampled
/// `D` is refined by fitting a parabola through `D^2` at the three bracketing
/// samples (`D` itself has a corner at an exact return). The first minimum
/// whose refined distance is within `threshold` is the period.
pub fn detect_period(traj: &Trajectory, threshold: f64) -> Result<Recurrence, NbodyError> {
    if !(threshold > 0.0) {
        return Err(NbodyError::InvalidArgument(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let (l, v) = rms_scales(traj);
    check_com_frame(traj.first(), l, v)?;
    let d = return_distance(traj);
    let not_periodic = |min_distance| Recurrence::NotPeriodic {
        min_distance,
        threshold,
        samples: d.len(),
    };
    let Some(departure) = d.iter().position(|&x| x > threshold) else {
        return Ok(not_periodic(None));
    };
    let t0 = traj.first().time();
    let dt = traj.dt();
    let mut min_seen = f64::INFINITY;
    for k in departure.max(1)..d.len().saturating_sub(1) {
        min_seen = min_seen.min(d[k]);
        if !(d[k] <= d[k - 1] && d[k] < d[k + 1]) {
            continue;
        }
        let (f0, f1, f2) = (d[k - 1] * d[k - 1], d[k] * d[k], d[k + 1] * d[k + 1]);
        let curv = f0 - 2.0 * f1 + f2;
        let (offset, residual, refined) = if curv > 0.0 {
            let delta = (f0 - f2) / (2.0 * curv);
            let fmin = f1 - (f0 - f2) * (f0 - f2) / (8.0 * curv);
            (delta, fmin.max(0.0).sqrt(), true)
        } else {
            (0.0, d[k], false)
        };
        if residual <= threshold {
            let tk = traj.samples()[k].time() - t0;
            return Ok(Recurrence::Periodic(PeriodEstimate {
                period: tk + offset * dt,
                residual,
                refined,
                index: k,
            }));
        }
    }
    Ok(not_periodic(min_seen.is_finite().then_some(min_seen)))
}
