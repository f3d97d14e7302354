use serde::{Deserialize, Serialize};

use super::{NbodyError, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Body {
    pub mass: f64,
    pub position: Vec3,
    pub velocity: Vec3,
}

impl Body {
    pub fn new(mass: f64, position: Vec3, velocity: Vec3) -> Self {
        Body {
            mass,
            position,
            velocity,
        }
    }
}

/// Phase-space snapshot of a collisionless n-body system.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemState {
    bodies: Vec<Body>,
    g: f64,
    time: f64,
}

impl SystemState {
    pub fn new(bodies: Vec<Body>, g: f64, time: f64) -> Result<Self, NbodyError> {
        if bodies.is_empty() {
            return Err(NbodyError::InvalidState("no bodies".into()));
        }
        if !(g > 0.0 && g.is_finite()) {
            return Err(NbodyError::InvalidState(format!("G must be positive, got {g}")));
        }
        if !time.is_finite() {
            return Err(NbodyError::InvalidState("time is not finite".into()));
        }
        for (i, b) in bodies.iter().enumerate() {
            if !(b.mass > 0.0 && b.mass.is_finite()) {
                return Err(NbodyError::InvalidState(format!(
                    "body {i} has non-positive mass {}",
                    b.mass
                )));
            }
            if !b.position.is_finite() || !b.velocity.is_finite() {
                return Err(NbodyError::InvalidState(format!("body {i} is not finite")));
            }
        }
        for i in 0..bodies.len() {
            for j in i + 1..bodies.len() {
                if (bodies[j].position - bodies[i].position).norm() == 0.0 {
                    return Err(NbodyError::InvalidState(format!(
                        "bodies {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(SystemState { bodies, g, time })
    }

    pub(crate) fn from_parts(bodies: Vec<Body>, g: f64, time: f64) -> Self {
        SystemState { bodies, g, time }
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn masses(&self) -> Vec<f64> {
        self.bodies.iter().map(|b| b.mass).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.bodies.iter().map(|b| b.mass).sum()
    }

    pub fn center_of_mass(&self) -> Vec3 {
        let weighted = self
            .bodies
            .iter()
            .fold(Vec3::ZERO, |acc, b| acc + b.mass * b.position);
        weighted * (1.0 / self.total_mass())
    }

    pub fn total_momentum(&self) -> Vec3 {
        self.bodies
            .iter()
            .fold(Vec3::ZERO, |acc, b| acc + b.mass * b.velocity)
    }

    pub fn angular_momentum(&self) -> Vec3 {
        self.bodies
            .iter()
            .fold(Vec3::ZERO, |acc, b| acc + b.mass * b.position.cross(b.velocity))
    }

    /// `sum m_i |v_i|`, the natural scale for momentum drift.
    pub fn momentum_scale(&self) -> f64 {
        self.bodies.iter().map(|b| b.mass * b.velocity.norm()).sum()
    }

    /// `sum m_i |q_i x v_i|`, the natural scale for angular-momentum drift.
    pub fn angular_momentum_scale(&self) -> f64 {
        self.bodies
            .iter()
            .map(|b| b.mass * b.position.cross(b.velocity).norm())
            .sum()
    }

    /// Root mean square of all pairwise separations (0 for one body).
    pub fn rms_pair_distance(&self) -> f64 {
        let n = self.bodies.len();
        if n < 2 {
            return 0.0;
        }
        let mut sum = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                sum += (self.bodies[j].position - self.bodies[i].position).norm_sq();
            }
        }
        (sum / (n * (n - 1) / 2) as f64).sqrt()
    }

    /// Same motion seen from the zero-momentum center-of-mass frame.
    pub fn to_com_frame(&self) -> SystemState {
        let m = self.total_mass();
        let com = self.center_of_mass();
        let vcom = self.total_momentum() * (1.0 / m);
        let bodies = self
            .bodies
            .iter()
            .map(|b| Body::new(b.mass, b.position - com, b.velocity - vcom))
            .collect();
        SystemState::from_parts(bodies, self.g, self.time)
    }

    pub fn rotated_z(&self, angle: f64) -> SystemState {
        let bodies = self
            .bodies
            .iter()
            .map(|b| Body::new(b.mass, b.position.rotate_z(angle), b.velocity.rotate_z(angle)))
            .collect();
        SystemState::from_parts(bodies, self.g, self.time)
    }

    /// Body `k` of the result is body `order[k]` of `self`.
    pub fn relabeled(&self, order: &[usize]) -> Result<SystemState, NbodyError> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() || order.iter().any(|&i| i >= self.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(NbodyError::InvalidArgument(format!(
                "{order:?} is not a permutation of {} bodies",
                self.len()
            )));
        }
        let bodies = order.iter().map(|&i| self.bodies[i]).collect();
        Ok(SystemState::from_parts(bodies, self.g, self.time))
    }

    pub fn with_reversed_velocities(&self) -> SystemState {
        let bodies = self
            .bodies
            .iter()
            .map(|b| Body::new(b.mass, b.position, -b.velocity))
            .collect();
        SystemState::from_parts(bodies, self.g, self.time)
    }

    pub fn with_time(&self, time: f64) -> SystemState {
        SystemState::from_parts(self.bodies.clone(), self.g, time)
    }

    pub(crate) fn bodies_mut(&mut self) -> &mut [Body] {
        &mut self.bodies
    }

    pub(crate) fn set_time(&mut self, time: f64) {
        self.time = time;
    }
}

/// `a_i = G sum_{j != i} m_j (q_j - q_i) / |q_j - q_i|^3`.
pub fn accelerations(s: &SystemState) -> Result<Vec<Vec3>, NbodyError> {
    let mut out = vec![Vec3::ZERO; s.len()];
    accumulate_accelerations(s.bodies(), s.g(), 0.0, s.time(), &mut out)?;
    Ok(out)
}

/// Like [`accelerations`], but any pair closer than `floor` is a singularity.
pub fn accelerations_with_floor(s: &SystemState, floor: f64) -> Result<Vec<Vec3>, NbodyError> {
    let mut out = vec![Vec3::ZERO; s.len()];
    accumulate_accelerations(s.bodies(), s.g(), floor, s.time(), &mut out)?;
    Ok(out)
}

/// Pair interactions in fixed `i < j` order with equal and opposite
/// contributions.
pub(crate) fn accumulate_accelerations(
    bodies: &[Body],
    g: f64,
    floor: f64,
    time: f64,
    out: &mut [Vec3],
) -> Result<(), NbodyError> {
    out.iter_mut().for_each(|a| *a = Vec3::ZERO);
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            let d = bodies[j].position - bodies[i].position;
            let r2 = d.norm_sq();
            let r = r2.sqrt();
            if !(r > floor) || !r.is_finite() {
                return Err(NbodyError::Singularity {
                    time,
                    i,
                    j,
                    separation: r,
                });
            }
            let f = d * (g / (r2 * r));
            out[i] += f * bodies[j].mass;
            out[j] -= f * bodies[i].mass;
        }
    }
    Ok(())
}

/// `sum m_i |v_i|^2 / 2`.
pub fn kinetic_energy(s: &SystemState) -> f64 {
    s.bodies()
        .iter()
        .map(|b| 0.5 * b.mass * b.velocity.norm_sq())
        .sum()
}

/// `-G sum_{i<j} m_i m_j / |q_j - q_i|`, zero at infinite separation.
pub fn potential_energy(s: &SystemState) -> Result<f64, NbodyError> {
    let b = s.bodies();
    let mut sum = 0.0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let r = (b[j].position - b[i].position).norm();
            if !(r > 0.0) {
                return Err(NbodyError::Singularity {
                    time: s.time(),
                    i,
                    j,
                    separation: r,
                });
            }
            sum += b[i].mass * b[j].mass / r;
        }
    }
    Ok(-s.g() * sum)
}

pub fn total_energy(s: &SystemState) -> Result<f64, NbodyError> {
    Ok(kinetic_energy(s) + potential_energy(s)?)
}
