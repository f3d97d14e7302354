//! Newtonian n-body dynamics: integration, energy accounting, periodic-orbit
//! detection, extremal distances and the standard test scenarios.

mod distance;
mod integrate;
mod io;
mod period;
mod scenarios;
mod state;
mod vec3;

pub use distance::{mean_distance, mu_extremal};
pub use integrate::{integrate, integrate_with_floor, Scheme, Trajectory, DEFAULT_FLOOR_FRACTION};
pub use io::{
    energy_csv, fmt_f64, trajectory_csv, DetectSettings, IntegrateSettings, ScenarioFile,
    DEFAULT_THRESHOLD,
};
pub use period::{detect_period, return_distance, PeriodEstimate, Recurrence};
pub use scenarios::{
    figure_eight, hyperbolic_two_body, kepler_scale, kepler_two_body_init, lagrange_equilateral,
    FIGURE_EIGHT_PERIOD,
};
pub use state::{
    accelerations, accelerations_with_floor, kinetic_energy, potential_energy, total_energy, Body,
    SystemState,
};
pub use vec3::Vec3;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NbodyError {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("bodies {i} and {j} collided at t = {time} (separation {separation:e})")]
    Singularity {
        time: f64,
        i: usize,
        j: usize,
        separation: f64,
    },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("body index {index} out of range for {n} bodies")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("trajectory is not in the zero-momentum center-of-mass frame")]
    NotComFrame,
    #[error("orbit with e = {e} is unbounded")]
    Unbounded { e: f64 },
}
