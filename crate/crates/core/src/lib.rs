//! Periods of gravitational n-body systems, two ways.
//!
//! [`dimquant`] and [`augda`] derive period formulas from dimensional
//! analysis and the permutation symmetry of the bodies, without solving the
//! equations of motion. [`nbody`] integrates those equations and measures
//! periods, energies and distances, and [`harness`] ties both sides together
//! into reports.

pub mod augda;
pub mod dimquant;
pub mod harness;
pub mod nbody;
