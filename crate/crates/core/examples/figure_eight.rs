//! The figure-eight choreography: detected period, extremal distances and
//! how far the energy formulas are from the measured period.

use augdim::augda::{period_from_energy, PERIOD_ENERGY_CONSTANT};
use augdim::harness::run_scenario;
use augdim::nbody::{mean_distance, Recurrence, ScenarioFile};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenarios/figure_eight.json");
    let file = ScenarioFile::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let out = run_scenario(&file).unwrap();
    let Recurrence::Periodic(p) = out.recurrence else {
        panic!("figure-eight did not close");
    };
    println!("T = {:.8}, residual {:.1e}, E = {:.10}", p.period, p.residual, out.energy);
    let one_period = out.trajectory.window(p.period);
    println!("mean extremal distance {:.6}", mean_distance(&one_period).unwrap());
    let masses = [1.0; 3];
    for power in [1, 3] {
        let t2 = period_from_energy(&masses, out.energy, file.g, power).unwrap();
        println!("P={power}: formula T = {:.6}, ratio {:.4}", t2.sqrt(), PERIOD_ENERGY_CONSTANT * p.period.powi(2) / t2);
    }
}
