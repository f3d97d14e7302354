//! Scales a scenario by `q -> lambda q` and checks that `T^2 (-E)^3` stays
//! fixed.

use augdim::harness::run_scenario;
use augdim::nbody::ScenarioFile;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenarios/kepler_a1_e05.json");
    let base = ScenarioFile::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    for lambda in [0.25, 1.0, 4.0] {
        let file = base.scaled(lambda).unwrap();
        let out = run_scenario(&file).unwrap();
        let t = out.recurrence.periodic().unwrap().period;
        println!("lambda {lambda}: T = {t:.8}, T^2 (-E)^3 = {:.10}", t * t * (-out.energy).powi(3));
    }
}
