//! Runs the comparison over every shipped two-body scenario and prints the
//! worst deviation of the ratio from pi^2/2.
//!
//! cargo run --release --example batch_check

use augdim::augda::PERIOD_ENERGY_CONSTANT;
use augdim::harness::{check_scenarios, collect_inputs};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenarios/two_body_grid");
    let files = collect_inputs(&[dir.into()]).unwrap();
    let rows = check_scenarios(&files, &[1, 3]).unwrap();
    let mut worst = 0.0f64;
    for row in &rows {
        let r = row.ratio(3).unwrap();
        worst = worst.max((r / PERIOD_ENERGY_CONSTANT - 1.0).abs());
        println!("{:<16} T = {:.7}  ratio {:.7}", row.scenario, row.period, r);
    }
    println!("{} scenarios, worst relative ratio error {worst:.1e}", rows.len());
}
