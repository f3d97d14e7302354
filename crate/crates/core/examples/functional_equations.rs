//! Checks both P-families against their functional equations and shows a
//! function that fails.

use augdim::augda::{candidate, verify_functional_equation, Family, FunctionalEquation};

fn main() {
    for family in [Family::PeriodForm, Family::DistanceForm] {
        let fe = FunctionalEquation::new(3, family.alpha()).unwrap();
        for p in [1, 2, 3, 5] {
            let c = candidate(family, p, 1.0).unwrap();
            let r = verify_functional_equation(&c, &fe, 1000, 1e-12).unwrap();
            println!("{family:?} P={p}: max residual {:.2e} (pass: {})", r.max_residual, r.pass);
        }
    }
    let fe = FunctionalEquation::new(2, -1).unwrap();
    let r = verify_functional_equation(&|x: &[f64]| x[0] + x[1], &fe, 1000, 1e-12).unwrap();
    println!("x + y: max residual {:.2e} at {:?}", r.max_residual, r.worst_point);
}
