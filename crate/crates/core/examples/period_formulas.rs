//! Energy-based period formulas for a few mass sets, including the
//! equal-mass closed forms and the small-mass limit.

use augdim::augda::{equal_mass_period, limit_consistency, period_from_energy};

fn main() {
    let e = -1.0;
    for masses in [vec![1.0, 1.0], vec![1.0, 2.0, 3.0], vec![1.0; 5]] {
        let t1 = period_from_energy(&masses, e, 1.0, 1).unwrap().sqrt();
        let t3 = period_from_energy(&masses, e, 1.0, 3).unwrap().sqrt();
        println!("{masses:?}: T(P=1) = {t1:.6}, T(P=3) = {t3:.6}");
    }
    for n in [2, 3, 10] {
        let t2 = equal_mass_period(n, 1.0, e, 1.0, 3).unwrap();
        println!("{n} unit masses, P=3: T^2 = {t2:.6}");
    }
    for eps in [1e-2, 1e-4, 1e-8] {
        let r = limit_consistency(&[1.0, 2.0, 3.0], e, 1.0, 3, eps).unwrap();
        println!("adding a body of mass {eps:e}: relative change {:.2e}", r.rel_diff);
    }
}
