//! Integrates an eccentric Kepler orbit and compares the detected period
//! and energy with the closed forms.

use std::f64::consts::PI;

use augdim::nbody::{detect_period, integrate, kepler_two_body_init, total_energy, Scheme, DEFAULT_THRESHOLD};

fn main() {
    let (m1, m2, a, e) = (3.0, 1.0, 1.5, 0.6);
    let s = kepler_two_body_init(m1, m2, a, e, 1.0).unwrap();
    let t = 2.0 * PI * (a.powi(3) / (m1 + m2)).sqrt();
    let traj = integrate(&s, t / 50_000.0, 55_000, Scheme::VelocityVerlet).unwrap();
    let rec = detect_period(&traj, DEFAULT_THRESHOLD).unwrap();
    let p = rec.periodic().expect("bound orbit returns");
    println!("period {:.9} vs {t:.9} (residual {:.1e})", p.period, p.residual);
    println!("energy {:.12} vs {:.12}", total_energy(&s).unwrap(), -m1 * m2 / (2.0 * a));
    let energies = traj.energies().unwrap();
    let drift = energies.iter().map(|x| (x / energies[0] - 1.0).abs()).fold(0.0, f64::max);
    println!("max relative energy drift {drift:.1e}");
}
