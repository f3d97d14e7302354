use super::{Body, NbodyError, SystemState, Vec3};

/// Period of [`figure_eight`], to the precision of its initial conditions.
pub const FIGURE_EIGHT_PERIOD: f64 = 6.325_913_98;

fn positive(name: &str, v: f64) -> Result<(), NbodyError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(NbodyError::InvalidArgument(format!("{name} must be positive, got {v}")))
    }
}

/// Two bodies at periapsis, separated along `x`, moving along `y`.
fn two_body_at_periapsis(m1: f64, m2: f64, rp: f64, v: f64, g: f64) -> Result<SystemState, NbodyError> {
    let m = m1 + m2;
    let (f1, f2) = (m2 / m, m1 / m);
    SystemState::new(
        vec![
            Body::new(m1, Vec3::new(-f1 * rp, 0.0, 0.0), Vec3::new(0.0, -f1 * v, 0.0)),
            Body::new(m2, Vec3::new(f2 * rp, 0.0, 0.0), Vec3::new(0.0, f2 * v, 0.0)),
        ],
        g,
        0.0,
    )
}

/// Bound Kepler pair with semi-major axis `a` and eccentricity `e`, in the
/// center-of-mass frame.
pub fn kepler_two_body_init(m1: f64, m2: f64, a: f64, e: f64, g: f64) -> Result<SystemState, NbodyError> {
    positive("a", a)?;
    if e >= 1.0 {
        return Err(NbodyError::Unbounded { e });
    }
    if !(e >= 0.0) {
        return Err(NbodyError::InvalidArgument(format!("eccentricity must be in [0, 1), got {e}")));
    }
    positive("G", g)?;
    positive("m1", m1)?;
    positive("m2", m2)?;
    let rp = a * (1.0 - e);
    let v = (g * (m1 + m2) * (1.0 + e) / rp).sqrt();
    two_body_at_periapsis(m1, m2, rp, v, g)
}

/// Open two-body encounter with periapsis `rp` and eccentricity `e >= 1`.
pub fn hyperbolic_two_body(m1: f64, m2: f64, rp: f64, e: f64, g: f64) -> Result<SystemState, NbodyError> {
    positive("rp", rp)?;
    if !(e >= 1.0 && e.is_finite()) {
        return Err(NbodyError::InvalidArgument(format!("open orbit needs e >= 1, got {e}")));
    }
    positive("G", g)?;
    positive("m1", m1)?;
    positive("m2", m2)?;
    let v = (g * (m1 + m2) * (1.0 + e) / rp).sqrt();
    two_body_at_periapsis(m1, m2, rp, v, g)
}

/// Equal-mass figure-eight choreography with `G = 1`.
pub fn figure_eight() -> SystemState {
    let q1 = Vec3::new(0.970_004_36, -0.243_087_53, 0.0);
    let v3 = Vec3::new(-0.932_407_37, -0.864_731_46, 0.0);
    let v1 = v3 * -0.5;
    SystemState::new(
        vec![
            Body::new(1.0, q1, v1),
            Body::new(1.0, -q1, v1),
            Body::new(1.0, Vec3::ZERO, v3),
        ],
        1.0,
        0.0,
    )
    .expect("figure-eight initial conditions are valid")
    .to_com_frame()
}

/// Three equal masses on an equilateral triangle of side `r` in rigid
/// rotation.
pub fn lagrange_equilateral(m: f64, r: f64, g: f64) -> Result<SystemState, NbodyError> {
    positive("m", m)?;
    positive("r", r)?;
    positive("G", g)?;
    let radius = r / 3f64.sqrt();
    let omega = (3.0 * g * m / (r * r * r)).sqrt();
    let bodies = (0..3)
        .map(|k| {
            let angle = k as f64 * 2.0 * std::f64::consts::PI / 3.0;
            let q = Vec3::new(radius, 0.0, 0.0).rotate_z(angle);
            let v = Vec3::new(0.0, omega * radius, 0.0).rotate_z(angle);
            Body::new(m, q, v)
        })
        .collect();
    SystemState::new(bodies, g, 0.0)
}

/// `q -> lambda q`, `v -> lambda^(-1/2) v`, `t -> lambda^(3/2) t`.
pub fn kepler_scale(s: &SystemState, lambda: f64) -> Result<SystemState, NbodyError> {
    positive("lambda", lambda)?;
    let vs = 1.0 / lambda.sqrt();
    let bodies = s
        .bodies()
        .iter()
        .map(|b| Body::new(b.mass, b.position * lambda, b.velocity * vs))
        .collect();
    SystemState::new(bodies, s.g(), s.time() * lambda * lambda.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbody::total_energy;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn kepler_energy_matches_closed_form() {
        for &(m1, m2, a, e) in &[(1.0, 1.0, 1.0, 0.0), (1.0, 1.0, 1.0, 0.5), (3.0, 1.0, 2.0, 0.3), (2.0, 5.0, 0.5, 0.7)] {
            let s = kepler_two_body_init(m1, m2, a, e, 1.0).unwrap();
            let expected = -m1 * m2 / (2.0 * a);
            assert!(rel(total_energy(&s).unwrap(), expected) < 1e-12, "{m1} {m2} {a} {e}");
            assert!(s.total_momentum().norm() < 1e-15);
            assert!(s.center_of_mass().norm() < 1e-15);
        }
    }

    #[test]
    fn circular_case_matches_hand_state() {
        let s = kepler_two_body_init(1.0, 1.0, 1.0, 0.0, 1.0).unwrap();
        let v = 2f64.sqrt() / 2.0;
        assert_eq!(s.bodies()[0].position, Vec3::new(-0.5, 0.0, 0.0));
        assert!((s.bodies()[1].velocity.y - v).abs() < 1e-15);
    }

    #[test]
    fn open_orbits_rejected() {
        assert!(matches!(
            kepler_two_body_init(1.0, 1.0, 1.0, 1.0, 1.0),
            Err(NbodyError::Unbounded { .. })
        ));
        assert!(kepler_two_body_init(1.0, 1.0, -1.0, 0.1, 1.0).is_err());
        let h = hyperbolic_two_body(1.0, 1.0, 1.0, 1.5, 1.0).unwrap();
        assert!(total_energy(&h).unwrap() > 0.0);
        assert!(hyperbolic_two_body(1.0, 1.0, 1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn figure_eight_is_com_frame() {
        let s = figure_eight();
        assert!(s.total_momentum().norm() < 1e-15);
        assert!(s.center_of_mass().norm() < 1e-15);
        assert!(total_energy(&s).unwrap() < 0.0);
    }

    #[test]
    fn scaling_laws() {
        let s = kepler_two_body_init(1.0, 1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(kepler_scale(&s, 1.0).unwrap(), s);
        let e0 = total_energy(&s).unwrap();
        let e4 = total_energy(&kepler_scale(&s, 4.0).unwrap()).unwrap();
        assert!(rel(e4, e0 / 4.0) < 1e-15);
        assert!(kepler_scale(&s, 0.0).is_err());
    }

    #[test]
    fn lagrange_is_balanced() {
        let s = lagrange_equilateral(1.0, 2.0, 1.0).unwrap();
        assert!(s.total_momentum().norm() < 1e-15);
        assert!(s.center_of_mass().norm() < 1e-15);
    }
}
