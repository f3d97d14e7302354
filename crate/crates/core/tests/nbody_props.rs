use augdim::nbody::{
    accelerations, integrate, total_energy, Body, Scheme, SystemState, Vec3,
};
use proptest::prelude::*;

fn vec3(range: f64) -> impl Strategy<Value = Vec3> {
    prop::array::uniform3(-range..range).prop_map(Vec3::from)
}

/// Two to five bodies with well-separated positions.
fn system() -> impl Strategy<Value = SystemState> {
    (2usize..=5)
        .prop_flat_map(|n| {
            prop::collection::vec((0.1f64..10.0, vec3(0.3), vec3(1.0)), n)
        })
        .prop_map(|raw| {
            let bodies = raw
                .into_iter()
                .enumerate()
                .map(|(i, (m, jitter, v))| {
                    let q = Vec3::new(i as f64, 0.0, 0.0) + jitter;
                    Body::new(m, q, v)
                })
                .collect();
            SystemState::new(bodies, 1.0, 0.0).unwrap().to_com_frame()
        })
}

fn order(n: usize, seed: usize) -> Vec<usize> {
    let mut o: Vec<usize> = (0..n).collect();
    o.rotate_left(seed % n);
    if n > 2 {
        o.swap(0, 1);
    }
    o
}

proptest! {
    #[test]
    fn internal_forces_cancel(s in system()) {
        let acc = accelerations(&s).unwrap();
        let mut net = Vec3::ZERO;
        let mut scale = 0.0;
        for (b, a) in s.bodies().iter().zip(&acc) {
            net += *a * b.mass;
            scale += b.mass * a.norm();
        }
        prop_assert!(net.norm() <= 1e-12 * scale);
    }

    #[test]
    fn relabeling_permutes_accelerations(s in system(), seed in 0usize..10) {
        let o = order(s.len(), seed);
        let acc = accelerations(&s).unwrap();
        let relabeled = accelerations(&s.relabeled(&o).unwrap()).unwrap();
        for (k, &i) in o.iter().enumerate() {
            prop_assert!((relabeled[k] - acc[i]).norm() <= 1e-12 * acc[i].norm().max(1e-300));
        }
    }

    #[test]
    fn energy_ignores_labels_and_rotation(s in system(), seed in 0usize..10, angle in 0.0f64..6.3) {
        let e = total_energy(&s).unwrap();
        let e2 = total_energy(&s.relabeled(&order(s.len(), seed)).unwrap().rotated_z(angle)).unwrap();
        prop_assert!((e - e2).abs() <= 1e-12 * e.abs().max(1.0));
    }

    #[test]
    fn short_run_conserves_momentum(s in system(), rk4 in any::<bool>()) {
        let scheme = if rk4 { Scheme::Rk4 } else { Scheme::VelocityVerlet };
        let traj = match integrate(&s, 1e-4, 200, scheme) {
            Ok(t) => t,
            // A random draw may start on a near-collision course.
            Err(_) => return Ok(()),
        };
        let drift = (traj.last().total_momentum() - s.total_momentum()).norm();
        prop_assert!(drift <= 1e-12 * s.momentum_scale());
    }
}
