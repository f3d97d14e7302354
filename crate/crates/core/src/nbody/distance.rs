use super::{NbodyError, Trajectory};

/// Half the sum of the largest and smallest sampled separation of bodies `i`
/// and `j` over the whole trajectory. Pass a one-period
/// [`Trajectory::window`] to get the per-orbit value.
pub fn mu_extremal(traj: &Trajectory, i: usize, j: usize) -> Result<f64, NbodyError> {
    let n = traj.body_count();
    for index in [i, j] {
        if index >= n {
            return Err(NbodyError::IndexOutOfRange { index, n });
        }
    }
    if i == j {
        return Err(NbodyError::InvalidArgument(format!("mu_extremal needs two distinct bodies, got {i} twice")));
    }
    // Difference always taken in index order so mu_ij and mu_ji agree bitwise.
    let (a, b) = (i.min(j), i.max(j));
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for s in traj.samples() {
        let bodies = s.bodies();
        let r = (bodies[b].position - bodies[a].position).norm();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok(0.5 * (hi + lo))
}

/// Average of `mu_extremal` over all pairs, summed in sorted order.
pub fn mean_distance(traj: &Trajectory) -> Result<f64, NbodyError> {
    let n = traj.body_count();
    if n < 2 {
        return Err(NbodyError::InvalidArgument("mean_distance needs at least two bodies".into()));
    }
    let mut mus = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            mus.push(mu_extremal(traj, i, j)?);
        }
    }
    mus.sort_by(f64::total_cmp);
    Ok(mus.iter().sum::<f64>() / mus.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbody::{figure_eight, integrate, kepler_two_body_init, lagrange_equilateral, Scheme};
    use std::f64::consts::PI;

    fn one_period(s: &crate::nbody::SystemState, t: f64) -> Trajectory {
        integrate(s, t / 20_000.0, 20_000, Scheme::VelocityVerlet).unwrap()
    }

    #[test]
    fn kepler_mu_is_semi_major_axis() {
        let t = PI * 2f64.sqrt();
        for e in [0.0, 0.5] {
            let traj = one_period(&kepler_two_body_init(1.0, 1.0, 1.0, e, 1.0).unwrap(), t);
            let mu = mu_extremal(&traj, 0, 1).unwrap();
            assert!((mu - 1.0).abs() < 1e-6, "e={e}: {mu}");
            assert_eq!(mu, mu_extremal(&traj, 1, 0).unwrap());
            assert_eq!(mean_distance(&traj).unwrap(), mu);
        }
    }

    #[test]
    fn lagrange_mean_distance_is_side() {
        let r: f64 = 2.0;
        let t = 2.0 * PI / (3.0 / (r * r * r)).sqrt();
        let traj = one_period(&lagrange_equilateral(1.0, r, 1.0).unwrap(), t);
        let mean = mean_distance(&traj).unwrap();
        assert!((mean - r).abs() < 1e-6, "{mean}");
    }

    #[test]
    fn relabeling_is_exact() {
        let traj = integrate(&figure_eight(), 1e-3, 6_400, Scheme::VelocityVerlet).unwrap();
        let base = mean_distance(&traj).unwrap();
        for order in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(mean_distance(&traj.relabeled(&order).unwrap()).unwrap(), base);
        }
    }

    #[test]
    fn index_errors() {
        let traj = integrate(&figure_eight(), 1e-3, 10, Scheme::VelocityVerlet).unwrap();
        assert!(matches!(mu_extremal(&traj, 0, 3), Err(NbodyError::IndexOutOfRange { index: 3, n: 3 })));
        assert!(mu_extremal(&traj, 1, 1).is_err());
    }
}
