use augdim::augda::{
    candidate, derive_functional_equation, distance_from_energy, generate_full_system,
    period_from_distance_p, period_from_energy, reduce_system, Family, Formula, FormulaKind,
    FunctionalEquation, TrialFunction, KEPLER_CONSTANT, KEPLER_DISTANCE_CONSTANT,
};
use augdim::dimquant::ProblemFile;
use proptest::prelude::*;

fn n_body(n: usize, target: (&str, &str), other: (&str, &str)) -> ProblemFile {
    let mut args: Vec<String> = (1..=n).map(|i| format!(r#"{{"name":"m{i}","dim":"M"}}"#)).collect();
    args.push(format!(r#"{{"name":"{}","dim":"{}"}}"#, other.0, other.1));
    args.push(r#"{"name":"G","dim":"L^3 T^-2 M^-1"}"#.into());
    let text = format!(
        r#"{{"target":{{"name":"{}","dim":"{}"}},"args":[{}]}}"#,
        target.0,
        target.1,
        args.join(",")
    );
    serde_json::from_str(&text).unwrap()
}

fn masses(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..100.0, 2..=max)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn full_and_reduced_system_sizes() {
    let mut factorial = 1;
    for n in 2..=5 {
        factorial *= n;
        for (target, other, alpha) in [(("T", "T"), ("d", "L"), -1), (("d", "L"), ("E", "L^2 T^-2 M"), 2)] {
            let p = n_body(n, target, other);
            let m = p.to_matrix().unwrap();
            let sym = p.symmetric_indices(&m).unwrap();
            assert_eq!(sym, (0..n).collect::<Vec<_>>());
            let full = generate_full_system(&m, &sym).unwrap();
            assert_eq!(full.len(), factorial);
            let reduced = reduce_system(&full);
            assert_eq!(reduced.len(), n);
            let fe = derive_functional_equation(&reduced).unwrap();
            assert_eq!((fe.arity, fe.alpha), (n - 1, alpha));
        }
    }
}

proptest! {
    #[test]
    fn candidates_solve_their_equation(
        x in prop::collection::vec(1e-3f64..1e3, 1..=4),
        p in prop::sample::select(vec![1u32, 2, 3, 4, 5]),
        c in 0.1f64..10.0,
    ) {
        for family in [Family::PeriodForm, Family::DistanceForm] {
            let f = candidate(family, p, c).unwrap();
            let fe = FunctionalEquation::new(x.len(), family.alpha()).unwrap();
            let (pre, tx) = fe.transform(&x);
            prop_assert!(rel(pre * f.eval(&tx), f.eval(&x)) < 1e-12);
        }
    }

    #[test]
    fn energy_period_is_symmetric_and_homogeneous(
        ms in masses(8),
        e in -10.0f64..-0.01,
        lambda in 0.1f64..10.0,
        p in prop::sample::select(vec![1u32, 3]),
    ) {
        let t2 = period_from_energy(&ms, e, 1.0, p).unwrap();
        let mut rev = ms.clone();
        rev.reverse();
        prop_assert_eq!(t2.to_bits(), period_from_energy(&rev, e, 1.0, p).unwrap().to_bits());
        // T^2 ~ (-E)^-3 and, at fixed E, ~ m^5.
        prop_assert!(rel(period_from_energy(&ms, e * lambda, 1.0, p).unwrap(), t2 / lambda.powi(3)) < 1e-12);
        let scaled: Vec<f64> = ms.iter().map(|m| m * lambda).collect();
        prop_assert!(rel(period_from_energy(&scaled, e, 1.0, p).unwrap(), t2 * lambda.powi(5)) < 1e-12);
    }

    #[test]
    fn distance_formulas_scale(
        ms in masses(6),
        e in -10.0f64..-0.01,
        d in 0.01f64..100.0,
        p in 1u32..=5,
    ) {
        let d0 = distance_from_energy(&ms, e, 1.0, p, KEPLER_DISTANCE_CONSTANT).unwrap();
        prop_assert!(rel(distance_from_energy(&ms, 2.0 * e, 1.0, p, KEPLER_DISTANCE_CONSTANT).unwrap(), d0 / 2.0) < 1e-12);
        let t0 = period_from_distance_p(&ms, d, 1.0, p, KEPLER_CONSTANT).unwrap();
        prop_assert!(rel(period_from_distance_p(&ms, 2.0 * d, 1.0, p, KEPLER_CONSTANT).unwrap(), t0 * 8.0) < 1e-12);
    }

    #[test]
    fn formulas_are_homogeneous(n in 1usize..=8, p in prop::sample::select(vec![1u32, 3])) {
        for kind in [FormulaKind::PeriodFromDistance, FormulaKind::DistanceFromEnergy, FormulaKind::PeriodFromEnergy] {
            prop_assert!(Formula::new(kind, n, p, 1.0).unwrap().is_homogeneous());
        }
    }
}
