//! The scenario files under `data/` must match the library initializers
//! they were generated from, and every problem file must load.

use std::f64::consts::PI;
use std::path::PathBuf;

use augdim::dimquant::ProblemFile;
use augdim::nbody::{
    figure_eight, hyperbolic_two_body, kepler_two_body_init, lagrange_equilateral, ScenarioFile,
    FIGURE_EIGHT_PERIOD,
};

fn data(rel: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "data", rel].iter().collect()
}

fn load(rel: &str) -> ScenarioFile {
    ScenarioFile::from_json(&std::fs::read_to_string(data(rel)).unwrap()).unwrap()
}

/// Bodies, names and step counts exactly; `dt` up to rounding of the
/// period expression it was computed from.
fn assert_matches(got: &ScenarioFile, want: &ScenarioFile, what: &str) {
    assert_eq!(got.name, want.name, "{what}");
    assert_eq!(got.g, want.g, "{what}");
    assert_eq!(got.bodies, want.bodies, "{what}");
    assert_eq!(got.integrate.steps, want.integrate.steps, "{what}");
    assert_eq!(got.integrate.scheme, want.integrate.scheme, "{what}");
    assert_eq!(got.detect, want.detect, "{what}");
    let rel = (got.integrate.dt / want.integrate.dt - 1.0).abs();
    assert!(rel <= 1e-15, "{what}: dt {} vs {}", got.integrate.dt, want.integrate.dt);
}

fn tag(x: f64) -> String {
    x.to_string().replace('.', "p")
}

#[test]
fn named_scenarios_match_initializers() {
    let kepler = kepler_two_body_init(1.0, 1.0, 1.0, 0.5, 1.0).unwrap();
    let expected = [
        (
            "scenarios/figure_eight.json",
            ScenarioFile::from_state("figure-eight", &figure_eight(), FIGURE_EIGHT_PERIOD, 20_000, 1.2),
        ),
        (
            "scenarios/kepler_a1_e05.json",
            ScenarioFile::from_state("kepler-a1-e0.5", &kepler, 2.0 * PI / 2f64.sqrt(), 20_000, 1.2),
        ),
        (
            "scenarios/lagrange_triangle.json",
            ScenarioFile::from_state(
                "lagrange-r1",
                &lagrange_equilateral(1.0, 1.0, 1.0).unwrap(),
                2.0 * PI / 3f64.sqrt(),
                20_000,
                1.2,
            ),
        ),
    ];
    for (path, want) in expected {
        assert_matches(&load(path), &want, path);
    }
}

#[test]
fn hyperbolic_scenario_matches_initializer() {
    let file = load("scenarios/hyperbolic.json");
    let s = hyperbolic_two_body(1.0, 1.0, 1.0, 1.5, 1.0).unwrap();
    assert_eq!(file.bodies, s.bodies());
}

#[test]
fn grid_matches_initializers() {
    let mut count = 0;
    for (m1, m2) in [(1.0, 1.0), (3.0, 1.0), (2.0, 5.0)] {
        for a in [0.5, 1.0, 2.0] {
            for e in [0.0, 0.3, 0.7] {
                let stem = format!("m{m1}_{m2}_a{}_e{}", tag(a), tag(e));
                let s = kepler_two_body_init(m1, m2, a, e, 1.0).unwrap();
                let t = 2.0 * PI * (a * a * a / (m1 + m2)).sqrt();
                let name = format!("m{m1}_{m2}_a{a}_e{e}");
                let want = ScenarioFile::from_state(&name, &s, t, 20_000, 1.2);
                assert_matches(&load(&format!("scenarios/two_body_grid/{stem}.json")), &want, &stem);
                count += 1;
            }
        }
    }
    let on_disk = std::fs::read_dir(data("scenarios/two_body_grid")).unwrap().count();
    assert_eq!(on_disk, count);
}

#[test]
fn problem_files_parse() {
    for entry in std::fs::read_dir(data("problems")).unwrap() {
        let path = entry.unwrap().path();
        let p: ProblemFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(p.to_matrix().is_ok(), "{}", path.display());
    }
}
