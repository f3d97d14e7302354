use std::path::Path;

use serde::Serialize;

use super::artifacts::write_json;
use super::{read_input, stem, ArtifactHeader, HarnessError, RunConfig};
use crate::augda::{
    candidate, derive_functional_equation, generate_full_system, reduce_system,
    verify_functional_equation_seeded, AugdaError, Family, FunctionalEquation, PiSystem,
};
use crate::dimquant::{repeating_sets, DimError, ProblemFile};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedEquation {
    pub repeating_set: Vec<String>,
    pub rendered: String,
    pub target_exp: i64,
    pub repeat_exps: Vec<i64>,
    /// `(variable, power, exponents over the repeating set)` per psi argument.
    pub pi_groups: Vec<(String, i64, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateResidual {
    pub family: Family,
    pub power: u32,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeriveReport {
    #[serde(flatten)]
    pub header: ArtifactHeader,
    pub problem: String,
    pub target: String,
    pub symmetric: Vec<String>,
    pub repeating_sets: Vec<Vec<String>>,
    pub full_system_size: usize,
    pub reduced: Vec<ReducedEquation>,
    /// Absent when the system has fewer than two symmetric equations.
    pub functional_equation: Option<FunctionalEquation>,
    pub candidates: Vec<CandidateResidual>,
}

fn error_needle(e: &AugdaError) -> Option<&str> {
    match e {
        AugdaError::Dim(d) => match d {
            DimError::Malformed { formula, .. } => Some(formula),
            DimError::UnknownBase { name, .. }
            | DimError::DuplicateName(name)
            | DimError::LengthMismatch { name, .. }
            | DimError::NotExpressible { name, .. }
            | DimError::UnknownVariable(name) => Some(name),
            DimError::TargetNotExpressible { target } => Some(target),
            DimError::NotIndependent { .. } | DimError::IndexOutOfRange(_) => None,
        },
        AugdaError::SymmetricDimensionMismatch { other, .. } => Some(other),
        _ => None,
    }
}

/// 1-based line of the first quoted occurrence of `needle`.
fn find_line(text: &str, needle: &str) -> Option<usize> {
    let quoted = format!("\"{needle}\"");
    let lines = || text.lines().enumerate();
    lines()
        .find(|(_, l)| l.contains(&quoted))
        .or_else(|| lines().find(|(_, l)| l.contains(needle)))
        .map(|(i, _)| i + 1)
}

fn reduced_equation(sys: &PiSystem, k: usize) -> ReducedEquation {
    let eq = &sys.equations()[k];
    let m = sys.matrix();
    ReducedEquation {
        repeating_set: m.names(&eq.repeat),
        rendered: sys.render_equation(eq),
        target_exp: eq.solution.target_exp,
        repeat_exps: eq.solution.repeat_exps.clone(),
        pi_groups: eq
            .psi_args
            .iter()
            .map(|&v| {
                let g = eq
                    .solution
                    .pi_groups
                    .iter()
                    .find(|g| g.var == v)
                    .expect("psi argument has a pi-group");
                (m.args()[v].name.clone(), g.power, g.exps.clone())
            })
            .collect(),
    }
}

/// Runs the derivation pipeline on problem JSON text.
pub fn derive_problem(text: &str, path: &Path, header: ArtifactHeader, cfg: &RunConfig) -> Result<DeriveReport, HarnessError> {
    let problem: ProblemFile = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let contextual = |e: AugdaError| HarnessError::Problem {
        path: path.to_path_buf(),
        line: error_needle(&e).and_then(|n| find_line(text, n)),
        source: e,
    };
    let m = problem.to_matrix().map_err(|e| contextual(e.into()))?;
    let symmetric = problem.symmetric_indices(&m).map_err(|e| contextual(e.into()))?;
    let sets = repeating_sets(&m).map_err(|e| contextual(e.into()))?;
    let full = generate_full_system(&m, &symmetric).map_err(contextual)?;
    let reduced = reduce_system(&full);
    let functional_equation = match derive_functional_equation(&reduced) {
        Ok(fe) => Some(fe),
        Err(AugdaError::NotReducible(_)) => None,
        Err(e) => return Err(contextual(e)),
    };
    let mut candidates = Vec::new();
    if let Some(fe) = &functional_equation {
        for family in [Family::PeriodForm, Family::DistanceForm] {
            for &p in &cfg.powers {
                let c = candidate(family, p, 1.0).map_err(contextual)?;
                let r = verify_functional_equation_seeded(&c, fe, cfg.samples, cfg.tol, cfg.seed)
                    .map_err(contextual)?;
                candidates.push(CandidateResidual {
                    family,
                    power: p,
                    max_residual: r.max_residual,
                    pass: r.pass,
                });
            }
        }
    }
    let mut sym_sorted = symmetric.clone();
    sym_sorted.sort_unstable();
    Ok(DeriveReport {
        header,
        problem: path.display().to_string(),
        target: m.target().name.clone(),
        symmetric: m.names(&sym_sorted),
        repeating_sets: sets.iter().map(|s| m.names(s)).collect(),
        full_system_size: full.len(),
        reduced: (0..reduced.len()).map(|k| reduced_equation(&reduced, k)).collect(),
        functional_equation,
        candidates,
    })
}

/// Reads a problem file, writes `<stem>.derive.json` to `cfg.out_dir`.
pub fn cmd_derive(path: &Path, cfg: &RunConfig) -> Result<DeriveReport, HarnessError> {
    cfg.validate()?;
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| HarnessError::Parse {
        path: path.to_path_buf(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    let header = ArtifactHeader::new("derive", &[(path, &bytes)], cfg);
    let report = derive_problem(&text, path, header, cfg)?;
    write_json(&cfg.out_dir.join(format!("{}.derive.json", stem(path))), &report)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_BODY_T: &str = r#"{
  "target": {"name": "T", "dim": "T"},
  "args": [
    {"name": "m1", "dim": "M"},
    {"name": "m2", "dim": "M"},
    {"name": "d", "dim": "L"},
    {"name": "G", "dim": "L^3 T^-2 M^-1"}
  ]
}"#;

    fn run(text: &str) -> Result<DeriveReport, HarnessError> {
        let cfg = RunConfig::default();
        let path = Path::new("p.json");
        let header = ArtifactHeader::new("derive", &[(path, text.as_bytes())], &cfg);
        derive_problem(text, path, header, &cfg)
    }

    #[test]
    fn two_body_period() {
        let r = run(TWO_BODY_T).unwrap();
        assert_eq!(r.repeating_sets.len(), 2);
        assert_eq!(r.reduced[0].rendered, "T^2 = m1^-1 d^3 G^-1 psi(m2/m1)");
        assert_eq!(r.functional_equation.unwrap().alpha, -1);
        let pass: Vec<_> = r.candidates.iter().filter(|c| c.pass).map(|c| c.family).collect();
        assert!(pass.iter().all(|&f| f == Family::PeriodForm));
        assert_eq!(pass.len(), 2);
    }

    #[test]
    fn errors_carry_line() {
        let text = TWO_BODY_T.replace("\"dim\": \"L\"", "\"dim\": \"Q\"");
        match run(&text) {
            Err(HarnessError::Problem { line: Some(6), .. }) => {}
            other => panic!("{other:?}"),
        }
        let target_only_time = TWO_BODY_T.replace("\"L^3 T^-2 M^-1\"", "\"L^3 M^-1\"");
        match run(&target_only_time) {
            Err(e @ HarnessError::Problem { .. }) => assert_eq!(e.exit_code(), 2),
            other => panic!("{other:?}"),
        }
        match run("{ \"target\": ") {
            Err(HarnessError::Parse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
