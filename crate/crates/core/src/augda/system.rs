use itertools::Itertools;
use serde::Serialize;

use super::AugdaError;
use crate::dimquant::{repeating_sets, solve_exponents, DimMatrix, ExponentSolution, RepeatingSet};

/// One equation `t^K = prod(x_j^K_j) * psi(pi_1, ..., pi_k)` of a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiEquation {
    pub repeat: RepeatingSet,
    pub solution: ExponentSolution,
    /// Symmetric variables that belong to the repeating set.
    pub distinguished: Vec<usize>,
    /// Argument indices of the pi-groups in the order they are passed to psi.
    pub psi_args: Vec<usize>,
}

impl PiEquation {
    fn pi_group(&self, var: usize) -> &crate::dimquant::PiGroup {
        self.solution
            .pi_groups
            .iter()
            .find(|g| g.var == var)
            .expect("psi argument without a pi-group")
    }

    /// Exponent of argument `var` in the prefactor (zero when not repeating).
    pub fn prefactor_exp(&self, var: usize) -> i64 {
        self.repeat
            .iter()
            .position(|&j| j == var)
            .map_or(0, |p| self.solution.repeat_exps[p])
    }
}

/// A system of dimensional equations for one target, plus the set of
/// arguments declared interchangeable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSystem {
    matrix: DimMatrix,
    symmetric: Vec<usize>,
    equations: Vec<PiEquation>,
}

/// The identity `psi(x_1, ..., x_k) = x_1^alpha psi(1/x_1, x_2/x_1, ..., x_k/x_1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalEquation {
    pub arity: usize,
    pub alpha: i64,
}

impl FunctionalEquation {
    pub fn new(arity: usize, alpha: i64) -> Result<Self, AugdaError> {
        if arity == 0 {
            return Err(AugdaError::InvalidArgument(
                "functional equation needs at least one argument".into(),
            ));
        }
        Ok(FunctionalEquation { arity, alpha })
    }

    /// Prefactor `x_1^alpha` and the transformed argument list.
    pub fn transform(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let x1 = x[0];
        let mut args = Vec::with_capacity(x.len());
        args.push(1.0 / x1);
        args.extend(x[1..].iter().map(|&xi| xi / x1));
        (x1.powi(self.alpha as i32), args)
    }
}

impl PiSystem {
    pub fn matrix(&self) -> &DimMatrix {
        &self.matrix
    }

    pub fn symmetric_vars(&self) -> &[usize] {
        &self.symmetric
    }

    pub fn equations(&self) -> &[PiEquation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Human-readable form, e.g. `T^2 = m1^-1 d^3 G^-1 psi(m2/m1)`.
    pub fn render_equation(&self, eq: &PiEquation) -> String {
        let names = self.matrix.args();
        let power = |name: &str, e: i64| match e {
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        let lhs = power(&self.matrix.target().name, eq.solution.target_exp);
        let mut factors: Vec<String> = eq
            .repeat
            .iter()
            .zip(&eq.solution.repeat_exps)
            .filter(|(_, &e)| e != 0)
            .map(|(&j, &e)| power(&names[j].name, e))
            .collect();
        if factors.is_empty() {
            factors.push("1".into());
        }
        let args: Vec<String> = eq
            .psi_args
            .iter()
            .map(|&v| {
                let g = eq.pi_group(v);
                let num = power(&names[v].name, g.power);
                let den: Vec<String> = eq
                    .repeat
                    .iter()
                    .zip(&g.exps)
                    .filter(|(_, &e)| e != 0)
                    .map(|(&j, &e)| power(&names[j].name, e))
                    .collect();
                if den.is_empty() {
                    num
                } else {
                    format!("{num}/{}", den.join(" "))
                }
            })
            .collect();
        format!("{lhs} = {} psi({})", factors.join(" "), args.join(", "))
    }
}

/// The full system: one equation per repeating set and per ordering of the
/// symmetric variables that appear as psi arguments (`n!` for `n` masses).
pub fn generate_full_system(m: &DimMatrix, symmetric: &[usize]) -> Result<PiSystem, AugdaError> {
    if let Some(&bad) = symmetric.iter().find(|&&i| i >= m.args().len()) {
        return Err(AugdaError::InvalidArgument(format!(
            "symmetric variable index {bad} out of range"
        )));
    }
    if symmetric.iter().unique().count() != symmetric.len() {
        return Err(AugdaError::InvalidArgument("symmetric variables repeat".into()));
    }
    if let Some(&first) = symmetric.first() {
        if let Some(&odd) = symmetric.iter().find(|&&i| m.args()[i].dim != m.args()[first].dim) {
            return Err(AugdaError::SymmetricDimensionMismatch {
                first: m.args()[first].name.clone(),
                other: m.args()[odd].name.clone(),
            });
        }
    }
    let mut sym_sorted = symmetric.to_vec();
    sym_sorted.sort_unstable();

    let mut equations = Vec::new();
    for repeat in repeating_sets(m)? {
        let solution = solve_exponents(m, &repeat)?;
        let distinguished: Vec<usize> = sym_sorted
            .iter()
            .copied()
            .filter(|i| repeat.contains(i))
            .collect();
        let free: Vec<usize> = sym_sorted
            .iter()
            .copied()
            .filter(|i| !repeat.contains(i))
            .collect();
        let others: Vec<usize> = solution
            .pi_groups
            .iter()
            .map(|g| g.var)
            .filter(|v| !sym_sorted.contains(v))
            .collect();
        let orderings: Vec<Vec<usize>> = if free.is_empty() {
            vec![Vec::new()]
        } else {
            free.iter().copied().permutations(free.len()).collect()
        };
        for order in orderings {
            let psi_args = order.into_iter().chain(others.iter().copied()).collect();
            equations.push(PiEquation {
                repeat: repeat.clone(),
                solution: solution.clone(),
                distinguished: distinguished.clone(),
                psi_args,
            });
        }
    }
    Ok(PiSystem {
        matrix: m.clone(),
        symmetric: sym_sorted,
        equations,
    })
}

/// Keeps one equation per repeating set, the one whose psi arguments list
/// the remaining symmetric variables in index order.
pub fn reduce_system(full: &PiSystem) -> PiSystem {
    let mut equations: Vec<PiEquation> = Vec::new();
    for eq in &full.equations {
        if equations.iter().any(|e| e.repeat == eq.repeat) {
            continue;
        }
        let mut canonical = eq.clone();
        let (mut sym, rest): (Vec<usize>, Vec<usize>) = eq
            .psi_args
            .iter()
            .partition(|v| full.symmetric.contains(v));
        sym.sort_unstable();
        canonical.psi_args = sym.into_iter().chain(rest).collect();
        equations.push(canonical);
    }
    PiSystem {
        matrix: full.matrix.clone(),
        symmetric: full.symmetric.clone(),
        equations,
    }
}

/// Equates the first two equations of a reduced system after exchanging
/// their distinguished symmetric variables and reads off the resulting
/// functional equation for the common psi.
pub fn derive_functional_equation(reduced: &PiSystem) -> Result<FunctionalEquation, AugdaError> {
    let fail = |why: &str| Err(AugdaError::NotReducible(why.to_string()));
    let [eq1, eq2, ..] = reduced.equations.as_slice() else {
        return fail("fewer than two equations");
    };
    let (&[a], &[b]) = (eq1.distinguished.as_slice(), eq2.distinguished.as_slice()) else {
        return fail("each repeating set must contain exactly one symmetric variable");
    };
    if a == b {
        return fail("equations share their distinguished variable");
    }
    let shared1: Vec<usize> = eq1.repeat.iter().copied().filter(|&j| j != a).collect();
    let shared2: Vec<usize> = eq2.repeat.iter().copied().filter(|&j| j != b).collect();
    if shared1 != shared2 {
        return fail("repeating sets differ in more than the distinguished variable");
    }
    if eq1.solution.target_exp != eq2.solution.target_exp {
        return fail("target exponents differ");
    }
    if shared1
        .iter()
        .any(|&j| eq1.prefactor_exp(j) != eq2.prefactor_exp(j))
    {
        return fail("shared repeating variables carry different exponents");
    }
    if eq1.prefactor_exp(a) != eq2.prefactor_exp(b) {
        return fail("distinguished variables carry different exponents");
    }
    if eq1.psi_args.first() != Some(&b) || eq2.psi_args.first() != Some(&a) {
        return fail("psi arguments are not in canonical order");
    }
    if eq1.psi_args[1..] != eq2.psi_args[1..] {
        return fail("remaining psi arguments differ");
    }

    // Every pi-group must be a pure ratio (y / distinguished)^p with one p.
    let ratio_power = |eq: &PiEquation, dist: usize| -> Option<i64> {
        let pos = eq.repeat.iter().position(|&j| j == dist)?;
        let mut power = None;
        for &v in &eq.psi_args {
            if !reduced.symmetric.contains(&v) {
                return None;
            }
            let g = eq.pi_group(v);
            let pure = g
                .exps
                .iter()
                .enumerate()
                .all(|(k, &e)| if k == pos { e == g.power } else { e == 0 });
            if !pure || power.is_some_and(|p| p != g.power) {
                return None;
            }
            power = Some(g.power);
        }
        power
    };
    let (Some(p1), Some(p2)) = (ratio_power(eq1, a), ratio_power(eq2, b)) else {
        return fail("pi-groups are not ratios of symmetric variables");
    };
    if p1 != p2 {
        return fail("pi-group powers differ between equations");
    }

    // a^e psi((y/a)^p) = b^e psi((y/b)^p), x_1 = (b/a)^p => alpha = e / p.
    let exp = eq1.prefactor_exp(a) - eq2.prefactor_exp(a);
    if exp % p1 != 0 {
        return fail("prefactor exponent is not a multiple of the pi-group power");
    }
    FunctionalEquation::new(eq1.psi_args.len(), exp / p1)
}
