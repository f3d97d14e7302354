use itertools::Itertools;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use super::{DimError, DimVector, QuantityVar};

/// Dimensional matrix: a target quantity and the argument quantities it is
/// assumed to depend on, all expressed over the same base dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimMatrix {
    base: Vec<String>,
    target: QuantityVar,
    args: Vec<QuantityVar>,
}

/// Indices (into [`DimMatrix::args`]) of one set of repeating variables,
/// in ascending order.
pub type RepeatingSet = Vec<usize>;

/// A dimensionless group `y^power / prod(x_j^exps[j])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiGroup {
    /// Index of the non-repeating argument `y`.
    pub var: usize,
    pub power: i64,
    /// Exponents of the repeating variables, aligned with the repeating set.
    pub exps: Vec<i64>,
}

/// Integer exponents of one dimensional decomposition
/// `t^K = prod(x_j^K_j) * psi(pi_1, ..., pi_{n-r})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSolution {
    pub target_exp: i64,
    pub repeat_exps: Vec<i64>,
    pub pi_groups: Vec<PiGroup>,
}

impl DimMatrix {
    pub fn new(
        base: Vec<String>,
        target: QuantityVar,
        args: Vec<QuantityVar>,
    ) -> Result<Self, DimError> {
        for (i, name) in base.iter().enumerate() {
            if base[..i].contains(name) {
                return Err(DimError::DuplicateName(name.clone()));
            }
        }
        for var in std::iter::once(&target).chain(&args) {
            if var.dim.len() != base.len() {
                return Err(DimError::LengthMismatch {
                    name: var.name.clone(),
                    expected: base.len(),
                    found: var.dim.len(),
                });
            }
        }
        for (i, var) in args.iter().enumerate() {
            if var.name == target.name || args[..i].iter().any(|v| v.name == var.name) {
                return Err(DimError::DuplicateName(var.name.clone()));
            }
        }
        Ok(DimMatrix { base, target, args })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn target(&self) -> &QuantityVar {
        &self.target
    }

    pub fn args(&self) -> &[QuantityVar] {
        &self.args
    }

    pub fn arg_index(&self, name: &str) -> Option<usize> {
        self.args.iter().position(|v| v.name == name)
    }

    pub fn names(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.args[i].name.clone()).collect()
    }

    fn columns(&self, idx: &[usize]) -> Vec<&DimVector> {
        idx.iter().map(|&i| &self.args[i].dim).collect()
    }
}

/// Rank of the argument columns under exact rational row reduction.
pub fn rank(m: &DimMatrix) -> usize {
    let cols: Vec<&DimVector> = m.args.iter().map(|v| &v.dim).collect();
    rank_of(&cols)
}

/// Rank of an arbitrary list of column vectors of equal length.
pub fn rank_of(cols: &[&DimVector]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let mut rows = to_rows(cols);
    row_reduce(&mut rows, cols.len())
}

fn to_rows(cols: &[&DimVector]) -> Vec<Vec<Rational64>> {
    let height = cols[0].len();
    (0..height)
        .map(|r| cols.iter().map(|c| c.exponents()[r]).collect())
        .collect()
}

/// Reduces `rows` in place to reduced row echelon form over the first
/// `pivot_cols` columns; returns the number of pivots.
fn row_reduce(rows: &mut [Vec<Rational64>], pivot_cols: usize) -> usize {
    let mut pivot_row = 0;
    for col in 0..pivot_cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let p = rows[pivot_row][col];
        for v in rows[pivot_row].iter_mut() {
            *v /= p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for c in 0..rows[r].len() {
                    let delta = f * rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

/// Solves `sum_j c_j * cols[j] = rhs` exactly. `cols` must be linearly
/// independent; returns `None` when `rhs` lies outside their span.
fn solve_in_span(cols: &[&DimVector], rhs: &DimVector) -> Option<Vec<Rational64>> {
    let k = cols.len();
    if k == 0 {
        return rhs.is_dimensionless().then(Vec::new);
    }
    let mut rows = to_rows(cols);
    for (row, b) in rows.iter_mut().zip(rhs.exponents()) {
        row.push(*b);
    }
    let pivots = row_reduce(&mut rows, k);
    debug_assert_eq!(pivots, k);
    if rows[k..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(rows[..k].iter().map(|row| row[k]).collect())
}

/// Clears denominators of `[lead; rest]` and normalizes to a gcd-1 integer
/// vector with a positive leading entry.
fn normalize(lead: Rational64, rest: &[Rational64]) -> (i64, Vec<i64>) {
    let lcm = rest
        .iter()
        .chain(std::iter::once(&lead))
        .fold(1i64, |acc, r| acc.lcm(r.denom()));
    let scale = |r: &Rational64| (r * Rational64::from_integer(lcm)).to_integer();
    let mut lead_i = scale(&lead);
    let mut rest_i: Vec<i64> = rest.iter().map(scale).collect();
    let g = rest_i.iter().fold(lead_i.abs(), |acc, &x| acc.gcd(&x));
    if g > 1 {
        lead_i /= g;
        rest_i.iter_mut().for_each(|x| *x /= g);
    }
    if lead_i < 0 {
        lead_i = -lead_i;
        rest_i.iter_mut().for_each(|x| *x = -*x);
    }
    (lead_i, rest_i)
}

/// All sets of repeating variables: subsets of size `rank(m)` that are
/// dimensionally independent, listed in lexicographic order of argument
/// position.
pub fn repeating_sets(m: &DimMatrix) -> Result<Vec<RepeatingSet>, DimError> {
    let r = rank(m);
    let all: Vec<usize> = (0..m.args.len()).collect();
    let with_target: Vec<&DimVector> = m
        .columns(&all)
        .into_iter()
        .chain(std::iter::once(&m.target.dim))
        .collect();
    if rank_of(&with_target) != r {
        return Err(DimError::TargetNotExpressible {
            target: m.target.name.clone(),
        });
    }
    if r == 0 {
        return Ok(vec![Vec::new()]);
    }
    Ok(all
        .into_iter()
        .combinations(r)
        .filter(|set| rank_of(&m.columns(set)) == r)
        .collect())
}

/// Exact integer exponents of the target and every non-repeating argument
/// over the repeating set `repeat`.
pub fn solve_exponents(m: &DimMatrix, repeat: &[usize]) -> Result<ExponentSolution, DimError> {
    if let Some(&bad) = repeat.iter().find(|&&i| i >= m.args.len()) {
        return Err(DimError::IndexOutOfRange(bad));
    }
    let mut sorted = repeat.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let cols = m.columns(repeat);
    if sorted.len() != repeat.len() || rank_of(&cols) != repeat.len() {
        return Err(DimError::NotIndependent {
            set: m.names(repeat),
        });
    }

    let decompose = |var: &QuantityVar| -> Result<(i64, Vec<i64>), DimError> {
        let coeffs = solve_in_span(&cols, &var.dim).ok_or_else(|| DimError::NotExpressible {
            name: var.name.clone(),
            set: m.names(repeat),
        })?;
        Ok(normalize(Rational64::from_integer(1), &coeffs))
    };

    let (target_exp, repeat_exps) = decompose(&m.target)?;
    let mut pi_groups = Vec::new();
    for (i, var) in m.args.iter().enumerate() {
        if repeat.contains(&i) {
            continue;
        }
        let (power, exps) = decompose(var)?;
        pi_groups.push(PiGroup { var: i, power, exps });
    }
    Ok(ExponentSolution {
        target_exp,
        repeat_exps,
        pi_groups,
    })
}

impl ExponentSolution {
    /// Checks `[t]^K = prod [x_j]^K_j` and the dimensionlessness of every
    /// pi-group exactly.
    pub fn reconstructs(&self, m: &DimMatrix, repeat: &[usize]) -> bool {
        let combine = |exps: &[i64]| {
            repeat
                .iter()
                .zip(exps)
                .fold(DimVector::dimensionless(m.base.len()), |acc, (&j, &e)| {
                    &acc * &m.args[j].dim.powi(e)
                })
        };
        if m.target.dim.powi(self.target_exp) != combine(&self.repeat_exps) {
            return false;
        }
        self.pi_groups.iter().all(|g| {
            let pi = &m.args[g.var].dim.powi(g.power) / &combine(&g.exps);
            pi.is_dimensionless()
        })
    }

    /// The normalization invariants: positive leading exponents and gcd 1.
    pub fn is_normalized(&self) -> bool {
        let gcd_one = |lead: i64, rest: &[i64]| rest.iter().fold(lead, |a, &b| a.gcd(&b)) == 1;
        self.target_exp > 0
            && gcd_one(self.target_exp, &self.repeat_exps)
            && self
                .pi_groups
                .iter()
                .all(|g| g.power > 0 && gcd_one(g.power, &g.exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimquant::{default_base, parse_dim};

    fn matrix(target: (&str, &str), args: &[(&str, &str)]) -> DimMatrix {
        let base = default_base();
        let t = QuantityVar::parse(target.0, target.1, &base).unwrap();
        let a = args
            .iter()
            .map(|(n, d)| QuantityVar::parse(*n, d, &base).unwrap())
            .collect();
        DimMatrix::new(base, t, a).unwrap()
    }

    fn two_body_period() -> DimMatrix {
        matrix(
            ("T", "T"),
            &[("m1", "M"), ("m2", "M"), ("d", "L"), ("G", "L^3 T^-2 M^-1")],
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&two_body_period()), 3);
        assert_eq!(rank(&matrix(("T", "T"), &[("m1", "M")])), 1);
        assert_eq!(rank(&matrix(("T", "T"), &[])), 0);
    }

    #[test]
    fn empty_args_with_dimensional_target_is_ill_posed() {
        let m = matrix(("T", "T"), &[]);
        assert!(matches!(
            repeating_sets(&m),
            Err(DimError::TargetNotExpressible { .. })
        ));
        let m = matrix(("c", "1"), &[]);
        assert_eq!(repeating_sets(&m).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn identity_decomposition() {
        let m = matrix(("t", "T"), &[("x", "T")]);
        let sets = repeating_sets(&m).unwrap();
        assert_eq!(sets, vec![vec![0]]);
        let sol = solve_exponents(&m, &sets[0]).unwrap();
        assert_eq!(sol.target_exp, 1);
        assert_eq!(sol.repeat_exps, vec![1]);
        assert!(sol.pi_groups.is_empty());
    }

    #[test]
    fn fractional_target_root_is_cleared() {
        // [t]^2 = [x] when [x] = T^2.
        let m = matrix(("t", "T"), &[("x", "T^2")]);
        let sol = solve_exponents(&m, &[0]).unwrap();
        assert_eq!((sol.target_exp, sol.repeat_exps.clone()), (2, vec![1]));
        assert!(sol.is_normalized());
    }

    #[test]
    fn dependent_set_is_rejected() {
        let m = two_body_period();
        assert!(matches!(
            solve_exponents(&m, &[0, 1, 2]),
            Err(DimError::NotIndependent { .. })
        ));
        assert!(matches!(
            solve_exponents(&m, &[0, 0, 2]),
            Err(DimError::NotIndependent { .. })
        ));
        assert!(matches!(
            solve_exponents(&m, &[0, 9]),
            Err(DimError::IndexOutOfRange(9))
        ));
    }

    #[test]
    fn non_maximal_set_reports_unexpressible_variable() {
        let m = two_body_period();
        assert!(matches!(
            solve_exponents(&m, &[0, 2]),
            Err(DimError::NotExpressible { .. })
        ));
    }

    #[test]
    fn rank_oracle_agrees_with_determinant() {
        // Independent oracle: a 3x3 subset has rank 3 iff its integer
        // determinant is nonzero.
        let m = two_body_period();
        let det = |s: &[usize]| {
            let c: Vec<Vec<i64>> = s
                .iter()
                .map(|&i| m.args()[i].dim.exponents().iter().map(|e| e.to_integer()).collect())
                .collect();
            c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
                - c[1][0] * (c[0][1] * c[2][2] - c[0][2] * c[2][1])
                + c[2][0] * (c[0][1] * c[1][2] - c[0][2] * c[1][1])
        };
        for s in (0..4).combinations(3) {
            let cols: Vec<&DimVector> = s.iter().map(|&i| &m.args()[i].dim).collect();
            assert_eq!(rank_of(&cols) == 3, det(&s) != 0, "subset {s:?}");
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let base = default_base();
        let t = QuantityVar::parse("T", "T", &base).unwrap();
        let a = vec![
            QuantityVar::parse("m", "M", &base).unwrap(),
            QuantityVar::parse("m", "M", &base).unwrap(),
        ];
        assert!(matches!(
            DimMatrix::new(base.clone(), t.clone(), a),
            Err(DimError::DuplicateName(_))
        ));
        let short = QuantityVar::new("x", parse_dim("L", &base[..2]).unwrap());
        assert!(matches!(
            DimMatrix::new(base, t, vec![short]),
            Err(DimError::LengthMismatch { .. })
        ));
    }
}
