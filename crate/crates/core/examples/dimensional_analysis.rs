//! Repeating sets, exponents and the symmetric reduction for the n-body
//! period `T(m_1..m_n, d, G)`.
//!
//! cargo run --example dimensional_analysis -- 4

use augdim::augda::{derive_functional_equation, generate_full_system, reduce_system};
use augdim::dimquant::ProblemFile;

fn main() {
    let n: usize = std::env::args().nth(1).map_or(3, |a| a.parse().expect("body count"));
    let mut args: Vec<String> = (1..=n).map(|i| format!(r#"{{"name":"m{i}","dim":"M"}}"#)).collect();
    args.push(r#"{"name":"d","dim":"L"}"#.into());
    args.push(r#"{"name":"G","dim":"L^3 T^-2 M^-1"}"#.into());
    let text = format!(r#"{{"target":{{"name":"T","dim":"T"}},"args":[{}]}}"#, args.join(","));

    let problem: ProblemFile = serde_json::from_str(&text).unwrap();
    let m = problem.to_matrix().unwrap();
    let sym = problem.symmetric_indices(&m).unwrap();
    let full = generate_full_system(&m, &sym).unwrap();
    let reduced = reduce_system(&full);
    println!("{n} bodies: {} equations, {} after reduction", full.len(), reduced.len());
    for eq in reduced.equations() {
        println!("  {}", reduced.render_equation(eq));
    }
    let fe = derive_functional_equation(&reduced).unwrap();
    println!("psi has {} arguments and satisfies the equation with alpha = {}", fe.arity, fe.alpha);
}
