use std::path::PathBuf;
use std::process::ExitCode;

use augdim::augda::DEFAULT_SEED;
use augdim::harness::{cmd_check, cmd_derive, cmd_simulate, HarnessError, RunConfig};
use augdim::nbody::Recurrence;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "augdim", version, about = "Augmented dimensional analysis and n-body period checks")]
struct Cli {
    /// Output directory for reports and tables.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Residual threshold for functional-equation checks.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Powers P to evaluate, comma separated.
    #[arg(long = "P", global = true, value_delimiter = ',', default_value = "1,3")]
    powers: Vec<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the reduced system and functional equation of a problem file.
    Derive { problem: PathBuf },
    /// Integrate a scenario file and detect its period.
    Simulate {
        scenario: PathBuf,
        /// Keep every k-th sample in the trajectory CSV.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Compare measured periods with the energy formulas.
    Check {
        /// Scenario files or directories of them.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// m3 values for the Li-Liao table, comma separated.
        #[arg(long, value_delimiter = ',')]
        liliao: Option<Vec<f64>>,
    },
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let mut cfg = RunConfig {
        out_dir: cli.out,
        seed: cli.seed,
        tol: cli.tol,
        powers: cli.powers,
        ..RunConfig::default()
    };
    match cli.command {
        Command::Derive { problem } => {
            let r = cmd_derive(&problem, &cfg)?;
            println!(
                "repeating sets: {}, full system size: {}",
                r.repeating_sets.len(),
                r.full_system_size
            );
            for eq in &r.reduced {
                println!("  {}", eq.rendered);
            }
            match r.functional_equation {
                Some(fe) => println!("functional equation: arity {}, alpha {}", fe.arity, fe.alpha),
                None => println!("no functional equation (fewer than two symmetric equations)"),
            }
            for c in &r.candidates {
                let verdict = if c.pass { "pass" } else { "fail" };
                println!("  {:?} P={}: max residual {:.3e} {verdict}", c.family, c.power, c.max_residual);
            }
        }
        Command::Simulate { scenario, stride } => {
            cfg.stride = stride;
            let r = cmd_simulate(&scenario, &cfg)?;
            if let Recurrence::Periodic(p) = r.recurrence {
                println!(
                    "{}: T = {:.10} (residual {:.2e}), E = {:.12}, max energy drift {:.2e}",
                    r.scenario, p.period, p.residual, r.energy, r.max_energy_drift
                );
            }
        }
        Command::Check { inputs, liliao } => {
            cfg.liliao = liliao;
            let r = cmd_check(&inputs, &cfg)?;
            for row in &r.rows {
                let ratios: Vec<String> = row
                    .formulas
                    .iter()
                    .map(|f| format!("ratio_P{} = {:.9}", f.power, f.ratio))
                    .collect();
                println!("{}: T = {:.9}, {}", row.scenario, row.period, ratios.join(", "));
            }
            println!("wrote {}", cfg.out_dir.join("comparison.csv").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("augdim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
