use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hopfore_cli::{run, Command, InstanceConfig, Options};

#[derive(Parser)]
#[command(name = "hopfore", version, about = "Exact computations with rank-one pointed Hopf algebras and their weight modules")]
struct Cli {
    /// Instance file (key = value lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check against the brute-force oracle
    #[arg(long, global = true)]
    oracle: bool,
    /// Degree cap for the algebra checks
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Vector budget for oracle enumeration
    #[arg(long, global = true)]
    budget: Option<u128>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Hopf algebra axioms on a truncated basis
    VerifyHopf,
    /// Skew-primitive degrees and the rank
    Rank,
    /// Skew-primitive elements for one group-like
    Primitives {
        /// 1, a, a^k or an exponent list such as [4]
        #[arg(long, default_value = "a")]
        g: String,
    },
    /// Simple weight modules
    ListSimples,
    /// Decompose a module into indecomposables
    Classify { expr: String },
    /// Decompose a tensor product and compare with the closed forms
    Tensor { a: String, b: String },
    /// Radical and socle series
    Series { expr: String },
    /// Projective covers of the simples
    Projectives,
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(path) = &cli.config else {
        eprintln!("error: --config <path> is required");
        return ExitCode::from(2);
    };
    let cmd = match cli.cmd {
        Cmd::VerifyHopf => Command::VerifyHopf,
        Cmd::Rank => Command::Rank,
        Cmd::Primitives { g } => Command::Primitives { g },
        Cmd::ListSimples => Command::ListSimples,
        Cmd::Classify { expr } => Command::Classify { expr },
        Cmd::Tensor { a, b } => Command::Tensor { a, b },
        Cmd::Series { expr } => Command::Series { expr },
        Cmd::Projectives => Command::Projectives,
    };
    let opts = Options {
        seed: cli.seed,
        oracle: cli.oracle,
        degree: cli.degree,
        budget: cli.budget,
    };
    let start = Instant::now();
    let report = InstanceConfig::load(path).and_then(|cfg| run(&cfg, &cmd, &opts));
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    match report {
        Ok(r) => {
            if cli.json {
                match r.to_json() {
                    Ok(s) => emit(&format!("{s}\n")),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                emit(&r.to_text());
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
