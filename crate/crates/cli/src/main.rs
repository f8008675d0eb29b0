//! `twistinv`: twisted Alexander polynomials, Fitting invariants, Novikov
//! numbers and acyclicity cones from presentations, PD codes or braids.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use input::{Global, Source};

#[derive(Parser, Debug)]
#[command(name = "twistinv", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twisted Alexander polynomial (Wada invariant)
    Tap {
        #[command(flatten)]
        source: Source,
        /// Suppress this generator's column (1-based) instead of the default
        #[arg(long, value_name = "J")]
        column: Option<usize>,
    },
    /// Twisted Fitting invariant δ_m of a group, or the Fitting sequences of
    /// a chain complex
    Fitting {
        #[command(flatten)]
        source: Source,
        /// Chain complex file (JSON) instead of a group
        #[arg(long, value_name = "FILE", conflicts_with_all = ["pres", "pd", "braid", "rep"])]
        complex: Option<PathBuf>,
        #[arg(short, long, default_value_t = 1, allow_negative_numbers = true)]
        m: i64,
    },
    /// Novikov numbers and the vanishing criterion for a class ξ
    Novikov {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE", conflicts_with_all = ["pres", "pd", "braid", "rep"])]
        complex: Option<PathBuf>,
        /// Values of ξ on the basis of H, e.g. "1" or "2,-1/3"
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// Cones of ξ for which A(G, ρ) is ξ-monic
    Cones {
        #[command(flatten)]
        source: Source,
        /// Drop redundant inequalities
        #[arg(long)]
        minimize: bool,
        /// Sample N directions of the plane (rank 2 only)
        #[arg(long, value_name = "N")]
        sweep: Option<usize>,
        /// Also report which cone contains this class
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// Obstruction to fibring over the circle
    Fibred {
        #[command(flatten)]
        source: Source,
    },
    /// Intersection of cone systems, from several representations of one
    /// group or from saved cone files
    Intersect {
        #[command(flatten)]
        source: Source,
        /// Additional representation files
        #[arg(long = "with-rep", value_name = "FILE")]
        with_rep: Vec<PathBuf>,
        /// Cone system files (JSON) to intersect
        #[arg(long, value_name = "FILE", num_args = 1..)]
        cones: Vec<PathBuf>,
        #[arg(long)]
        minimize: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command, &cli.global) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_status(&e))
        }
    }
}
