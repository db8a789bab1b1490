//! `newtonlog`: Newton polyhedra, toric resolutions and log-form checks.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails,
//! 2 on input or contract errors.

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "newtonlog",
    version,
    about = "Newton polyhedra, toric resolutions and log-pluricanonical forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct PolyArgs {
    /// Polynomial text, e.g. "x1^2+x2^3".
    #[arg(long, conflicts_with = "input")]
    pub poly: Option<String>,
    /// File holding polynomial text or polynomial JSON.
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    /// Number of variables; inferred from the largest index when absent.
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Newton polyhedron: vertices, facets, compact faces, optional Delta_1.
    Newton(commands::newton::Args),
    /// Dual fan and its unimodular refinement with a regularity certificate.
    Resolve(commands::resolve::Args),
    /// Nondegeneracy and the filtration / log-form verification sweeps.
    Check(commands::check::Args),
    /// Pole-order check for a one-parameter deformation (t is the last variable).
    Extend(commands::extend::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Newton(a) => commands::newton::run(a),
        Command::Resolve(a) => commands::resolve::run(a),
        Command::Check(a) => commands::check::run(a),
        Command::Extend(a) => commands::extend::run(a),
    };
    match res {
        Ok(out) => {
            print!("{}", out.rendered);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
