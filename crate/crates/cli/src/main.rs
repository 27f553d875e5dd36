//! Command line front end for `polyreal`.
//!
//! Exit codes: 0 success, 1 a postcondition check failed, 2 usage error,
//! 3 parse or I/O error, 4 precondition violated by the input.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::{CliError, Status};

#[derive(Parser)]
#[command(name = "polyreal", version, about = "Exact polytope realization tools")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory receiving the output documents.
    #[arg(long, global = true, default_value = ".")]
    pub output: PathBuf,
    /// Document format version to read and write.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=1))]
    pub format_version: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Convex hull and face lattice of a points document.
    Hull { input: PathBuf },
    /// Checks a lattice document: f-vector, Euler relation, diamond property.
    Lattice { input: PathBuf },
    /// Steinitz test of a graph document, optionally with an integer realization.
    Steinitz {
        input: PathBuf,
        #[arg(long)]
        realize: bool,
    },
    /// Lawrence extensions.
    #[command(subcommand)]
    Lawrence(LawrenceCommand),
    /// The Pascal configuration and its 5-polytope.
    Pascal {
        /// Abscissae of the hexagon on the parabola y = x², comma separated.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<String>>,
    },
    /// Connected sum of two polytopes along facets.
    Consum {
        first: PathBuf,
        second: PathBuf,
        /// Facet of the first polytope, as point indices.
        #[arg(long, value_delimiter = ',', required = true)]
        facet1: Vec<usize>,
        /// Facet of the second polytope, listed so that its k-th vertex
        /// matches the k-th vertex of --facet1.
        #[arg(long, value_delimiter = ',', required = true)]
        facet2: Vec<usize>,
    },
    /// Realization-space system of a polytope.
    Rs {
        input: PathBuf,
        /// Basis point indices; defaults to the first affinely independent ones.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
    },
    /// Shor normal form of a primary system.
    Shor {
        #[arg(required_unless_present = "growth")]
        input: Option<PathBuf>,
        /// Known lower bound `x_v > b` as `v=b` (1-based `v`, `b > 1`).
        #[arg(long = "bound")]
        bounds: Vec<String>,
        /// Measure output size over the built-in family with 1..=N terms.
        #[arg(long, conflicts_with = "input")]
        growth: Option<usize>,
    },
    /// Numerical realization with exact certification.
    Realize {
        /// A points document (base realization) or a 3-dimensional lattice document.
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1_000_000)]
        max_denominator: u64,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        max_iters: Option<usize>,
    },
    /// Quick end-to-end checks of every module.
    Selftest,
}

#[derive(Subcommand)]
enum LawrenceCommand {
    /// Extends the given points, or all of them.
    Extend {
        input: PathBuf,
        /// Indices of points to extend, in order.
        #[arg(long, value_delimiter = ',', required_unless_present = "all")]
        index: Vec<usize>,
        /// Lawrence polytope: extend every point of a planar configuration.
        #[arg(long, conflicts_with_all = ["index", "h1", "h2"])]
        all: bool,
        #[arg(long, default_value = "1")]
        h1: String,
        #[arg(long, default_value = "2")]
        h2: String,
    },
    /// Recovers an extended point from its two lifts.
    Reconstruct {
        input: PathBuf,
        #[arg(long)]
        upper: String,
        #[arg(long)]
        lower: String,
    },
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Hull { input } => commands::hull(g, &input),
        Command::Lattice { input } => commands::lattice(g, &input),
        Command::Steinitz { input, realize } => commands::steinitz(g, &input, realize),
        Command::Lawrence(LawrenceCommand::Extend {
            input,
            index,
            all,
            h1,
            h2,
        }) => commands::lawrence_extend(g, &input, &index, all, &h1, &h2),
        Command::Lawrence(LawrenceCommand::Reconstruct { input, upper, lower }) => {
            commands::lawrence_reconstruct(g, &input, &upper, &lower)
        }
        Command::Pascal { x } => commands::pascal(g, x.as_deref()),
        Command::Consum {
            first,
            second,
            facet1,
            facet2,
        } => commands::consum(g, &first, &second, &facet1, &facet2),
        Command::Rs { input, basis } => commands::rs(g, &input, basis.as_deref()),
        Command::Shor { input, bounds, growth } => commands::shor(g, input.as_deref(), &bounds, growth),
        Command::Realize {
            input,
            basis,
            max_denominator,
            restarts,
            max_iters,
        } => commands::realize(g, &input, basis.as_deref(), max_denominator, restarts, max_iters),
        Command::Selftest => commands::selftest(g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
