//! `nilcohom`: cohomology, minimal models and structural checks for
//! finite-dimensional Lie algebras over the rationals.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Failure;
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "nilcohom", version, about = "Exact Lie algebra cohomology and minimal A-infinity models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Built-in algebra, e.g. `heisenberg:3`, `free_nilpotent:2,3`, `sl2`.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Structure constants in JSON.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this path instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers, weight refinement and cocycle representatives.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Transferred A-infinity operations on cohomology.
    MinimalModel {
        #[command(flatten)]
        source: Source,
        /// Highest arity to compute; defaults to every arity that can be nonzero.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        arity: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Verdict-producing checks.
    Check {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Whether cohomology is generated by degree one under the operations.
    OneGenerated {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        arity: Option<u64>,
        /// Highest weight for the bar cross-check.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        max_weight: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Bar cohomology of the cochain algebra against Sym of the algebra.
    Pbw {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_weight: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated Littlewood identity.
    Littlewood {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
        vars: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Weight-graded Euler characteristic against the product formula.
    Euler {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, output) = match cli.command {
        Command::Cohomology { source, output } => (commands::cohomology(&source), output),
        Command::MinimalModel { source, arity, output } => {
            (commands::minimal_model(&source, arity.map(|a| a as usize)), output)
        }
        Command::Check { check } => match check {
            Check::OneGenerated { source, arity, max_weight, output } => {
                (commands::one_generated(&source, arity.map(|a| a as usize), max_weight), output)
            }
            Check::Pbw { source, max_weight, output } => (commands::pbw(&source, max_weight), output),
            Check::Littlewood { vars, max_degree, output } => (commands::littlewood(vars as usize, max_degree), output),
            Check::Euler { source, output } => (commands::euler(&source), output),
        },
    };
    let report = match report {
        Ok(r) => r,
        Err(f) => return fail(f),
    };
    let text = match report.render(output.format) {
        Ok(t) => t,
        Err(e) => return fail(Failure::Internal(e)),
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return fail(Failure::Input(format!("cannot write {}: {e}", path.display())));
            }
        }
        None => print!("{text}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn fail(f: Failure) -> ExitCode {
    match f {
        Failure::Input(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Failure::Internal(msg) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
