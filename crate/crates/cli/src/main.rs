//! `bkcomp`: runs completion experiments on fixtures and writes
//! deterministic JSON and TSV reports.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use bkcomp::simpalg::SimpAlgError;
use bkcomp::triple::TripleError;
use clap::{Parser, Subcommand};

use commands::{aq, cobar, kan, selftest, subdiv};

#[derive(Parser)]
#[command(name = "bkcomp", version, about = "Bounded, exact completion experiments")]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Seed for randomized fixtures, recorded in every header.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cobar resolution of a module along a finite algebra, with its spectral sequence.
    Cobar(cobar::Args),
    /// Abelianization experiment on a simplicial augmented algebra.
    Aq(aq::Args),
    /// Bounded small object argument on a finite simplicial set.
    Kan(kan::Args),
    /// Edgewise subdivision and homotopy witness checks.
    Subdiv(subdiv::Args),
    /// The invariant suite.
    Selftest(selftest::Args),
}

/// Bad input or flags.
#[derive(Debug)]
pub struct Usage(pub String);

/// A computation ran but a checked invariant failed.
#[derive(Debug)]
pub struct Invariant(pub String);

/// A bound or budget stopped the computation.
#[derive(Debug)]
pub struct Capacity(pub String);

macro_rules! message_error {
    ($($t:ident),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
        impl std::error::Error for $t {}
    )*};
}

message_error!(Usage, Invariant, Capacity);

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Invariant>() {
            return 3;
        }
        if cause.is::<Capacity>()
            || matches!(cause.downcast_ref::<TripleError>(), Some(TripleError::Capacity(_)))
            || matches!(cause.downcast_ref::<SimpAlgError>(), Some(SimpAlgError::Capacity { .. }))
        {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Cobar(a) => cobar::run(&a, &cli.out, cli.seed),
        Command::Aq(a) => aq::run(&a, &cli.out, cli.seed),
        Command::Kan(a) => kan::run(&a, &cli.out, cli.seed),
        Command::Subdiv(a) => subdiv::run(&a, &cli.out, cli.seed),
        Command::Selftest(a) => selftest::run(&a, &cli.out, cli.seed),
    };
    match run {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
