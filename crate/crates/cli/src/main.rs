use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

/// Classify endomorphisms with an annihilating polynomial up to conjugation.
#[derive(Debug, Parser)]
#[command(name = "endoclass", version)]
pub struct Cli {
    /// Seed for the randomized polynomial factorization.
    #[arg(long, global = true, default_value_t = 0x5eed_c0de)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the minimal polynomial of a matrix.
    Minpoly { matrix: PathBuf },
    /// Factor a polynomial into monic irreducibles.
    Factor {
        poly: String,
        /// Work over F_p instead of Q.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the annihilator and nu invariants of a matrix.
    Classify {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute a Jordan basis S and canonical form C = S^-1 T S.
    Jordan {
        matrix: PathBuf,
        #[arg(long)]
        basis_out: Option<PathBuf>,
        #[arg(long)]
        form_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide conjugacy of two matrices or two symbolic endomorphisms.
    Conjugate {
        f: PathBuf,
        g: PathBuf,
        /// Write a conjugating matrix tau with tau f tau^-1 = g.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Cross-check by exhaustive search (small F_p instances only).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare conjugacy orbits with classifications on all n x n matrices over F_p.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Endomorphisms of countable-dimensional spaces given as block sums.
    #[command(subcommand)]
    Symbolic(SymbolicCommand),
}

#[derive(Debug, Subcommand)]
pub enum SymbolicCommand {
    Classify {
        endo: PathBuf,
        #[arg(long)]
        json: bool,
    },
    Conjugate { f: PathBuf, g: PathBuf },
    FinitePotent { endo: PathBuf },
    OnePlusInvertible { endo: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
