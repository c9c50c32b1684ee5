//! `aybe`: construct `r_(n,d)`, verify identities at seeded exact points,
//! expand Laurent data and compare with the closed-form oracles.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or precondition error.

use std::process::ExitCode;

use aybe_core::kernel::parse_rational;
use aybe_core::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "aybe", version, about = "Exact rational solutions of the associative Yang-Baxter equation")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// 𝟙⊗𝟙/2v + P/(y₁ − y₂) for n = 2
    Yang2,
    /// closed form of r(2,1)
    R21,
    /// closed form of r(3,1)
    R31,
    /// the r(3,1) formula with `(y₁ + v)` in its e31⊗e32 term; not unitary
    R31Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Aybe,
    Dual,
    Unitarity,
    Nondeg,
    Cybe,
    Qybe,
    R0r1,
    Residue,
    Conds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    R21,
    R31,
    C21,
    C31,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `--n N --d D` for the construction, or `--builtin NAME`.
#[derive(Args, Debug, Clone)]
pub struct Source {
    #[arg(long, requires = "d", conflicts_with = "builtin")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub d: Option<usize>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Seed of the sample stream.
    #[arg(long, env = "YBE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Sample points per law.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate r_(n,d)(v; y₁, y₂).
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        v: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y1: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y2: Rational,
    },
    /// Check identities at seeded points.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Laws to check, in order; repeat or comma-separate.
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        law: Vec<Law>,
        /// Fixed v for the QYBE and the condition battery.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "1")]
        v0: Rational,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Laurent coefficients r₋₁ … r_K in v at (y₁, y₂).
    Expand {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y1: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y2: Rational,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Compare the construction with a closed-form oracle.
    Oracle {
        #[arg(long, value_enum)]
        which: Oracle,
        /// Compare r31 with the formula exactly as printed.
        #[arg(long)]
        as_printed: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// The nilpotent matrix J of (n, d).
    Jmatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Infinitesimal symmetries of pr⊗pr(r₀) over sampled (y₁, y₂).
    Symmetries {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sampling: Sampling,
    },
}

/// A command that could not run (exit 2) or ran and found a failure (exit 1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<aybe_core::Error> for CliError {
    fn from(e: aybe_core::Error) -> Self {
        use aybe_core::Error as E;
        match e {
            E::InvalidPair { .. } | E::Undefined => CliError::Usage(commands::pair_message(&e)),
            E::SingularResidue | E::CoincidingPoints | E::DimensionDrop { .. } | E::PoleHit(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { n, d, v, y1, y2 } => commands::construct(n, d, &v, &y1, &y2, cli.format),
        Command::Verify {
            source,
            law,
            v0,
            sampling,
        } => verify::run(&source, &law, &v0, &sampling, cli.format),
        Command::Expand { source, y1, y2, order } => commands::expand(&source, &y1, &y2, order, cli.format),
        Command::Oracle {
            which,
            as_printed,
            sampling,
        } => commands::oracle(which, as_printed, &sampling, cli.format),
        Command::Jmatrix { n, d } => commands::jmatrix(n, d, cli.format),
        Command::Symmetries { source, sampling } => commands::symmetries(&source, &sampling, cli.format),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
