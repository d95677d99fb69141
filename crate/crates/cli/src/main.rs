//! `gerbegw`: Gromov-Witten invariants of gerbes from the command line.
//!
//! Exit codes: 0 success, 1 an identity check failed, 2 unreadable input,
//! 3 a well-formed query outside the domain, 4 a configured limit was hit.

mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gerbegw::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("identity check failed")]
    IdentityFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::IdentityFailed => 1,
            CliError::Parse(_) => 2,
            CliError::Core(e) if e.is_limit() => 4,
            CliError::Core(
                Error::Parse { .. }
                | Error::UnknownTheory(_)
                | Error::Io(_)
                | Error::InconsistentPairing,
            ) => 2,
            CliError::Core(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "gerbegw",
    version,
    about = "Genus-0 Gromov-Witten invariants of abelian gerbes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    /// Cap on group orders, enumerations and truncation sizes.
    #[arg(long, global = true, env = "GERBEGW_LIMIT")]
    pub limit: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BaseArgs {
    /// Built-in base theory: P1 or P2.
    #[arg(long, conflicts_with = "table")]
    pub base: Option<String>,
    /// JSON table of base invariants.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TruncationArgs {
    #[arg(long, default_value = "2")]
    pub beta_max: String,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub psi_max: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One invariant: base (bare labels), twisted sectors (g=...) or
    /// character basis (rho=...).
    Invariant {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        gerbe: Option<String>,
        #[arg(long)]
        beta: String,
        /// Repeat once per marked point.
        #[arg(long = "ins")]
        ins: Vec<String>,
    },
    /// Admissible sector vectors with their (rho, r, m) data.
    Sectors {
        #[arg(long)]
        gerbe: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: String,
    },
    /// Decomposition identity, block structure and transform consistency.
    Verify {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        gerbe: String,
        #[command(flatten)]
        truncation: TruncationArgs,
        /// Eigenvalue gap for the semisimplicity probe.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Seed of the generic element used by the probe.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Character table of mu_{r1} x ... x mu_{rk}, given as r1:...:rk.
    Chartable {
        #[arg(long)]
        group: String,
    },
    /// Truncated genus-0 potential of the base, or of the gerbe in the
    /// character basis.
    Potential {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        gerbe: Option<String>,
        #[command(flatten)]
        truncation: TruncationArgs,
    },
    /// Boundary index set, with node data when a sector vector is given.
    Nodes {
        #[arg(long)]
        gerbe: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: String,
        /// Residues of one marked point; repeat n times.
        #[arg(long = "sector")]
        sectors: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err((output, err)) => {
            if let Some(output) = output {
                print!("{output}");
            }
            eprintln!("gerbegw: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
