//! `blobrep`: tables and verification reports for the doubly critical blob
//! algebra.

mod commands;
mod render;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "blobrep",
    version,
    about = "Exact graded representation theory of the blob algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded decomposition matrix [Δ(μ):L(λ)]_v.
    Decomp(Common),
    /// Tilting Δ-multiplicities (T(μ):Δ(λ))_v.
    Tilting {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// Graded and ungraded dimensions of the cell modules.
    WeylDims(Common),
    /// Socle of each indecomposable projective.
    Socle(Common),
    /// Gram ranks from both presentations against the predicted dim L(λ).
    Gram(Common),
    /// Check the diagrammatic identities on explicit modules.
    #[command(group(ArgGroup::new("select").required(true).args(["identity", "all"])))]
    Verify {
        #[command(flatten)]
        common: Common,
        /// Short (a–i) or long identity name.
        #[arg(long)]
        identity: Option<String>,
        /// Restrict to parameter sets with this k.
        #[arg(long)]
        k: Option<usize>,
        /// Run every identity that applies at this n.
        #[arg(long)]
        all: bool,
    },
    /// Linkage classes, or the linked paths of one weight.
    Linkage {
        #[command(flatten)]
        common: Common,
        /// Bipartition (1^a,1^b) given as `a,b`.
        #[arg(long, value_parser = parse_pair)]
        lambda: Option<(u32, u32)>,
    },
    /// Standard tableaux with degrees and residues.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_pair)]
        lambda: Option<(u32, u32)>,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    e: u32,
    /// Bicharge `a,b`.
    #[arg(long, value_parser = parse_pair, default_value = "0,2")]
    kappa: (u32, u32),
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lift the size guards.
    #[arg(long)]
    force: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Formula,
    Construction,
    Both,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// A check failed; the output was still produced. Exit code 1.
    Verification(String),
}

impl From<blobrep::Error> for Failure {
    fn from(e: blobrep::Error) -> Self {
        match e {
            blobrep::Error::InvalidParams(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
