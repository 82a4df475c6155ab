//! Command-line driver: builds tables, runs sweeps, reproduces the published
//! tables and figure data, and emits CSV/TSV.
//!
//! Exit codes: 0 success, 2 configuration error, 3 internal cross-check
//! failure.

use std::fmt;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod output;

pub use output::Format;

#[derive(Debug, Parser)]
#[command(name = "farey", version, about = "Farey product valuations, sizes, and remainder terms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Tsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Tsv => Format::Tsv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Inversion,
    Direct,
    Oracle,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Inversion => "inversion",
            MethodArg::Direct => "direct",
            MethodArg::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Mikolas,
    Inf,
    P0,
    P1,
    P2,
}

impl KindArg {
    pub fn name(self) -> &'static str {
        match self {
            KindArg::Mikolas => "mikolas",
            KindArg::Inf => "inf",
            KindArg::P0 => "p0",
            KindArg::P1 => "p1",
            KindArg::P2 => "p2",
        }
    }

    pub fn is_padic(self) -> bool {
        matches!(self, KindArg::P0 | KindArg::P1 | KindArg::P2)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the arithmetic tables and dump them per k.
    Sieve {
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the unreduced-product valuation (or its base-b analogue).
    Ordg {
        #[arg(short, long)]
        prime: Option<u64>,
        #[arg(short, long)]
        base: Option<u64>,
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the reduced-product valuation by one or more methods.
    Ordf {
        #[arg(short, long)]
        prime: Option<u64>,
        #[arg(short, long)]
        base: Option<u64>,
        #[arg(long)]
        n_max: u64,
        /// Comma-separated list; with several methods all value columns are
        /// emitted and compared.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "inversion")]
        method: Vec<MethodArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Valuations at n = p^r - 1 for r up to max-power, with ratio columns.
    Table {
        #[arg(short, long)]
        prime: u64,
        #[arg(long)]
        max_power: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Main-term/remainder-term series of the chosen decomposition.
    Remainder {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short, long)]
        prime: Option<u64>,
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Property scans: sign patterns at powers, integrality, p^2-1 values.
    Scan {
        /// Sign/growth scan of ord_p over n <= n-max (requires --prime).
        #[arg(long)]
        properties: bool,
        /// List all n <= n-max with integral reciprocal Farey product.
        #[arg(long)]
        integers: bool,
        /// Valuations at p^2 - 1 for all primes p < p-max, two routes.
        #[arg(long)]
        psq: bool,
        #[arg(short, long)]
        prime: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Jump comparison of the archimedean and p-adic remainder series.
    Jumps {
        #[arg(short, long)]
        prime: u64,
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    CrossCheck(String),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::CrossCheck(msg) => write!(f, "cross-check failure: {msg}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<farey_core::Error> for CliError {
    fn from(e: farey_core::Error) -> Self {
        match e {
            farey_core::Error::CrossCheck { .. } => CliError::CrossCheck(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::CrossCheck(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// Configures the global rayon pool from `FAREY_THREADS` (machine
/// parallelism when unset). Safe to call more than once.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("FAREY_THREADS") {
        let threads: usize = raw
            .parse()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| CliError::Config(format!("invalid FAREY_THREADS value {raw:?}")))?;
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

/// Parses argv and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match init_threads().and_then(|()| commands::dispatch(cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("farey: {e}");
            e.exit_code()
        }
    }
}
