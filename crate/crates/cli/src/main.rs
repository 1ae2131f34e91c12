//! `scoreseq`: count, enumerate, check, decompose and biject tournament
//! score sequences.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 usage or parse error, 3 cache
//! corruption, 4 internal invariant failure.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use scoreseq::{Strategy, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Scores,
    Strong,
    Egz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Sequential,
    Parallel,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Sequential => Strategy::Sequential,
            StrategyArg::Parallel => Strategy::Parallel,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "scoreseq", version, about = "Tournament score sequences")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// CSV file caching the count table; extended in place by appending.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Largest n accepted by brute-force enumeration.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_ENUMERATION_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print |S_n|, |T_n| or |EGZ_n| (or the whole table with --all).
    Count {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        all: bool,
    },
    /// List every score sequence, strong sequence or EGZ multiset of size n.
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// Landau and strength verdicts for a sequence.
    Check { seq: String },
    /// Split a score sequence into strong summands.
    Decompose { seq: String },
    /// Apply the pointed-sequence bijection, or its inverse with --inverse.
    Phi {
        seq: Option<String>,
        #[arg(long)]
        point: Option<usize>,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_name = "MULTISET")]
        egz: Option<String>,
        #[arg(long, value_name = "SEQ", allow_hyphen_values = true)]
        rest: Option<String>,
    },
    /// Check every identity against brute-force enumeration up to --max-n.
    Verify {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Parallel)]
        strategy: StrategyArg,
    },
    /// Time the counting recursion and report operation counts.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Parallel)]
        strategy: StrategyArg,
    },
}

/// Resolved global options.
#[derive(Debug, Clone)]
pub struct Config {
    pub enumeration_cap: usize,
    pub table_cache_path: Option<PathBuf>,
    pub output_format: Format,
}

#[derive(Debug)]
pub enum Failure {
    /// The report, printed to stdout before exiting with status 1.
    VerifyFailed(String),
    Usage(String),
    Cache(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::VerifyFailed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cache(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl From<scoreseq::Error> for Failure {
    fn from(e: scoreseq::Error) -> Self {
        match e {
            scoreseq::Error::Inconsistent(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        enumeration_cap: cli.cap as usize,
        table_cache_path: cli.cache,
        output_format: cli.format,
    };
    let result = match cli.command {
        Command::Count { kind, n, all } => commands::count(&config, kind, n, all),
        Command::Enumerate { kind, n } => commands::enumerate(&config, kind, n),
        Command::Check { seq } => commands::check(&config, &seq),
        Command::Decompose { seq } => commands::decompose(&config, &seq),
        Command::Phi {
            seq,
            point,
            inverse,
            egz,
            rest,
        } => {
            if inverse {
                commands::phi_inverse(&config, egz.as_deref(), rest.as_deref().unwrap_or(""))
            } else {
                commands::phi_forward(&config, seq.as_deref(), point)
            }
        }
        Command::Verify { max_n, strategy } => commands::verify(&config, max_n, strategy.into()),
        Command::Bench { n, strategy } => commands::bench(&config, n as usize, strategy.into()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::VerifyFailed(report) => {
                    print!("{report}");
                    eprintln!("scoreseq: verification failed");
                }
                Failure::Usage(m) | Failure::Cache(m) | Failure::Internal(m) => {
                    eprintln!("scoreseq: {m}")
                }
            }
            ExitCode::from(failure.code())
        }
    }
}
