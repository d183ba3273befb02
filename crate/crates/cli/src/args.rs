use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use korselt::Domain;

#[derive(Debug, Parser)]
#[command(name = "korselt", version, about = "Rational Korselt sets, weights, bounds and base-sets")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for range commands (defaults to one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// JSONL file of previously computed scan records.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Korselt set of N.
    Set {
        n: u64,
        #[arg(long, default_value = "q")]
        domain: Domain,
        /// Also list N itself, the trivial base.
        #[arg(long)]
        include_trivial: bool,
    },
    /// Print the Korselt weight of N, or of every squarefree composite in a range.
    Weight {
        #[arg(required_unless_present = "range", conflicts_with = "range")]
        n: Option<u64>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Option<Vec<u64>>,
        #[arg(long, default_value = "q")]
        domain: Domain,
        #[arg(long)]
        include_trivial: bool,
    },
    /// List the squarefree composites N <= MAX having ALPHA as a Korselt base.
    Base {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(long = "max", value_name = "MAX")]
        max: u64,
    },
    /// List the Carmichael numbers up to MAX.
    Carmichael {
        #[arg(long = "max", value_name = "MAX")]
        max: u64,
    },
    /// Print the lower and upper bounds enclosing every Korselt base of N.
    Bounds { n: u64 },
    /// Check the structural inequalities over a range of N.
    Verify {
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], required = true)]
        range: Vec<u64>,
        /// Comma-separated check ids or groups, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
    },
    /// Write one JSONL record per squarefree composite in a range.
    Scan {
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], required = true)]
        range: Vec<u64>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-N compute time; output is then no longer reproducible.
        #[arg(long)]
        timings: bool,
    },
}
