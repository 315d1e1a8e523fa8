mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Report;

#[derive(Parser, Debug)]
#[command(name = "verba", version, about = "Word calculus and test words in free products of finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Free product such as `Z2*Z3`.
    #[arg(long, global = true, default_value = "Z2*Z3")]
    pub group: String,
    /// Cayley tables (`order n` blocks); overrides --group.
    #[arg(long, global = true)]
    pub group_file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Syllable cap for concrete evaluation.
    #[arg(long, global = true, env = "VERBA_BUDGET")]
    pub budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Axis window in periods for tree queries.
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Enumeration bound for the solver.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_len: usize,
    /// Comma-separated word literals.
    #[arg(long, global = true)]
    pub tuple: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced form, lengths and decomposition of a word.
    Analyze { word: String },
    /// Run a verification suite.
    Verify { suite: String },
    /// Emit a test-word family as an SLP dump with its constants.
    Build {
        #[arg(value_enum)]
        family: Family,
        /// Number of variables for `en`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Comma-separated exponent tuple for `jk`.
        #[arg(long)]
        k: Option<String>,
    },
    /// Bass–Serre tree queries.
    Tree {
        #[command(subcommand)]
        query: TreeQuery,
    },
    /// Straight-line program utilities.
    Slp {
        #[command(subcommand)]
        query: SlpQuery,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    L2,
    En,
    Jk,
    Twords,
    Pwords,
    Mwords,
}

#[derive(Subcommand, Debug)]
pub enum TreeQuery {
    /// Distance between two vertices (`w` or `(w)H_a`).
    Dist { v1: String, v2: String },
    /// Vertices of the axis of a hyperbolic word.
    Axis { word: String },
    /// Translation length of a word.
    Translen { word: String },
    /// Overlap of two axes.
    Overlap { w1: String, w2: String },
}

#[derive(Subcommand, Debug)]
pub enum SlpQuery {
    /// Node count, exponent sums and length bound of a dump (`-` for stdin).
    Stats { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match commands::run(&cli) {
        Ok(report) => {
            emit(&report, format);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.json()).expect("JSON values serialize")),
    }
}
