//! Command-line front end for `hyperirreg`.
//!
//! Exit codes: 0 success, 1 a bound was violated (a solver or
//! implementation bug, never a mathematical possibility), 2 bad input,
//! 3 the spectral solver did not converge.

mod analyze;
mod generate;
mod report;
mod rewire;
mod transform;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hyperirreg::{parse_hgr, HgrDocument};

pub use verify::{VerifyConfig, VerifyShape, VerifySummary};

pub const EXIT_OK: u8 = 0;
pub const EXIT_BOUND_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "hyperirreg", version, about = "Spectral irregularity of uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius, irregularity measures and every bound for one file
    Analyze(AnalyzeArgs),
    /// Check all bounds on seeded random instances
    Verify(VerifyArgs),
    /// Rewire to a near-regular hypergraph with the same n and m
    Regularize(RegularizeArgs),
    /// Build a product, blow-up or union
    Transform(TransformArgs),
    /// Write a seeded random hypergraph
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Relative bracket width at which the power iteration stops
    #[arg(long, default_value_t = 1e-10)]
    pub solver_tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iterations: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    /// File holding a `partition c_1 … c_n` line (overrides one in FILE)
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Absolute tolerance for the bound checks
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Rank; drawn from {2, 3, 4} per instance when omitted
    #[arg(long = "r")]
    pub rank: Option<usize>,
    /// Vertex count; drawn from [r, max-n] when omitted
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Edge count; drawn from all feasible values when omitted
    #[arg(long = "m")]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Class sizes `n_1,…,n_r`, or `auto` to draw them per instance
    #[arg(long)]
    pub partite: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    /// Run the blow-up, product, Weyl and rewiring checks on every k-th instance
    #[arg(long, default_value_t = 10)]
    pub extra_every: usize,
    /// Worker threads; the summary does not depend on it
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct RegularizeArgs {
    pub file: PathBuf,
    /// Output file; the swap trace goes to `<OUT>.trace`
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    /// Balance degrees within each partition class instead of globally
    #[arg(long)]
    pub partitewise: bool,
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(subcommand)]
    pub op: TransformOp,
}

#[derive(Debug, Subcommand)]
pub enum TransformOp {
    /// Direct product A × B
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Blow-up with factor K on every vertex, or per-vertex factors
    Blowup {
        file: PathBuf,
        #[arg(long, conflicts_with = "ks")]
        k: Option<usize>,
        /// Comma-separated factors k_1,…,k_n
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<usize>>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Edge union on the shared vertex universe
    Union {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long = "r")]
    pub rank: Option<usize>,
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long = "m")]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Class sizes `n_1,…,n_r`; writes an r-partite instance with its partition
    #[arg(long, value_delimiter = ',')]
    pub partite: Option<Vec<usize>>,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

/// Error already rendered for the user, plus its exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub(crate) fn read_hgr(path: &Path) -> Result<HgrDocument, Failure> {
    parse_hgr(&read_text(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub(crate) fn write_output(
    path: Option<&Path>,
    text: &str,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("stdout: {e}"))),
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Analyze(args) => analyze::run(args, out),
        Command::Verify(args) => verify::run(args, out),
        Command::Regularize(args) => rewire::run(args, out),
        Command::Transform(args) => transform::run(args, out),
        Command::Generate(args) => generate::run(args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
