//! The `cnotpac` command line: reduction, search, verification, learning,
//! the sample-size bound and search benchmarks, with JSON file formats.
//!
//! Exit codes: 0 found/consistent, 1 none/inconsistent/learner failure,
//! 2 any error.

pub mod commands;
pub mod dimacs;
pub mod report;
pub mod schema;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cnotpac", version, about = "Consistency search and learning for CNOT circuits")]
pub struct Cli {
    /// Write the run report here instead of standard error.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// 3SAT (DIMACS) or an arithmetic formula to a NonSingularity instance
    /// and a CNOT sample set.
    Reduce(ReduceArgs),
    /// Search for a CNOT circuit consistent with a sample set, or an
    /// invertible member of an instance's family.
    Solve(SolveArgs),
    /// Check a circuit against a sample set.
    Verify(VerifyArgs),
    /// Run one of the learners.
    Learn(LearnArgs),
    /// Evaluate the proper-learning sample bound.
    Complexity(ComplexityArgs),
    /// Time the exhaustive search at several worker counts.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// DIMACS CNF file.
    #[arg(required_unless_present = "formula", conflicts_with = "formula")]
    pub cnf: Option<PathBuf>,
    /// Arithmetic formula such as `x1*(x2+x3)+x3*x4`.
    #[arg(long)]
    pub formula: Option<String>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Number the target vertex last, as in the worked example.
    #[arg(long)]
    pub fig2_compat: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Brute,
    Affine,
    Decision,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Sample set, instance, or `reduce` output.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "brute")]
    pub strategy: Strategy,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub samples: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LearnMode {
    Pac,
    SingleMeasurement,
    Trivial,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[arg(long, value_enum)]
    pub mode: LearnMode,
    #[arg(long)]
    pub seed: u64,
    /// Weighted sample list (pac) or measurement batch (single-measurement).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Register size for the trivial learner.
    #[arg(long)]
    pub qubits: Option<usize>,
    /// `c` in the `⌈c·s·ln s⌉` draw count.
    #[arg(long, default_value_t = 3.0)]
    pub draw_constant: f64,
    /// Accept (exit 0) iff the hypothesis fits the whole support.
    #[arg(long)]
    pub decide: bool,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    /// Start from the CNOT defaults at this register size.
    #[arg(long, default_value_t = 8)]
    pub qubits: u32,
    /// Gate locality.
    #[arg(long)]
    pub d: Option<u32>,
    /// Interaction degree Δ.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Gate count Γ.
    #[arg(long)]
    pub gates: Option<u32>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Failure probability δ.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Sample set or `reduce` output.
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub workers: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Negative = 1,
    Failure = 2,
}
