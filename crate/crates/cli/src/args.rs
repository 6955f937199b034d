use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "obnox",
    version,
    about = "Obnoxious egalitarian committee selection on metric spaces"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pick the best available solver for the instance.
    Solve(SolveArgs),
    /// Exhaustive search over all k-subsets.
    Oracle(SolveArgs),
    /// Exact solver for lambda = 1 in the plane.
    Planar(SolveArgs),
    /// Quarter approximation for lambda = 1 in any metric.
    Quarter(SolveArgs),
    /// (1 - eps) bicriteria scheme for any lambda (needs --epsilon).
    Fptas(SolveArgs),
    /// Exact solver for lambda = k.
    #[command(name = "lambda-k")]
    LambdaK(SolveArgs),
    /// Generate an instance (and a ground-truth sidecar for reductions).
    Gen(GenArgs),
    /// Run solvers on a seeded suite or given instances, emit CSV.
    Bench(BenchArgs),
    /// Check a solver against a ground-truth sidecar.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance document ("-" for stdin).
    #[arg(long)]
    pub input: PathBuf,
    /// Result document (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Decision threshold; overrides the instance's own t.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = obnox_core::oracle::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u128,
    #[arg(long, default_value_t = obnox_core::fptas::DEFAULT_ENUM_CAP)]
    pub enum_cap: u128,
    /// Check the triangle inequality of matrix inputs (O(n^3)).
    #[arg(long)]
    pub validate_triangle: bool,
    /// Write wall_time_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Euclidean,
    Graph,
    Hitting,
    Udg,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance document (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Ground-truth sidecar (default: <output>.truth.json for reductions).
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub voters: usize,
    #[arg(long, default_value_t = 6)]
    pub candidates: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Rank; for hitting instances, the required hits per set.
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
    /// Extra edge probability for random graphs.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 5)]
    pub universe: usize,
    #[arg(long, default_value_t = 5)]
    pub sets: usize,
    /// Reach multiplicity lambda by adding lambda - 1 dummy elements to
    /// every set (and to k), keeping plain hitting-set semantics.
    #[arg(long)]
    pub dummy: bool,
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    /// Side of the square the UDG points are drawn from.
    #[arg(long, default_value_t = 6.0)]
    pub side: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Planar,
    Quarter,
    Fptas,
    LambdaK,
    Hitting,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance documents; without any, a seeded suite is generated.
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "planar")]
    pub suite: Suite,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Epsilons for the fptas rows.
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.25,0.1")]
    pub epsilon: Vec<f64>,
    /// CSV destination (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = obnox_core::oracle::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u128,
    #[arg(long, default_value_t = obnox_core::fptas::DEFAULT_ENUM_CAP)]
    pub enum_cap: u128,
    /// Write ms as 0.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Ground-truth sidecar.
    #[arg(long)]
    pub truth: PathBuf,
    /// Solver to check: auto, oracle, planar, quarter, fptas or lambda-k.
    #[arg(long, default_value = "auto")]
    pub algorithm: String,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = obnox_core::oracle::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u128,
    #[arg(long, default_value_t = obnox_core::fptas::DEFAULT_ENUM_CAP)]
    pub enum_cap: u128,
}
