use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug, Clone, Serialize, Deserialize)]
#[command(
    name = "stopset",
    version,
    about = "Stopping-set distributions, bounds and erasure decoding for binary parity-check ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Master seed for stochastic commands
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads; results never depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Primary output file (stdout if absent); the run manifest is written next to it
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Average stopping-set weight distribution of an ensemble (CSV)
    Dist(DistArgs),
    /// Exact value and bounds for the redundant random ensemble (CSV)
    Bounds(BoundsArgs),
    /// Grid of Q_{L,w}, the counts of L x w matrices with minimum distance >= 2 (JSON)
    Qlw(QlwArgs),
    /// Asymptotic growth-rate curve on a grid of normalized weights (CSV)
    Growth(GrowthArgs),
    /// Critical exponents of the redundant random, bipartite and constant-row ensembles (JSON)
    Exponent(ExponentArgs),
    /// Redundant extension of a parity-check matrix file
    Extend(ExtendArgs),
    /// Stopping distance and multiplicity of a matrix (JSON)
    Stopdist(StopdistArgs),
    /// Monte Carlo block error rate of peeling on the erasure channel (CSV)
    Simulate(SimulateArgs),
    /// Exact block error rate by enumerating all erasure patterns (CSV)
    ExactFer(ExactFerArgs),
    /// Regenerate a reference table and diff it against the bundled values
    Repro(ReproArgs),
    /// Re-run the command recorded in a run manifest
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Dist(_) => "dist",
            Self::Bounds(_) => "bounds",
            Self::Qlw(_) => "qlw",
            Self::Growth(_) => "growth",
            Self::Exponent(_) => "exponent",
            Self::Extend(_) => "extend",
            Self::Stopdist(_) => "stopdist",
            Self::Simulate(_) => "simulate",
            Self::ExactFer(_) => "exact-fer",
            Self::Repro(_) => "repro",
            Self::Replay(_) => "replay",
        }
    }

    pub fn stochastic(&self) -> bool {
        matches!(self, Self::Simulate(_) | Self::Repro(ReproArgs { target: ReproTarget::Table6, .. }))
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Random,
    ConstRow,
    Bipartite,
    RedundantRandom,
    RedundantConstRow,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Number of rows
    #[arg(long)]
    pub m: Option<usize>,
    /// Code length
    #[arg(long)]
    pub n: usize,
    /// Row weight
    #[arg(long)]
    pub r: Option<usize>,
    /// Variable-node degree
    #[arg(long)]
    pub c: Option<usize>,
    /// Check-node degree
    #[arg(long)]
    pub d: Option<usize>,
    /// Extension degree
    #[arg(long)]
    pub l: Option<usize>,
    /// Last weight to emit (default n)
    #[arg(long)]
    pub w_max: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    /// Last weight to emit (default min(n, 16))
    #[arg(long)]
    pub w_max: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QMethod {
    /// Single-threaded Gray-code enumeration
    Gray,
    /// Gray-code enumeration split across workers
    Parallel,
    /// Rank-stratified count, no enumeration
    Rank,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct QlwArgs {
    #[arg(long, default_value_t = 5)]
    pub l_max: usize,
    #[arg(long, default_value_t = 5)]
    pub w_max: usize,
    #[arg(long, value_enum, default_value_t = QMethod::Gray)]
    pub method: QMethod,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Curve {
    Random,
    ConstRow,
    Bipartite,
    /// Lower and upper bounds for the redundant random ensemble
    Sigma,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct GrowthArgs {
    #[arg(long, value_enum)]
    pub curve: Curve,
    /// Design rate
    #[arg(long, default_value_t = 0.5)]
    pub rate: f64,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Normalized extension degree
    #[arg(long)]
    pub mu: Option<f64>,
    /// Grid intervals on [0, 1]
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ExponentArgs {
    #[arg(long, default_value_t = 0.5)]
    pub rate: f64,
    /// Normalized extension degree (default 1 - rate)
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub c_min: usize,
    #[arg(long, default_value_t = 20)]
    pub c_max: usize,
    #[arg(long, default_value_t = 2)]
    pub r_min: usize,
    #[arg(long, default_value_t = 40)]
    pub r_max: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixFormat {
    /// `.alist` extension means alist, anything else the dense text format
    Auto,
    Text,
    Alist,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct MatrixInput {
    /// Parity-check matrix file
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Auto)]
    pub input_format: MatrixFormat,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// Extension degree; must divide the row count
    #[arg(long)]
    pub l: usize,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Auto)]
    pub output_format: MatrixFormat,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct StopdistArgs {
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// Largest weight searched (default min(n, 10))
    #[arg(long)]
    pub w_max: Option<usize>,
    /// Also list the stopping sets of minimum weight (1-based column indices)
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// Erasure probabilities, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = stopset::becsim::DEFAULT_TRIALS)]
    pub trials: u64,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ExactFerArgs {
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// Erasure probabilities as decimals or fractions (0.3, 1/2), comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproTarget {
    /// Constant row weight ensemble, sparse case
    Table1,
    /// Constant row weight ensemble, dense case
    Table2,
    /// Redundant random ensemble, L = 2
    Table3,
    /// Q_{L,w} grid
    Table4,
    /// Redundant random ensemble, L = 5
    Table5,
    /// Row counts of sampled 50 x 100 matrices and their extensions
    Table6,
    /// Typical stopping distances at n = 1024
    Deltas,
    /// Critical exponents
    Exponents,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ReproArgs {
    #[arg(value_enum)]
    pub target: ReproTarget,
    /// Stopping-set search depth for table6
    #[arg(long, default_value_t = 4)]
    pub w_max: usize,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run
    pub manifest: PathBuf,
}
