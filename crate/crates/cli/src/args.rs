use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "optest",
    version,
    about = "Construct and evaluate minimum error-sum, locally optimum and plug-in tests"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a procedure and its analytic error probabilities.
    #[command(allow_negative_numbers = true)]
    Analyze(AnalyzeArgs),
    /// Estimate a procedure's error probabilities by Monte Carlo.
    #[command(allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Rank the optimum, local, unbiased-local and fixed-alpha procedures by power - size.
    #[command(allow_negative_numbers = true)]
    Compare(CompareArgs),
    /// Tabulate alpha + beta of the optimum test over a grid of sample sizes.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Certify the likelihood-ratio region by enumerating every critical region.
    #[command(allow_negative_numbers = true)]
    Oracle(OracleArgs),
    /// Recompute the worked local-versus-comparator example beside its reference values.
    #[command(name = "repro-paper")]
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// normal-mean, normal-variance, bernoulli, poisson, exponential or normal-known-variance.
    #[arg(long)]
    pub family: String,
    /// Parameter under H0 (the variance for normal-variance).
    #[arg(long)]
    pub theta0: f64,
    /// Parameter under H1.
    #[arg(long)]
    pub theta1: f64,
    /// Known standard deviation (normal-mean, normal-known-variance).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Known mean (normal-variance; defaults to 0).
    #[arg(long)]
    pub mean: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcedureArg {
    Optimum,
    Local,
    Lou,
    Plugin,
    FixedAlpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Greater,
    Less,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Literal,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ProcedureArgs {
    #[arg(long, value_enum, default_value_t = ProcedureArg::Optimum)]
    pub procedure: ProcedureArg,
    /// Level of the fixed-alpha comparator (exact normal quantile).
    #[arg(long, conflicts_with = "critical_z")]
    pub alpha: Option<f64>,
    /// Critical value of the fixed-alpha comparator, e.g. 1.64.
    #[arg(long)]
    pub critical_z: Option<f64>,
    #[command(flatten)]
    pub local: LocalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LocalArgs {
    /// Side of the local alternative; defaults to the side theta1 lies on.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// Reading of the lower-side score rule.
    #[arg(long, value_enum, default_value_t = VariantArg::Literal)]
    pub variant: VariantArg,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    #[arg(long, env = "OPTEST_SEED", default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the rendered output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    /// Level of the fixed-alpha row.
    #[arg(long, default_value_t = 0.05, conflicts_with = "critical_z")]
    pub alpha: f64,
    /// Use this critical value for the fixed-alpha row instead of --alpha.
    #[arg(long)]
    pub critical_z: Option<f64>,
    #[command(flatten)]
    pub local: LocalArgs,
    /// Monte Carlo replications per row; 0 skips simulation.
    #[arg(long, default_value_t = 0)]
    pub reps: usize,
    #[arg(long, env = "OPTEST_SEED", default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Comma-separated, strictly increasing sample sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReproArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}
