use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kstab", version, about = "Exact delta-invariant bounds for asymptotically log del Pezzo pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// S, A and A/S for a scenario at each angle
    Compute(ScenarioArgs),
    /// Piecewise volume profile vol(L - xZ) with its Zariski chambers
    Profile(ScenarioArgs),
    /// Closed forms in the angle and the power series of A/S
    Expand(ScenarioArgs),
    /// Known K-stability verdicts with the matching GIT verdicts
    Table(OutputArgs),
    /// Moment polygon data for S_I with I inside {0, inf}
    Toric(ToricArgs),
    /// GIT stability of weighted points on a line
    Git(GitArgs),
    /// Run every reference check and report mismatches
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Append approximate decimal values to rationals
    #[arg(long)]
    pub decimal: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ScenarioArgs {
    /// Candidate divisor, e.g. over-S:2 or on-S:C
    #[arg(long)]
    pub case: Option<String>,
    /// Number of blown-up points
    #[arg(long)]
    pub r: Option<usize>,
    /// Blown-up points, comma separated, "inf" allowed
    #[arg(long = "I", allow_hyphen_values = true)]
    pub sites: Option<String>,
    /// Angle p/q in (0, 1]; repeatable
    #[arg(long)]
    pub beta: Vec<String>,
    /// Last power of the angle kept in expansions
    #[arg(long)]
    pub order: Option<usize>,
    /// Which element of I the case refers to
    #[arg(long)]
    pub target: Option<String>,
    /// Vanishing order method
    #[arg(long, default_value = "sweep")]
    pub method: String,
    /// JSON scenario file; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ToricArgs {
    #[arg(long = "I", default_value = "0")]
    pub sites: String,
    #[arg(long, default_value = "1/10")]
    pub beta: Vec<String>,
    /// Valuation vector "a,b"
    #[arg(long, default_value = "2,1", allow_hyphen_values = true)]
    pub valuation: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GitArgs {
    /// Multiplicities, comma separated
    #[arg(long, conflicts_with = "sites")]
    pub multiplicities: Option<String>,
    /// Blown-up points; the configuration on C is derived from them
    #[arg(long = "I")]
    pub sites: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ReproduceArgs {
    /// Group names or check ids to run; repeatable or comma separated
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Fan asset used by the toric checks
    #[arg(long)]
    pub fan_asset: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}
