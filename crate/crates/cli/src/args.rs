//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "CAYLEY_COMM_OUT";

#[derive(Debug, Parser)]
#[command(
    name = "cayley-comm",
    version,
    about = "Optimal communication schedules on Cayley graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, validate and write a schedule.
    Schedule(ScheduleArgs),
    /// Check a schedule file against a graph.
    Validate(ValidateArgs),
    /// Replay a schedule file and check delivery.
    Simulate(SimulateArgs),
    /// Print the lower bounds for a graph.
    Bounds(BoundsArgs),
    /// Run the spectral global sum.
    Gsum(GsumArgs),
    /// Export a graph.
    Graph(GraphArgs),
    /// Write the regular order of a hypercube.
    Order(OrderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TaskArg {
    Broadcast,
    Accumulation,
    Exchange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WireArg {
    OneWay,
    TwoWay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GoalArg {
    Broadcast,
    Accumulation,
    Exchange,
}

#[derive(Debug, Args)]
pub struct GraphSpec {
    /// Builtin name (q1..q16, petersen, z2z8x5, kN, cN) or a JSON group file.
    #[arg(long)]
    pub graph: String,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; `-` for standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for generated files when `--out` is absent.
    #[arg(long, env = OUT_DIR_ENV, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long, value_enum)]
    pub task: TaskArg,
    #[arg(long, value_enum, default_value = "two-way")]
    pub wire: WireArg,
    /// Broadcast or accumulation radius (defaults to the diameter).
    #[arg(long)]
    pub l: Option<u32>,
    /// Exchange with vertices at exactly this distance.
    #[arg(long, conflicts_with = "far")]
    pub s: Option<u32>,
    /// Exchange with vertices at distance d−1 or d.
    #[arg(long)]
    pub far: bool,
    /// Find a broadcast by exhaustive search instead of a construction.
    #[arg(long)]
    pub search: bool,
    /// Node budget for `--search`.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Also write the template and ordering tables next to the schedule.
    #[arg(long)]
    pub emit_template: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long)]
    pub schedule: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long)]
    pub schedule: PathBuf,
    /// Defaults to the kind of the first task.
    #[arg(long, value_enum)]
    pub goal: Option<GoalArg>,
    /// Radius for broadcast and accumulation goals.
    #[arg(long)]
    pub within: Option<u32>,
    /// Distances for exchange goals; inferred from the path tasks if absent.
    #[arg(long, value_delimiter = ',')]
    pub distances: Vec<u32>,
    /// Include the per-pair completion matrix.
    #[arg(long)]
    pub completion: bool,
    /// Report file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GsumArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    /// `random` or a JSON file holding one number per vertex.
    #[arg(long, default_value = "random")]
    pub values: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
