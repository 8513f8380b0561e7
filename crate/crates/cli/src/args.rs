use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lalkit::engine::DEFAULT_BUDGET;
use lalkit::problems::AcyclicStrategy;

#[derive(Parser, Debug)]
#[command(name = "lalkit", version, about = "Resampling solvers and weight-condition checks")]
pub struct Cli {
    /// First seed when seeds are given as a count.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed_base: u64,
    /// Step budget per run.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the solver over a set of seeds and validate every result.
    Solve(SolveArgs),
    /// Print the per-generator slack of a weight condition.
    #[command(name = "check-condition", alias = "check")]
    Check(ProblemArgs),
    /// Print color thresholds, Ramsey certificates or series fixpoints.
    Threshold(ProblemArgs),
    /// Re-check solutions with the independent validators.
    Validate(ValidateArgs),
    /// Re-run the seeds of a report and compare step by step.
    Replay(ReplayArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Proper,
    NonrepSeq,
    NonrepColor,
    Acyclic,
    Ramsey,
    Choice,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFamily {
    Path,
    Cycle,
    Complete,
    Star,
    Petersen,
    RandomRegular,
    RandomBounded,
    RandomTree,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Restricted,
    Uniform,
}

impl From<StrategyArg> for AcyclicStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Restricted => AcyclicStrategy::Restricted,
            StrategyArg::Uniform => AcyclicStrategy::Uniform,
        }
    }
}

#[derive(Args, Debug)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub problem: Option<ProblemKind>,
    /// Edge list file, one `u v` pair per line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generated graph family, used when no edge list is given.
    #[arg(long, value_enum)]
    pub family: Option<GraphFamily>,
    /// Vertex count, sequence length, or Ramsey order.
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree for generated graphs.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Edge target for random bounded-degree graphs.
    #[arg(long)]
    pub edges: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    #[arg(long)]
    pub colors: Option<u32>,
    /// Alphabet (list) size for sequences.
    #[arg(long)]
    pub alphabet: Option<u32>,
    /// JSON file with per-position lists for sequences.
    #[arg(long)]
    pub lists: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "restricted")]
    pub strategy: StrategyArg,
    /// Clique order for Ramsey colorings.
    #[arg(long)]
    pub k: Option<usize>,
    /// Blue probability for Ramsey colorings.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub max_half_length: Option<usize>,
    /// Override of the substitution used for the non-repetitive coloring
    /// weight.
    #[arg(long)]
    pub y: Option<f64>,
    /// JSON file with a choice system.
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// Maximum degree, for checks that need no graph.
    #[arg(long)]
    pub delta: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Number of seeds, counted up from --seed-base.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Explicit comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    pub seed_list: Option<Vec<u64>>,
    /// Experiment configuration JSON; replaces the problem flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Report written by `solve`.
    #[arg(long, conflicts_with_all = ["spec", "solution"])]
    pub report: Option<PathBuf>,
    /// Problem description JSON.
    #[arg(long, requires = "solution")]
    pub spec: Option<PathBuf>,
    /// Assignment JSON: an array of values or nulls.
    #[arg(long, requires = "spec")]
    pub solution: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    /// Report written by `solve`.
    #[arg(long)]
    pub report: PathBuf,
    /// Only replay this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the regenerated trace of the (first) replayed seed here.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}
