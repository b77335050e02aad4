use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dynrank_core::{Approach, BatchPolicy, EngineConfig, Mode};

#[derive(Debug, Parser)]
#[command(
    name = "dynrank",
    version,
    about = "Static and incremental PageRank on batch-updated graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print vertex count, edge count and average degree after adding self-loops.
    Stats(StatsArgs),
    /// Run one approach on one batch and print the record as JSON.
    Run(RunArgs),
    /// Sweep graphs, fractions, modes and approaches; emit one row per run.
    Bench(BenchArgs),
    /// Time the frontier approach at several thread counts.
    Scale(ScaleArgs),
    /// Draw a random batch for a graph and write it as "+ u v" / "- u v" lines.
    GenBatch(GenBatchArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Edge list or MatrixMarket file, or random:N:M[:SEED].
    #[arg(long)]
    pub graph: String,
    /// Smallest vertex id in edge-list files. MatrixMarket files are always 1-based.
    #[arg(long, default_value_t = 0)]
    pub base: u32,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tau: f64,
    /// Frontier tolerance; defaults to tau / 1e5.
    #[arg(long = "tau-f")]
    pub tau_f: Option<f64>,
    #[arg(long = "max-iters", default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 2048)]
    pub chunk: usize,
}

impl EngineArgs {
    pub fn config(&self, mode: Mode, threads: usize) -> EngineConfig {
        EngineConfig {
            alpha: self.alpha,
            tau: self.tau,
            tau_f: self.tau_f,
            max_iterations: self.max_iters,
            mode,
            chunk_size: self.chunk,
            threads,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("policy").args(["strict", "lenient"])))]
pub struct PolicyArgs {
    /// Reject deletions of missing edges and insertions of existing ones (default).
    #[arg(long)]
    pub strict: bool,
    /// Skip such edges instead of failing.
    #[arg(long)]
    pub lenient: bool,
}

impl PolicyArgs {
    pub fn policy(&self) -> BatchPolicy {
        if self.lenient {
            BatchPolicy::Lenient
        } else {
            BatchPolicy::Strict
        }
    }
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: StatsFormat,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value = "frontier")]
    pub approach: Approach,
    #[arg(long, default_value = "async")]
    pub mode: Mode,
    /// Batch size as a fraction of the edge count; 0 means an empty batch.
    #[arg(long, default_value_t = 0.0)]
    pub fraction: f64,
    #[arg(long = "insert-ratio", default_value_t = 1.0)]
    pub insert_ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Read the batch from a file instead of drawing one.
    #[arg(long, conflicts_with_all = ["fraction", "insert_ratio", "seed"])]
    pub batch: Option<PathBuf>,
    /// Worker threads; defaults to DYNRANK_THREADS, then the hardware thread count.
    #[arg(long, env = "DYNRANK_THREADS")]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Repeat for several graphs.
    #[arg(long = "graph", required = true)]
    pub graphs: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub base: u32,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "static,naive,traversal,frontier"
    )]
    pub approach: Vec<Approach>,
    #[arg(long, value_delimiter = ',', default_value = "async")]
    pub mode: Vec<Mode>,
    #[arg(
        long,
        alias = "fraction",
        value_delimiter = ',',
        default_value = "1e-4"
    )]
    pub fractions: Vec<f64>,
    #[arg(long = "insert-ratio", default_value_t = 1.0)]
    pub insert_ratio: f64,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    /// Batch seed of the first repetition; later ones add the repetition index.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated thread counts; defaults to DYNRANK_THREADS, then the hardware thread count.
    #[arg(long, env = "DYNRANK_THREADS", value_delimiter = ',')]
    pub threads: Option<Vec<usize>>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Append per-approach geometric means across graphs.
    #[arg(long)]
    pub summary: bool,
    /// Skip the per-run skip-contract and containment checks.
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    #[arg(long = "graph", required = true)]
    pub graphs: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub base: u32,
    #[arg(long, value_delimiter = ',', default_value = "async")]
    pub mode: Vec<Mode>,
    #[arg(long, default_value_t = 1e-4)]
    pub fraction: f64,
    #[arg(long = "insert-ratio", default_value_t = 1.0)]
    pub insert_ratio: f64,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    pub threads: Vec<usize>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GenBatchArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value_t = 1e-4)]
    pub fraction: f64,
    #[arg(long = "insert-ratio", default_value_t = 1.0)]
    pub insert_ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
