use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uecrit_core::search::{ShardSpec, Strategy};

#[derive(Debug, Parser)]
#[command(
    name = "uecrit",
    version,
    about = "Edge-critical uniquely 3-colorable planar graphs: classification, audits, bounds and search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub output: OutputFormat,

    /// Worker threads for search commands (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a graph: planarity, 3-colorability, uniqueness, criticality.
    Check(GraphArgs),
    /// Run the full check battery on a member of U_E.
    Audit {
        #[command(flatten)]
        graph: GraphArgs,
        /// Run every check on any planar input; verdicts are non-binding.
        #[arg(long, conflicts_with = "member")]
        relaxed: bool,
        /// Accept U_E graphs with separating 3-cycles; checks that need
        /// their absence become non-binding.
        #[arg(long)]
        member: bool,
    },
    /// Triangle decomposition and auxiliary graph H_G.
    Decompose(GraphArgs),
    /// Edge-count ledger and bound margins.
    Bound(GraphArgs),
    /// Exhaustive size(n) run, or a hunt when --edges is given.
    Search(SearchArgs),
    /// size(n) for a range of n against the reference lines.
    SizeTable(TableArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// File path, `-` for standard input, or a fixture name.
    pub input: String,

    /// Input format; by default `.g6` files and single-token input are graph6.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,

    /// Hunt for U_E graphs with exactly this many edges.
    #[arg(long)]
    pub edges: Option<usize>,

    /// Hunt strategy.
    #[arg(long, default_value = "augmentation", requires = "edges")]
    pub strategy: Strategy,

    /// Stop a hunt after this many distinct witnesses.
    #[arg(long, requires = "edges")]
    pub max_hits: Option<usize>,

    /// Wall-clock budget; an exhausted budget yields a partial result.
    #[arg(long)]
    pub budget_seconds: Option<f64>,

    /// Run one shard of the exhaustive search: `i/t` or `d<depth>:i/t`.
    #[arg(long, conflicts_with = "edges")]
    pub shard: Option<ShardSpec>,

    /// Result cache file; completed runs are read back instead of rerun.
    #[arg(long, conflicts_with = "edges")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Largest n in the table.
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,

    /// Smallest n in the table.
    #[arg(long, default_value_t = 3)]
    pub min_n: usize,

    /// Wall-clock budget per row.
    #[arg(long)]
    pub budget_seconds: Option<f64>,

    /// Result cache file.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}
