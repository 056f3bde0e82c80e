use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use span_oracle::NetMethod;

#[derive(Debug, Parser)]
#[command(
    name = "span-oracle",
    version,
    about = "Shortest-path nets, distance oracles and l1 embeddings"
)]
pub struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Build an eps-net for a graph.
    BuildNet(NetArgs),
    /// Check that a net hits every qualifying canonical path.
    VerifyNet(VerifyArgs),
    /// Build and serialize a distance oracle.
    BuildOracle(OracleArgs),
    /// Answer distance queries from a serialized oracle.
    Query(QueryArgs),
    /// Build the black-box embedding and measure its distortion.
    EvalEmbed(EmbedArgs),
    /// Brute-force the VC-dimension of the shortest-path set system.
    VcCheck(VcArgs),
    /// Time every build and a full pair sweep on one graph.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Grid,
    Gnp,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Simple,
    Tz,
    Combined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greedy,
    Sample,
}

impl From<Method> for NetMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Greedy => NetMethod::Greedy,
            Method::Sample => NetMethod::Sample,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Compressed,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub radius: Option<f64>,
    /// Replace unit weights by random integers in 1..=W.
    #[arg(long)]
    pub max_weight: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Graph file to write; prints the graph to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    /// Graph file.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub net: PathBuf,
    /// Defaults to the eps stored in the net file.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Perturbation seed; defaults to the seed stored in the net file.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub kind: OracleKind,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    pub method: Method,
    /// Net file for the simple oracle instead of building one.
    #[arg(long)]
    pub net: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Serialized oracle.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// File with one `u v` (or `u,v`) pair per line.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Pairs given inline as `u,v`.
    pub pair: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Dimension of the compressed star embedding.
    #[arg(long, default_value_t = 64)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Embedding file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VcArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
