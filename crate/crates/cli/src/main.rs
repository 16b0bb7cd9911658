//! `lon`: generate landscapes, extract their local optima networks, measure
//! them, and benchmark iterated local search.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lon_core::export::NetworkFormat;
use lon_core::{EdgeModel, ProblemKind, QapClass};

#[derive(Parser, Debug)]
#[command(name = "lon", version, about = "Local optima networks of NK and QAP landscapes")]
pub struct Cli {
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write instance files.
    Generate(GenerateArgs),
    /// Enumerate basins and write networks plus a basin CSV.
    Extract(ExtractArgs),
    /// Write a metrics CSV and degree/weight histograms.
    Metrics(MetricsArgs),
    /// Write community partitions and modularity scores.
    Communities(MetricsArgs),
    /// Run restarted iterated local search and write per-run results and ERT.
    Ils(IlsArgs),
    /// Join a metrics CSV with an ERT CSV and fit log-ERT against a metric.
    Correlate(CorrelateArgs),
    /// NK ensembles: optima count, edge density and path length to the
    /// global optimum per K and edge model.
    #[command(name = "reproduce-table2")]
    ReproduceTable2(Table2Args),
    /// QAP ensembles: optima count, density, weighted clustering and
    /// disparity per class and size.
    #[command(name = "reproduce-table3")]
    ReproduceTable3(Table3Args),
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// nk, qap-uniform, qap-reallike or qap-file.
    #[arg(long, default_value = "nk", value_parser = parse_problem)]
    pub problem: ProblemKind,
    /// Bit-string length (nk) or permutation size (generated qap).
    #[arg(long = "N", value_name = "N")]
    pub n: Option<usize>,
    /// Epistasis (nk only).
    #[arg(long = "K", value_name = "K")]
    pub k: Option<usize>,
    /// QAPLIB instance for --problem qap-file.
    #[arg(long, value_name = "PATH")]
    pub instance: Option<PathBuf>,
    /// Seed of the first instance; instance i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub instances: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, env = "LON_OUT_DIR", default_value = "lon-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct EdgeArgs {
    /// Edge models: basin, escape-1, escape-2, ...
    #[arg(long, value_delimiter = ',', default_value = "basin", value_parser = parse_edge_model)]
    pub edges: Vec<EdgeModel>,
    /// Raw escape counts instead of frequencies.
    #[arg(long)]
    pub raw: bool,
}

impl EdgeArgs {
    pub fn models(&self) -> Vec<EdgeModel> {
        self.edges
            .iter()
            .map(|&m| match m {
                EdgeModel::Escape { distance, .. } if self.raw => EdgeModel::Escape {
                    distance,
                    normalized: false,
                },
                other => other,
            })
            .collect()
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub edges: EdgeArgs,
    /// Network formats: pajek, graphml, dot, edge-csv.
    #[arg(long, value_delimiter = ',', default_value = "pajek,graphml,edge-csv", value_parser = parse_format)]
    pub formats: Vec<NetworkFormat>,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub edges: EdgeArgs,
    /// Measure these Pajek files instead of generating instances.
    #[arg(long, value_name = "PATH", num_args = 1..)]
    pub network: Vec<PathBuf>,
    /// Skip the all-pairs mean path length above this many nodes.
    #[arg(long, default_value_t = 2000)]
    pub max_path_nodes: usize,
}

#[derive(Args, Debug)]
pub struct IlsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Independent runs per instance.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    /// Random moves per perturbation.
    #[arg(long, default_value_t = lon_core::ils::DEFAULT_PERTURBATION_STRENGTH)]
    pub strength: usize,
    /// Evaluation budget per run; defaults to a fifth of the search space.
    #[arg(long)]
    pub max_evaluations: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CorrelateArgs {
    /// Metrics CSV written by `lon metrics`.
    #[arg(long)]
    pub metrics: PathBuf,
    /// ERT CSV written by `lon ils`.
    #[arg(long)]
    pub ert: PathBuf,
    /// Edge model whose rows are used.
    #[arg(long, default_value = "escape-2", value_parser = parse_edge_model)]
    pub model: EdgeModel,
    /// Metrics columns to correlate with log-ERT; several columns are also
    /// fitted jointly.
    #[arg(long, value_delimiter = ',', default_value = "optimum_path_length")]
    pub column: Vec<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct Table2Args {
    #[arg(long = "N", value_name = "N", default_value_t = 18)]
    pub n: usize,
    #[arg(long = "K", value_name = "K", value_delimiter = ',', default_value = "2,4,6,8,10,12,14,16,17")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    pub instances: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Uniform,
    RealLike,
}

impl From<ClassArg> for QapClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Uniform => QapClass::Uniform,
            ClassArg::RealLike => QapClass::RealLike,
        }
    }
}

#[derive(Args, Debug)]
pub struct Table3Args {
    #[arg(long, value_delimiter = ',', default_value = "5,6,7,8,9,10")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "real-like,uniform")]
    pub classes: Vec<ClassArg>,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    pub instances: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

fn parse_problem(s: &str) -> Result<ProblemKind, String> {
    s.parse().map_err(|e: lon_core::Error| e.to_string())
}

fn parse_edge_model(s: &str) -> Result<EdgeModel, String> {
    s.parse().map_err(|e: lon_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<NetworkFormat, String> {
    s.parse().map_err(|e: lon_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("lon: cannot start {n} workers: {e}");
            return ExitCode::FAILURE;
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lon: {e:#}");
            ExitCode::FAILURE
        }
    }
}
