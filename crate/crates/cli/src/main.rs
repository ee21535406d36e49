//! `cfsp`: constrained local clustering and community detection from the
//! command line. Prints one JSON record on stdout; logs go to stderr.

mod commands;
mod io;
mod record;
mod runner;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use record::{RunRecord, Status};

#[derive(Parser, Debug)]
#[command(name = "cfsp", version, about = "Constrained fractional set programs on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seeded normalized cut with a volume bound, solved by RatioDCA.
    LocalCut(LocalCutArgs),
    /// Seeded maximum-density subgraph with volume bounds, solved by RatioDCA.
    MaxDensity(MaxDensityArgs),
    /// Exact unconstrained maximum-density subgraph by Dinkelbach + max-flow.
    MaxDensityGlobal(GlobalArgs),
    /// Lazy random walk from the seed with constrained sweep cuts.
    Lrw(LrwArgs),
    /// Exhaustive optimum over all seed supersets (at most 20 vertices).
    Oracle(OracleArgs),
    /// Build a co-author graph from a publication list.
    IngestCoauthor(IngestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge list: "u v [w]" per line, '#' comments.
    #[arg(long)]
    pub graph: PathBuf,
    /// Read a third weight column.
    #[arg(long)]
    pub weighted: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RestrictArgs {
    /// Keep only vertices within this many hops of the seed.
    #[arg(long)]
    pub radius: Option<usize>,
    /// Per-vertex integer attribute for --min-count.
    #[arg(long, requires = "min_count")]
    pub attr_file: Option<PathBuf>,
    /// Drop non-seed vertices whose attribute is below this.
    #[arg(long, requires = "attr_file")]
    pub min_count: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    /// Random initializations per multi-start batch.
    #[arg(long, default_value_t = 10)]
    pub inits: usize,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    pub rng: u64,
    /// Worker threads (default: available cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct VolumeBound {
    /// Absolute volume bound.
    #[arg(long)]
    pub vol: Option<f64>,
    /// Bound as a fraction of the total volume.
    #[arg(long)]
    pub vol_total_frac: Option<f64>,
    /// Bound as a fraction of the volume of the seed-only solution.
    #[arg(long)]
    pub vol_frac: Option<f64>,
}

#[derive(Args, Debug)]
pub struct LocalCutArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Seed vertex IDs (repeat or comma-separate).
    #[arg(long, value_delimiter = ',', required = true)]
    pub seed: Vec<u64>,
    #[command(flatten)]
    pub bound: VolumeBound,
    /// Vertex weights for the volumes (default: degrees).
    #[arg(long)]
    pub h_file: Option<PathBuf>,
    #[command(flatten)]
    pub restrict: RestrictArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
}

#[derive(Args, Debug)]
pub struct MaxDensityArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Seed vertex IDs (repeat or comma-separate); may be empty.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<u64>,
    /// Vertex weights g of the objective volume (default: ones).
    #[arg(long)]
    pub g_file: Option<PathBuf>,
    /// Use degrees in the graph before any restriction as g.
    #[arg(long, conflicts_with = "g_file")]
    pub g_degree: bool,
    /// Vertex weights h of the constrained volume (default: ones).
    #[arg(long)]
    pub h_file: Option<PathBuf>,
    /// Lower bound on vol_h.
    #[arg(long)]
    pub lower: Option<f64>,
    /// Upper bound on vol_h.
    #[arg(long, conflicts_with_all = ["vol_total_frac", "vol_frac"])]
    pub upper: Option<f64>,
    /// Upper bound as a fraction of vol_h(V).
    #[arg(long, conflicts_with = "vol_frac")]
    pub vol_total_frac: Option<f64>,
    /// Upper bound as a fraction of vol_h of the seed-only solution.
    #[arg(long)]
    pub vol_frac: Option<f64>,
    #[command(flatten)]
    pub restrict: RestrictArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Vertex weights g (default: ones).
    #[arg(long)]
    pub g_file: Option<PathBuf>,
    /// Use degrees as g.
    #[arg(long, conflicts_with = "g_file")]
    pub g_degree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CutObjective {
    /// cut(C) / (vol(C) vol(V \ C))
    Ncut,
    /// cut(C) / min(vol(C), vol(V \ C))
    Cheeger,
}

#[derive(Args, Debug)]
pub struct LrwArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Seed vertex IDs (repeat or comma-separate).
    #[arg(long, value_delimiter = ',', required = true)]
    pub seed: Vec<u64>,
    #[arg(long, value_enum, default_value_t = CutObjective::Ncut)]
    pub objective: CutObjective,
    /// Absolute upper bound on the volume.
    #[arg(long, conflicts_with = "vol_total_frac")]
    pub vol: Option<f64>,
    /// Upper bound as a fraction of the total volume.
    #[arg(long)]
    pub vol_total_frac: Option<f64>,
    /// Vertex weights for the volumes (default: degrees).
    #[arg(long)]
    pub h_file: Option<PathBuf>,
    /// Walk steps to sweep.
    #[arg(long, default_value_t = 1000)]
    pub max_steps: usize,
    /// Sweep p_i / d_i instead of p_i.
    #[arg(long)]
    pub degree_normalized: bool,
    #[command(flatten)]
    pub restrict: RestrictArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleObjective {
    Ncut,
    Cheeger,
    /// assoc(C) / vol_g(C), maximized
    Density,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum)]
    pub objective: OracleObjective,
    /// Seed vertex IDs (repeat or comma-separate); may be empty.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<u64>,
    /// Upper bound on the constrained volume.
    #[arg(long, conflicts_with_all = ["upper", "vol_total_frac"])]
    pub vol: Option<f64>,
    /// Upper bound as a fraction of the total constrained volume.
    #[arg(long, conflicts_with = "upper")]
    pub vol_total_frac: Option<f64>,
    /// Lower bound on the constrained volume.
    #[arg(long)]
    pub lower: Option<f64>,
    /// Upper bound on the constrained volume (same as --vol).
    #[arg(long)]
    pub upper: Option<f64>,
    /// Objective volume weights for density (default: ones).
    #[arg(long)]
    pub g_file: Option<PathBuf>,
    /// Use degrees in the graph before any restriction as g.
    #[arg(long, conflicts_with = "g_file")]
    pub g_degree: bool,
    /// Constrained volume weights (default: degrees for cuts, ones for density).
    #[arg(long)]
    pub h_file: Option<PathBuf>,
    #[command(flatten)]
    pub restrict: RestrictArgs,
}

#[derive(Args, Debug)]
pub struct IngestArgs {
    /// One publication per line, whitespace-separated author IDs.
    #[arg(long)]
    pub publications: PathBuf,
    /// Output weighted edge list.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional "author count" file of publication counts, for --attr-file.
    #[arg(long)]
    pub counts_out: Option<PathBuf>,
}

/// Errors that map to exit code 2.
fn is_infeasible(e: &anyhow::Error) -> bool {
    use cfsp_core::Error;
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<Error>(),
            Some(Error::Infeasible(_) | Error::NoFeasibleThreshold)
        ) || c.downcast_ref::<commands::Infeasible>().is_some()
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let name = match &cli.command {
        Command::LocalCut(_) => "local-cut",
        Command::MaxDensity(_) => "max-density",
        Command::MaxDensityGlobal(_) => "max-density-global",
        Command::Lrw(_) => "lrw",
        Command::Oracle(_) => "oracle",
        Command::IngestCoauthor(_) => "ingest-coauthor",
    };
    let mut rec = RunRecord::new(name, argv[1..].to_vec());
    let result = match &cli.command {
        Command::LocalCut(a) => commands::local_cut(a, &mut rec),
        Command::MaxDensity(a) => commands::max_density(a, &mut rec),
        Command::MaxDensityGlobal(a) => commands::max_density_global(a, &mut rec),
        Command::Lrw(a) => commands::lrw(a, &mut rec),
        Command::Oracle(a) => commands::oracle(a, &mut rec),
        Command::IngestCoauthor(a) => commands::ingest_coauthor(a, &mut rec),
    };
    rec.timings_ms.total_ms = start.elapsed().as_secs_f64() * 1e3;
    let code = match result {
        Ok(()) if rec.status == Status::Feasible => 0,
        Ok(()) => 2,
        Err(e) if is_infeasible(&e) => {
            rec.status = Status::Infeasible;
            rec.message = Some(format!("{e:#}"));
            2
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let mut out = std::io::stdout().lock();
    let written = serde_json::to_writer_pretty(&mut out, &rec).map_err(std::io::Error::from).and_then(|()| writeln!(out));
    match written {
        Ok(()) => ExitCode::from(code),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: cannot write the run record: {e}");
            ExitCode::from(1)
        }
    }
}
