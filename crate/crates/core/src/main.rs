use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use planardeg::balls_bins::{loads, sample_locations};
use planardeg::dense_ops::{sweep_dense_ratio, write_ratio_csv};
use planardeg::graph_model::{decompose, edge_list, isolated_counts};
use planardeg::harness::{emit, run_experiment, write_report, ExperimentConfig, Format, JOBS_ENV};
use planardeg::nu::{nu, nu_hat, predicted_interval_sparse, ConcentrationQuery, DEFAULT_TOL};
use planardeg::pruefer::{decode, sample_uniform_sequence};
use planardeg::samplers::{build_complex_part, sample_gnm, sample_noncomplex, Sampled, DEFAULT_MAX_ATTEMPTS};
use planardeg::{Error, Result};

#[derive(Parser)]
#[command(name = "planardeg", version, about = "Maximum-degree concentration experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the concentration point.
    Nu(NuArgs),
    /// Draw one random object.
    #[command(subcommand)]
    Sample(SampleCommand),
    /// Split an edge-list graph into core, complex parts and the rest.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustive class counts.
    #[command(subcommand)]
    Enumerate(EnumerateCommand),
    /// Monte Carlo campaigns.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Args)]
struct NuArgs {
    #[arg(long)]
    n: u64,
    /// Number of balls; defaults to `n`.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Print ν̂(n) = ν(n, n).
    #[arg(long, conflicts_with_all = ["k", "interval"])]
    hat: bool,
    /// Print the sparse-regime interval for `m` edges as JSON.
    #[arg(long, requires_all = ["m", "eps"])]
    interval: bool,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BinsEmit {
    Loads,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum ForestEmit {
    Edges,
    Pruefer,
    Degrees,
}

#[derive(Subcommand)]
enum SampleCommand {
    /// Throw `k` balls into `n` bins.
    Bins {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BinsEmit::Max)]
        emit: BinsEmit,
    },
    /// Uniform forest on `[n]` with roots `1..=t`.
    Forest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ForestEmit::Edges)]
        emit: ForestEmit,
    },
    /// Uniform simple graph with `m` edges.
    Gnm(GraphArgs),
    /// Uniform graph with `m` edges and no complex component.
    Noncomplex(GraphArgs),
    /// Uniform complex part on `[q]` with the given core.
    ComplexPart {
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u64,
    /// Write the rejection report as JSON to stderr.
    #[arg(long)]
    report: bool,
}

#[derive(Subcommand)]
enum EnumerateCommand {
    /// Compare each dense source class with its transformation target.
    DenseRatio {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        planar: bool,
        /// Restrict to a single edge count.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, env = JOBS_ENV)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Nu(a) => {
            if a.interval {
                let iv = predicted_interval_sparse(a.n, a.m.unwrap_or(0), a.eps.unwrap_or(0.0), a.tol)?;
                writeln!(out, "{}", serde_json::to_string(&iv)?)?;
            } else if a.hat {
                writeln!(out, "{}", nu_hat(a.n, a.tol)?)?;
            } else {
                if !a.tol.is_finite() || a.tol <= 0.0 {
                    return Err(Error::Domain(format!("tol must be positive, got {}", a.tol)));
                }
                let q = ConcentrationQuery::new(a.n, a.k.unwrap_or(a.n))?;
                writeln!(out, "{}", nu(q, a.tol))?;
            }
        }
        Command::Sample(s) => sample(s, &mut out)?,
        Command::Decompose { input } => {
            let g = edge_list::parse_graph(&fs::read_to_string(input)?)?;
            let d = decompose(&g);
            let (k, l) = isolated_counts(&g);
            let v = json!({
                "core_vertices": d.core_vertices(),
                "qL_vertices": d.big_complex.vertices,
                "qS_vertices": d.small_complex.vertices,
                "u_vertices": d.non_complex.vertices,
                "max_degree": g.max_degree(),
                "isolated_vertices": k,
                "isolated_edges": l,
            });
            writeln!(out, "{v}")?;
        }
        Command::Enumerate(EnumerateCommand::DenseRatio { n, planar, m }) => {
            let ms = match m {
                Some(m) => m..=m,
                None => 0..=n * n.saturating_sub(1) / 2,
            };
            let rows = sweep_dense_ratio(n, ms, planar)?;
            write_ratio_csv(&rows, &mut out)?;
            if rows.is_empty() {
                eprintln!("no nonempty source class: the bound holds vacuously");
            }
            if rows.iter().any(|r| !r.holds) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Experiment(ExperimentCommand::Run { config, out: path, format, jobs }) => {
            let cfg = ExperimentConfig::from_json(&fs::read_to_string(config)?)?;
            let jobs = jobs.filter(|&j| j > 0).unwrap_or_else(rayon::current_num_threads);
            let report = run_experiment(&cfg, jobs)?;
            match path {
                Some(p) => emit(&report, format, &p)?,
                None => write_report(&report, format, &mut out)?,
            }
            eprintln!("{}", serde_json::to_string(&report.summary)?);
            if !report.summary.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sample(cmd: SampleCommand, out: &mut impl Write) -> Result<()> {
    match cmd {
        SampleCommand::Bins { n, k, seed, emit } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lv = loads(&sample_locations(n, k, &mut rng)?);
            let v = match emit {
                BinsEmit::Loads => json!({ "loads": lv.loads(), "max_load": lv.max_load() }),
                BinsEmit::Max => json!({ "max_load": lv.max_load() }),
            };
            writeln!(out, "{v}")?;
        }
        SampleCommand::Forest { n, t, seed, emit } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq = sample_uniform_sequence(n, t, &mut rng)?;
            let forest = decode(&seq);
            match emit {
                ForestEmit::Edges => write!(out, "{}", edge_list::format(n, forest.edges()))?,
                ForestEmit::Pruefer => writeln!(out, "{}", serde_json::to_string(seq.entries())?)?,
                ForestEmit::Degrees => writeln!(out, "{}", serde_json::to_string(&forest.degrees())?)?,
            }
        }
        SampleCommand::Gnm(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let s = sample_gnm(a.n, a.m, &mut rng, a.max_attempts);
            write_sampled(s, a.report, out)?;
        }
        SampleCommand::Noncomplex(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let s = sample_noncomplex(a.n, a.m, &mut rng, a.max_attempts);
            write_sampled(s, a.report, out)?;
        }
        SampleCommand::ComplexPart { core, q, seed } => {
            let core = edge_list::parse_graph(&fs::read_to_string(core)?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = build_complex_part(&core, q, &mut rng)?;
            write!(out, "{}", edge_list::format_graph(&g))?;
        }
    }
    Ok(())
}

fn write_sampled(s: Result<Sampled>, report: bool, out: &mut impl Write) -> Result<()> {
    match s {
        Ok(s) => {
            write!(out, "{}", edge_list::format_graph(&s.graph))?;
            if report {
                eprintln!("{}", serde_json::to_string(&s.report)?);
            }
            Ok(())
        }
        Err(Error::AttemptsExhausted(r)) => {
            if report {
                eprintln!("{}", serde_json::to_string(&r)?);
            }
            Err(Error::AttemptsExhausted(r))
        }
        Err(e) => Err(e),
    }
}
