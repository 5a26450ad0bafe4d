//! Seeded Monte Carlo campaigns that compare sampled maximum degrees with
//! the predicted intervals.
//!
//! Every trial owns a ChaCha8 stream seeded from `(seed, trial index)`, so
//! results do not depend on how many threads run them.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::balls_bins::{loads, sample_locations};
use crate::dense_ops::sweep_dense_ratio;
use crate::error::{domain, invalid, Error, Result};
use crate::graph_model::{decompose, peel_leaves, two_core, SimpleGraph};
use crate::nu::{nu, nu_hat, ConcentrationQuery, DEFAULT_TOL};
use crate::pruefer::sample_uniform_forest;
use crate::samplers::{build_complex_part, is_strict_core, sample_gnm, sample_noncomplex, DEFAULT_MAX_ATTEMPTS};

/// Hit rate an interval experiment must reach to pass.
pub const DEFAULT_MIN_HIT_RATE: f64 = 0.90;
/// Acceptance rate the non-complex rejection sampler must reach to pass.
pub const DEFAULT_MIN_ACCEPTANCE_RATE: f64 = 0.01;
/// Exponent for the default number of roots, `t = ⌈n^0.7⌉`.
pub const DEFAULT_ROOT_EXPONENT: f64 = 0.7;
/// Environment variable consulted for the worker count.
pub const JOBS_ENV: &str = "PLANARDEG_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    BinsConcentration,
    GnmMaxdegree,
    NoncomplexMaxdegree,
    ForestMaxdegree,
    ComplexpartMaxdegree,
    RootGap,
    DecompositionStats,
    DenseRatio,
}

/// A core given inline as an edge list on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSpec {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CoreSpec {
    pub fn graph(&self) -> Result<SimpleGraph> {
        SimpleGraph::new(self.n, self.edges.iter().copied())
    }
}

fn default_eps() -> f64 {
    0.25
}

fn default_max_attempts() -> u64 {
    DEFAULT_MAX_ATTEMPTS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Bins, vertices, or forest size depending on the experiment.
    pub n: u64,
    #[serde(default)]
    pub m: Option<u64>,
    /// Balls for `bins_concentration`; defaults to `n`.
    #[serde(default)]
    pub k: Option<u64>,
    /// Roots for the forest experiments; defaults to `⌈n^0.7⌉`.
    #[serde(default)]
    pub t: Option<u64>,
    /// Vertices of the complex part; defaults to `n`.
    #[serde(default)]
    pub q: Option<u64>,
    #[serde(default)]
    pub core: Option<CoreSpec>,
    pub trials: u64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_attempts")]
    pub max_attempts: u64,
    /// Overrides the experiment's default hit-rate threshold.
    #[serde(default)]
    pub min_hit_rate: Option<f64>,
    /// Planar filter for `dense_ratio`.
    #[serde(default)]
    pub planar: bool,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, n: u64, trials: u64) -> Self {
        ExperimentConfig {
            experiment,
            n,
            m: None,
            k: None,
            t: None,
            q: None,
            core: None,
            trials,
            eps: default_eps(),
            seed: 0,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            min_hit_rate: None,
            planar: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if !self.eps.is_finite() || self.eps <= 0.0 {
            return Err(invalid(format!("eps must be positive, got {}", self.eps)));
        }
        if self.n == 0 {
            return Err(invalid("n must be positive"));
        }
        if self.max_attempts == 0 {
            return Err(invalid("max_attempts must be positive"));
        }
        if let Some(h) = self.min_hit_rate {
            if !(0.0..=1.0).contains(&h) {
                return Err(invalid(format!("min_hit_rate {h} outside [0, 1]")));
            }
        }
        match self.experiment {
            Experiment::GnmMaxdegree | Experiment::NoncomplexMaxdegree | Experiment::DecompositionStats => {
                if self.m.is_none() {
                    return Err(invalid(format!("{:?} needs m", self.experiment)));
                }
            }
            Experiment::ComplexpartMaxdegree if self.core.is_none() => {
                return Err(invalid("complexpart_maxdegree needs a core"));
            }
            _ => {}
        }
        Ok(())
    }

    /// Roots for the forest experiments.
    pub fn roots(&self) -> u64 {
        self.t
            .unwrap_or_else(|| (self.n as f64).powf(DEFAULT_ROOT_EXPONENT).ceil() as u64)
    }

    /// The hit-rate threshold in force, if the experiment asserts one.
    pub fn hit_rate_threshold(&self) -> Option<f64> {
        match self.experiment {
            Experiment::RootGap | Experiment::DecompositionStats => self.min_hit_rate,
            Experiment::DenseRatio => Some(self.min_hit_rate.unwrap_or(1.0)),
            _ => Some(self.min_hit_rate.unwrap_or(DEFAULT_MIN_HIT_RATE)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub observed: Option<i64>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub in_interval: bool,
    pub aux: BTreeMap<String, Value>,
}

impl TrialRecord {
    fn new(trial: u64, observed: i64, lo: Option<i64>, hi: Option<i64>) -> Self {
        let in_interval = lo.is_none_or(|lo| lo <= observed) && hi.is_none_or(|hi| observed <= hi);
        TrialRecord { trial, observed: Some(observed), lo, hi, in_interval, aux: BTreeMap::new() }
    }

    fn failed(trial: u64, err: &Error) -> Self {
        let mut aux = BTreeMap::new();
        aux.insert("error".to_string(), Value::String(err.to_string()));
        if let Error::AttemptsExhausted(r) = err {
            aux.insert("attempts".to_string(), json!(r.attempts));
        }
        TrialRecord { trial, observed: None, lo: None, hi: None, in_interval: false, aux }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.aux.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxStat {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment: Experiment,
    pub trials: u64,
    pub failures: u64,
    pub hit_rate: f64,
    pub histogram: BTreeMap<i64, u64>,
    pub median_observed: Option<f64>,
    pub aux: BTreeMap<String, AuxStat>,
    /// Accepted samples over total attempts, for rejection samplers.
    pub acceptance_rate: Option<f64>,
    pub min_hit_rate: Option<f64>,
    pub min_acceptance_rate: Option<f64>,
    pub passed: bool,
}

/// Records plus their summary, as written by [`emit`] in JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

/// Seed for trial `index`: a splitmix64 finalizer applied to
/// `seed + (index + 1)·φ`, which is a bijection in `index` for fixed `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Worker count from [`JOBS_ENV`], falling back to rayon's default.
pub fn default_jobs() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

fn to_usize(x: u64, what: &str) -> Result<usize> {
    usize::try_from(x).map_err(|_| domain(format!("{what} = {x} does not fit in usize")))
}

/// Everything a trial needs that does not depend on the trial index.
struct Plan {
    cfg: ExperimentConfig,
    lo: Option<i64>,
    hi: Option<i64>,
    core: Option<SimpleGraph>,
    nu_hat_n: f64,
}

impl Plan {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let floor = |x: f64| x.floor() as i64;
        let eps = cfg.eps;
        let mut core = None;
        let nu_hat_n = nu_hat(cfg.n, DEFAULT_TOL)?;
        let (lo, hi) = match cfg.experiment {
            Experiment::BinsConcentration => {
                let v = nu(ConcentrationQuery::new(cfg.n, cfg.k.unwrap_or(cfg.n))?, DEFAULT_TOL);
                (Some(floor(v - eps)), Some(floor(v + eps)))
            }
            Experiment::GnmMaxdegree => {
                let v = nu(ConcentrationQuery::new(cfg.n, 2 * cfg.m.unwrap_or(0))?, DEFAULT_TOL);
                (Some(floor(v - eps)), Some(floor(v + eps)))
            }
            Experiment::NoncomplexMaxdegree => {
                let v = nu(ConcentrationQuery::new(cfg.n, 2 * cfg.m.unwrap_or(0))?, DEFAULT_TOL);
                let star = floor(v - 1.0 / 3.0);
                (Some(star), Some(star + 1))
            }
            Experiment::ForestMaxdegree => (Some(floor(nu_hat_n - eps) + 1), Some(floor(nu_hat_n + eps) + 1)),
            Experiment::ComplexpartMaxdegree => {
                let c = cfg.core.as_ref().ok_or_else(|| invalid("missing core"))?.graph()?;
                let v = nu_hat(cfg.q.unwrap_or(cfg.n), DEFAULT_TOL)?;
                core = Some(c);
                (Some(floor(v - eps) + 1), Some(floor(v + eps) + 1))
            }
            Experiment::RootGap => (Some(1), None),
            Experiment::DecompositionStats | Experiment::DenseRatio => (None, None),
        };
        Ok(Plan { cfg: cfg.clone(), lo, hi, core, nu_hat_n })
    }

    fn run(&self, trial: u64) -> Result<TrialRecord> {
        let cfg = &self.cfg;
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, trial));
        let n = to_usize(cfg.n, "n")?;
        let record = |observed: usize| TrialRecord::new(trial, observed as i64, self.lo, self.hi);
        let rec = match cfg.experiment {
            Experiment::BinsConcentration => {
                let k = to_usize(cfg.k.unwrap_or(cfg.n), "k")?;
                record(loads(&sample_locations(n, k, &mut rng)?).max_load())
            }
            Experiment::GnmMaxdegree => {
                let s = sample_gnm(n, to_usize(cfg.m.unwrap_or(0), "m")?, &mut rng, cfg.max_attempts)?;
                record(s.graph.max_degree()).with("attempts", s.report.attempts)
            }
            Experiment::NoncomplexMaxdegree => {
                let s = sample_noncomplex(n, to_usize(cfg.m.unwrap_or(0), "m")?, &mut rng, cfg.max_attempts)?;
                let d = s.graph.max_degree();
                let eps_lo = (self.nu_hat_n - cfg.eps).floor() as i64;
                let eps_hi = (self.nu_hat_n + cfg.eps).floor() as i64;
                let ln = (cfg.n as f64).ln();
                record(d)
                    .with("attempts", s.report.attempts)
                    .with("in_eps_interval", (eps_lo..=eps_hi).contains(&(d as i64)))
                    .with("log_ratio", d as f64 * ln.ln() / ln)
            }
            Experiment::ForestMaxdegree => {
                let f = sample_uniform_forest(n, to_usize(cfg.roots(), "t")?, &mut rng)?;
                let cap = self.nu_hat_n.floor() as usize + 2;
                record(f.max_degree())
                    .with("max_root_degree", f.max_root_degree())
                    .with("within_upper_bound", f.max_degree() <= cap)
            }
            Experiment::ComplexpartMaxdegree => {
                let core = self.core.as_ref().expect("plan holds the core");
                let q = build_complex_part(core, to_usize(cfg.q.unwrap_or(cfg.n), "q")?, &mut rng)?;
                let recovered = if is_strict_core(core) { two_core(&q) } else { peel_leaves(&q) };
                let core_matches = recovered.edges() == core.edges();
                record(q.max_degree()).with("core_matches", core_matches)
            }
            Experiment::RootGap => {
                let f = sample_uniform_forest(n, to_usize(cfg.roots(), "t")?, &mut rng)?;
                let gap = f.max_degree() - f.max_root_degree();
                record(gap)
                    .with("max_degree", f.max_degree())
                    .with("max_root_degree", f.max_root_degree())
            }
            Experiment::DecompositionStats => {
                let s = sample_gnm(n, to_usize(cfg.m.unwrap_or(0), "m")?, &mut rng, cfg.max_attempts)?;
                decomposition_record(trial, &s.graph).with("attempts", s.report.attempts)
            }
            Experiment::DenseRatio => unreachable!("dense_ratio is not a sampled experiment"),
        };
        Ok(rec)
    }
}

fn decomposition_record(trial: u64, g: &SimpleGraph) -> TrialRecord {
    let d = decompose(g);
    let u_v = d.non_complex.v();
    let u_e = d.non_complex.e();
    TrialRecord::new(trial, d.core.max_degree() as i64, None, None)
        .with("core_vertices", d.core_vertices().len())
        .with("largest_core_component", d.largest_core_component.len())
        .with("q_l_vertices", d.big_complex.v())
        .with("q_s_vertices", d.small_complex.v())
        .with("u_vertices", u_v)
        .with("u_edges", u_e)
        .with("u_excess", u_e as f64 - u_v as f64 / 2.0)
}

fn dense_ratio_records(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let n = to_usize(cfg.n, "n")?;
    let pairs = n * (n - 1) / 2;
    let ms = match cfg.m {
        Some(m) => {
            let m = to_usize(m, "m")?;
            m..=m
        }
        None => 0..=pairs,
    };
    let rows = sweep_dense_ratio(n, ms, cfg.planar)?;
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let s = r.source;
            TrialRecord {
                trial: i as u64,
                observed: Some(r.count_dst as i64),
                lo: None,
                hi: None,
                in_interval: r.holds,
                aux: BTreeMap::new(),
            }
            .with("m", s.m)
            .with("k", s.k)
            .with("l", s.l)
            .with("d", s.d)
            .with("count_src", r.count_src)
            .with("bound", r.bound)
        })
        .collect())
}

fn median(xs: &mut [f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[mid] } else { (xs[mid - 1] + xs[mid]) / 2.0 })
}

pub fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Summary {
    let failures = records.iter().filter(|r| r.observed.is_none()).count() as u64;
    let hits = records.iter().filter(|r| r.in_interval).count();
    let hit_rate = if records.is_empty() { 0.0 } else { hits as f64 / records.len() as f64 };
    let mut histogram = BTreeMap::new();
    let mut observed: Vec<f64> = Vec::new();
    for v in records.iter().filter_map(|r| r.observed) {
        *histogram.entry(v).or_insert(0) += 1;
        observed.push(v as f64);
    }
    let mut columns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in records {
        for (key, v) in &r.aux {
            let x = match v {
                Value::Bool(b) => Some(f64::from(u8::from(*b))),
                Value::Number(x) => x.as_f64(),
                _ => None,
            };
            if let Some(x) = x {
                columns.entry(key.clone()).or_default().push(x);
            }
        }
    }
    let aux = columns
        .into_iter()
        .filter_map(|(key, mut xs)| {
            let median = median(&mut xs)?;
            Some((key, AuxStat { min: xs[0], median, max: xs[xs.len() - 1] }))
        })
        .collect();

    let acceptance_rate = match cfg.experiment {
        Experiment::GnmMaxdegree | Experiment::NoncomplexMaxdegree | Experiment::DecompositionStats => {
            let attempts: u64 = records.iter().filter_map(|r| r.aux.get("attempts")?.as_u64()).sum();
            let accepted = records.len() as u64 - failures;
            (attempts > 0).then(|| accepted as f64 / attempts as f64)
        }
        _ => None,
    };
    let min_hit_rate = cfg.hit_rate_threshold();
    let min_acceptance_rate =
        (cfg.experiment == Experiment::NoncomplexMaxdegree).then_some(DEFAULT_MIN_ACCEPTANCE_RATE);
    let passed = min_hit_rate.is_none_or(|h| hit_rate >= h)
        && min_acceptance_rate.is_none_or(|a| acceptance_rate.is_some_and(|r| r >= a));
    Summary {
        experiment: cfg.experiment,
        trials: records.len() as u64,
        failures,
        hit_rate,
        histogram,
        median_observed: median(&mut observed),
        aux,
        acceptance_rate,
        min_hit_rate,
        min_acceptance_rate,
        passed,
    }
}

/// Runs every trial of `cfg` on `jobs` worker threads. Sampler failures are
/// recorded on their trial; configuration errors abort the campaign.
pub fn run_experiment(cfg: &ExperimentConfig, jobs: usize) -> Result<Report> {
    cfg.validate()?;
    let records = if cfg.experiment == Experiment::DenseRatio {
        dense_ratio_records(cfg)?
    } else {
        let plan = Plan::new(cfg)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map(|i| match plan.run(i) {
                    Ok(r) => Ok(r),
                    Err(e @ (Error::AttemptsExhausted(_) | Error::TooLarge(_))) => Ok(TrialRecord::failed(i, &e)),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>>>()
        })?
    };
    let summary = summarize(cfg, &records);
    Ok(Report { records, summary })
}

/// Descriptive statistics of the core and parts of `G(n, m)` samples.
pub fn decomposition_stats(n: u64, m: u64, trials: u64, seed: u64) -> Result<Summary> {
    let mut cfg = ExperimentConfig::new(Experiment::DecompositionStats, n, trials);
    cfg.m = Some(m);
    cfg.seed = seed;
    Ok(run_experiment(&cfg, default_jobs())?.summary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Writes a report as CSV (`trial,observed,lo,hi,in_interval,aux_json`) or
/// as a JSON object `{records, summary}`.
pub fn write_report<W: Write>(report: &Report, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["trial", "observed", "lo", "hi", "in_interval", "aux_json"])?;
            let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
            for r in &report.records {
                w.write_record([
                    r.trial.to_string(),
                    opt(r.observed),
                    opt(r.lo),
                    opt(r.hi),
                    r.in_interval.to_string(),
                    serde_json::to_string(&r.aux)?,
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn emit(report: &Report, format: Format, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_report(report, format, &mut out)?;
    out.flush()?;
    Ok(())
}
