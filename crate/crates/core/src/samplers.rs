//! Uniform samplers built on balls-into-bins.
//!
//! Throwing `2m` balls into `n` bins and pairing consecutive balls gives a
//! multigraph in which every simple graph with `m` edges arises from exactly
//! `2^m · m!` location vectors. Conditioning on simplicity therefore yields
//! a uniform `G(n, m)`, and further conditioning on the absence of complex
//! components yields a uniform graph without complex components.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::balls_bins::LocationVector;
use crate::error::{domain, invalid, Error, Result};
use crate::graph_model::{components, MultiGraph, SimpleGraph};
use crate::pruefer::{decode, sample_uniform_sequence, Dsu, RootedForest};

pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000;

/// Bookkeeping for a rejection sampler run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionReport {
    pub attempts: u64,
    pub accepted: bool,
    pub loops: u64,
    pub parallel_edges: u64,
    pub complex_components: u64,
}

impl RejectionReport {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            f64::from(u8::from(self.accepted)) / self.attempts as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sampled {
    pub graph: SimpleGraph,
    pub report: RejectionReport,
}

/// Pairs entries `(2i − 1, 2i)` of an even-length location vector into edges.
pub fn multigraph_from_locations(loc: &LocationVector) -> Result<MultiGraph> {
    if !loc.len().is_multiple_of(2) {
        return Err(domain(format!("location vector of odd length {}", loc.len())));
    }
    let edges = loc.entries().chunks_exact(2).map(|p| (p[0], p[1]));
    MultiGraph::new(loc.n_bins(), edges)
}

enum Attempt {
    Simple(Vec<(usize, usize)>),
    Loop,
    Parallel,
}

/// One multigraph draw, abandoned at the first loop or repeated edge.
fn attempt_simple<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R, seen: &mut HashSet<(u32, u32)>) -> Attempt {
    seen.clear();
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        if a == b {
            return Attempt::Loop;
        }
        let e = if a < b { (a, b) } else { (b, a) };
        if !seen.insert((e.0 as u32, e.1 as u32)) {
            return Attempt::Parallel;
        }
        edges.push(e);
    }
    Attempt::Simple(edges)
}

fn check_gnm_args(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("need at least one vertex"));
    }
    if n > u32::MAX as usize {
        return Err(domain("vertex count exceeds 32-bit labels"));
    }
    if (m as u128) > (n as u128) * (n as u128 - 1) / 2 {
        return Err(domain(format!("{m} edges do not fit on {n} vertices")));
    }
    Ok(())
}

/// Uniform simple graph on `[n]` with `m` edges.
pub fn sample_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R, max_attempts: u64) -> Result<Sampled> {
    check_gnm_args(n, m)?;
    let mut report = RejectionReport::default();
    let mut seen = HashSet::with_capacity(m);
    while report.attempts < max_attempts {
        report.attempts += 1;
        match attempt_simple(n, m, rng, &mut seen) {
            Attempt::Simple(mut edges) => {
                edges.sort_unstable();
                report.accepted = true;
                return Ok(Sampled { graph: SimpleGraph::from_sorted_unchecked(n, edges), report });
            }
            Attempt::Loop => report.loops += 1,
            Attempt::Parallel => report.parallel_edges += 1,
        }
    }
    Err(Error::AttemptsExhausted(report))
}

/// True iff some component has at least two cycles.
pub fn has_complex_component(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut dsu = Dsu::new(n);
    let mut cycles = vec![0u32; n];
    for &(u, v) in edges {
        let (ru, rv) = (dsu.find(u - 1), dsu.find(v - 1));
        if ru == rv {
            cycles[ru] += 1;
            if cycles[ru] >= 2 {
                return true;
            }
        } else {
            let total = cycles[ru] + cycles[rv];
            dsu.union(ru, rv);
            let r = dsu.find(ru);
            cycles[r] = total;
            if total >= 2 {
                return true;
            }
        }
    }
    false
}

/// Uniform graph on `[n]` with `m` edges and no complex component.
pub fn sample_noncomplex<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R, max_attempts: u64) -> Result<Sampled> {
    check_gnm_args(n, m)?;
    if m >= n {
        return Err(domain(format!("non-complex sampling requires m <= n - 1, got n={n}, m={m}")));
    }
    let mut report = RejectionReport::default();
    let mut seen = HashSet::with_capacity(m);
    while report.attempts < max_attempts {
        report.attempts += 1;
        match attempt_simple(n, m, rng, &mut seen) {
            Attempt::Simple(mut edges) => {
                if has_complex_component(n, &edges) {
                    report.complex_components += 1;
                    continue;
                }
                edges.sort_unstable();
                report.accepted = true;
                return Ok(Sampled { graph: SimpleGraph::from_sorted_unchecked(n, edges), report });
            }
            Attempt::Loop => report.loops += 1,
            Attempt::Parallel => report.parallel_edges += 1,
        }
    }
    Err(Error::AttemptsExhausted(report))
}

/// Checks that `core` can carry a complex part: vertex set `[v(C)]` and
/// minimum degree two.
///
/// Components that are bare cycles are accepted. Such a component is not a
/// core in the strict sense, and the trees hung on it form a unicyclic
/// component rather than a complex one, but the construction is the same.
/// [`is_strict_core`] tells the two cases apart.
pub fn validate_core(core: &SimpleGraph) -> Result<()> {
    if core.n() == 0 {
        return Err(invalid("core must have at least one vertex"));
    }
    if let Some(v) = (1..=core.n()).find(|&v| core.degree(v) < 2) {
        return Err(invalid(format!("core vertex {v} has degree {}", core.degree(v))));
    }
    Ok(())
}

/// Minimum degree two on every vertex and no component that is a bare cycle.
pub fn is_strict_core(core: &SimpleGraph) -> bool {
    validate_core(core).is_ok()
        && components(core)
            .iter()
            .all(|comp| comp.iter().any(|&v| core.degree(v) > 2))
}

/// Attaches the tree of `forest` rooted at `r` to every core vertex `r`.
pub fn complex_part_from_forest(core: &SimpleGraph, forest: &RootedForest) -> Result<SimpleGraph> {
    if forest.t() != core.n() {
        return Err(invalid(format!("forest has {} roots but core has {} vertices", forest.t(), core.n())));
    }
    let edges = core.edges().iter().chain(forest.edges()).copied();
    SimpleGraph::new(forest.n(), edges)
}

/// Uniform complex graph on `[q]` whose core is `core`: a uniform forest
/// with roots `1..=v(C)` whose trees are hung on the core vertices.
pub fn build_complex_part<R: Rng + ?Sized>(core: &SimpleGraph, q: usize, rng: &mut R) -> Result<SimpleGraph> {
    validate_core(core)?;
    if q < core.n() + 1 {
        return Err(domain(format!("q = {q} must exceed the core size {}", core.n())));
    }
    let forest = decode(&sample_uniform_sequence(q, core.n(), rng)?);
    complex_part_from_forest(core, &forest)
}
