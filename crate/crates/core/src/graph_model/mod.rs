//! Labelled graphs on `[n]` and their structural decomposition.
//!
//! Vertices are numbered `1..=n` throughout. Graphs are immutable once
//! built; every derived graph (core, parts, transformed graphs) is a new
//! value on the same label set.

mod decompose;
pub mod edge_list;
mod planarity;

use std::collections::VecDeque;

use crate::error::{domain, invalid, Result};

pub use decompose::{decompose, peel_leaves, two_core, Decomposition, Part};
pub use planarity::{is_planar, MAX_SEARCH_VERTICES};

/// A simple graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == 0 || v > n {
                return Err(invalid(format!("edge {{{u},{v}}} outside [1, {n}]")));
            }
            if u == v {
                return Err(invalid(format!("loop at {u}")));
            }
            if i > 0 && edges[i - 1] == (u, v) {
                return Err(invalid(format!("duplicate edge {{{u},{v}}}")));
            }
        }
        Ok(Self::from_sorted_unchecked(n, edges))
    }

    /// `edges` must be canonical (`u < v`), sorted, in range and duplicate-free.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u >= 1 && u <= self.n && self.adj[u - 1].binary_search(&v).is_ok()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices with at least one incident edge.
    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.degree(v) > 0).collect()
    }

    /// Same labels, only the edges with both ends in `keep`.
    pub fn restrict(&self, keep: &[bool]) -> SimpleGraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep[u - 1] && keep[v - 1])
            .collect();
        Self::from_sorted_unchecked(self.n, edges)
    }
}

/// A multigraph on `[n]`. Loops contribute two to the degree of their vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u == 0 || v > n) {
            return Err(invalid(format!("edge {{{u},{v}}} outside [1, {n}]")));
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order, each as `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degree_sequence().into_iter().max().unwrap_or(0)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn to_simple(&self) -> Result<SimpleGraph> {
        SimpleGraph::new(self.n, self.edges.iter().copied())
    }
}

/// Connected components, each sorted, ordered by size (descending) and then
/// by smallest label.
pub fn components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 1..=g.n {
        if seen[s - 1] {
            continue;
        }
        seen[s - 1] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    out
}

/// Number of edges with both ends in `vertices`.
pub(crate) fn edges_within(g: &SimpleGraph, vertices: &[usize]) -> usize {
    let mut inside = vec![false; g.n];
    for &v in vertices {
        inside[v - 1] = true;
    }
    let twice: usize = vertices
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| inside[w - 1]).count())
        .sum();
    twice / 2
}

/// True iff the component has at least two independent cycles, that is
/// `e(comp) ≥ v(comp) + 1`.
pub fn is_complex_component(g: &SimpleGraph, comp: &[usize]) -> Result<bool> {
    if comp.is_empty() {
        return Err(domain("empty vertex set is not a component"));
    }
    let mut inside = vec![false; g.n];
    for &v in comp {
        if v == 0 || v > g.n {
            return Err(domain(format!("vertex {v} outside [1, {}]", g.n)));
        }
        if inside[v - 1] {
            return Err(domain(format!("vertex {v} listed twice")));
        }
        inside[v - 1] = true;
    }
    // closed under adjacency and connected
    let mut reached = vec![false; g.n];
    let mut stack = vec![comp[0]];
    reached[comp[0] - 1] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in g.neighbors(v) {
            if !inside[w - 1] {
                return Err(domain(format!("vertex {w} is adjacent to the set but not in it")));
            }
            if !reached[w - 1] {
                reached[w - 1] = true;
                stack.push(w);
            }
        }
    }
    if count != comp.len() {
        return Err(domain("vertex set is not connected"));
    }
    Ok(edges_within(g, comp) > comp.len())
}

/// `(isolated vertices, isolated edges)`.
pub fn isolated_counts(g: &SimpleGraph) -> (usize, usize) {
    let k = (1..=g.n).filter(|&v| g.degree(v) == 0).count();
    let l = g
        .edges
        .iter()
        .filter(|&&(u, v)| g.degree(u) == 1 && g.degree(v) == 1)
        .count();
    (k, l)
}
