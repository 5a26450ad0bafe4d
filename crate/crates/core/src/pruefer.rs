//! Prüfer codes for forests whose roots `1..=t` lie in distinct trees.
//!
//! A forest on `[n]` with `t` such roots has `n − t` edges and is coded by a
//! sequence in `[n]^{n−t−1} × [t]`. Encoding repeatedly strips the leaf with
//! the largest label and records its neighbour; decoding replays the removals
//! from the degree counts implied by the sequence.

use std::collections::BinaryHeap;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result};

/// A forest on `[n]` with `n − t` edges in which `1..=t` are in distinct
/// components. Edges are kept as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootedForest {
    n: usize,
    t: usize,
    edges: Vec<(usize, usize)>,
}

impl RootedForest {
    pub fn new(n: usize, t: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_shape(n, t)?;
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        if edges.len() != n - t {
            return Err(invalid(format!("forest on {n} vertices with {t} roots needs {} edges, got {}", n - t, edges.len())));
        }
        let mut dsu = Dsu::new(n);
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
            if !dsu.union(u - 1, v - 1) {
                return Err(invalid(format!("edge {{{u},{v}}} closes a cycle")));
            }
        }
        let mut seen = vec![false; n];
        for r in 0..t {
            let c = dsu.find(r);
            if seen[c] {
                return Err(invalid(format!("root {} shares a component with another root", r + 1)));
            }
            seen[c] = true;
        }
        Ok(Self { n, t, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Largest degree among the roots `1..=t`.
    pub fn max_root_degree(&self) -> usize {
        self.degrees()[..self.t].iter().copied().max().unwrap_or(0)
    }
}

/// A codeword of `S(n, t) = [n]^{n−t−1} × [t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrueferSequence {
    n: usize,
    t: usize,
    entries: Vec<usize>,
}

impl PrueferSequence {
    pub fn new(n: usize, t: usize, entries: Vec<usize>) -> Result<Self> {
        check_shape(n, t)?;
        if entries.len() != n - t {
            return Err(invalid(format!("sequence for n={n}, t={t} must have length {}, got {}", n - t, entries.len())));
        }
        if let Some(&bad) = entries.iter().find(|&&w| w == 0 || w > n) {
            return Err(invalid(format!("entry {bad} outside [1, {n}]")));
        }
        let last = *entries.last().expect("length n - t >= 1");
        if last > t {
            return Err(invalid(format!("last entry {last} must be a root in [1, {t}]")));
        }
        Ok(Self { n, t, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}

fn check_shape(n: usize, t: usize) -> Result<()> {
    if t == 0 || n < t + 1 {
        return Err(domain(format!("need 1 <= t < n, got n={n}, t={t}")));
    }
    Ok(())
}

pub fn encode(forest: &RootedForest) -> PrueferSequence {
    let n = forest.n;
    let mut deg = vec![0usize; n + 1];
    // XOR of current neighbours; equals the unique neighbour of a leaf.
    let mut nbr_xor = vec![0usize; n + 1];
    for &(u, v) in &forest.edges {
        deg[u] += 1;
        deg[v] += 1;
        nbr_xor[u] ^= v;
        nbr_xor[v] ^= u;
    }
    let mut leaves: BinaryHeap<usize> = (1..=n).filter(|&v| deg[v] == 1).collect();
    let mut out = Vec::with_capacity(n - forest.t);
    while out.len() < n - forest.t {
        let y = leaves.pop().expect("a forest with edges has a leaf");
        if deg[y] != 1 {
            continue;
        }
        debug_assert!(y > forest.t, "roots are never the largest leaf");
        let x = nbr_xor[y];
        out.push(x);
        deg[y] = 0;
        nbr_xor[y] = 0;
        deg[x] -= 1;
        nbr_xor[x] ^= y;
        if deg[x] == 1 {
            leaves.push(x);
        }
    }
    PrueferSequence { n, t: forest.t, entries: out }
}

pub fn decode(seq: &PrueferSequence) -> RootedForest {
    let (n, t) = (seq.n, seq.t);
    let mut deg = vec![0usize; n + 1];
    for &w in &seq.entries {
        deg[w] += 1;
    }
    for d in deg.iter_mut().skip(t + 1) {
        *d += 1;
    }
    let mut ones: BinaryHeap<usize> = (1..=n).filter(|&v| deg[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - t);
    for &x in &seq.entries {
        let y = loop {
            let y = ones.pop().expect("a vertex of residual degree one exists");
            if deg[y] == 1 {
                break y;
            }
        };
        debug_assert!(y > t && y != x);
        deg[y] -= 1;
        deg[x] -= 1;
        if deg[x] == 1 {
            ones.push(x);
        }
        edges.push(if x < y { (x, y) } else { (y, x) });
    }
    edges.sort_unstable();
    RootedForest { n, t, edges }
}

/// Degree of `v` read off the codeword: its number of occurrences, plus one
/// for non-roots.
pub fn degree_from_sequence(seq: &PrueferSequence, v: usize) -> Result<usize> {
    if v == 0 || v > seq.n {
        return Err(domain(format!("vertex {v} outside [1, {}]", seq.n)));
    }
    let count = seq.entries.iter().filter(|&&w| w == v).count();
    Ok(count + usize::from(v > seq.t))
}

/// Draws a uniform codeword and decodes it.
pub fn sample_uniform_forest<R: Rng + ?Sized>(n: usize, t: usize, rng: &mut R) -> Result<RootedForest> {
    Ok(decode(&sample_uniform_sequence(n, t, rng)?))
}

pub fn sample_uniform_sequence<R: Rng + ?Sized>(n: usize, t: usize, rng: &mut R) -> Result<PrueferSequence> {
    check_shape(n, t)?;
    let mut entries: Vec<usize> = (0..n - t - 1).map(|_| rng.gen_range(1..=n)).collect();
    entries.push(rng.gen_range(1..=t));
    Ok(PrueferSequence { n, t, entries })
}

/// `|F(n, t)| = t · n^{n−t−1}`.
pub fn count_forests(n: usize, t: usize) -> Result<BigUint> {
    check_shape(n, t)?;
    Ok(BigUint::from(t) * BigUint::from(n).pow((n - t - 1) as u32))
}

/// Every codeword of `S(n, t)` in lexicographic order.
pub fn all_sequences(n: usize, t: usize) -> Result<impl Iterator<Item = PrueferSequence>> {
    check_shape(n, t)?;
    let len = n - t;
    let total = t * n.pow((len - 1) as u32);
    Ok((0..total).map(move |mut idx| {
        let mut entries = vec![0; len];
        entries[len - 1] = idx % t + 1;
        idx /= t;
        for slot in entries[..len - 1].iter_mut().rev() {
            *slot = idx % n + 1;
            idx /= n;
        }
        PrueferSequence { n, t, entries }
    }))
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
