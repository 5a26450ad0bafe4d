//! Exact planarity for small graphs by searching for a Kuratowski
//! subdivision (K5 or K3,3).
//!
//! Each component is first reduced without changing planarity: vertices of
//! degree at most one are deleted and vertices of degree two are suppressed
//! (replaced by an edge between their neighbours, or simply deleted when the
//! neighbours are already adjacent). What survives has minimum degree three;
//! a subdivision in the original exists iff one exists in the reduced graph,
//! where branch vertices are joined by internally disjoint paths.

use std::collections::BTreeSet;

use super::{components, edges_within, SimpleGraph};
use crate::error::{Error, Result};

/// Largest reduced component the subdivision search accepts.
pub const MAX_SEARCH_VERTICES: usize = 12;

/// Returns whether `g` is planar.
///
/// Components with at most one cycle, or at most four vertices, are planar
/// outright; components violating `m ≤ 3n − 6` are not. Everything else is
/// reduced and searched. A reduced component with more than
/// [`MAX_SEARCH_VERTICES`] vertices is refused with [`Error::TooLarge`].
pub fn is_planar(g: &SimpleGraph) -> Result<bool> {
    for comp in components(g) {
        let nc = comp.len();
        let mc = edges_within(g, &comp);
        if mc <= nc || nc <= 4 {
            continue;
        }
        if mc > 3 * nc - 6 {
            return Ok(false);
        }
        let reduced = reduce(g, &comp);
        let nr = reduced.len();
        let mr: usize = reduced.iter().map(|s| s.len()).sum::<usize>() / 2;
        if nr <= 4 || mr < 9 {
            continue;
        }
        if mr > 3 * nr - 6 {
            return Ok(false);
        }
        if nr > MAX_SEARCH_VERTICES {
            return Err(Error::TooLarge(format!(
                "planarity search on a reduced component of {nr} vertices (limit {MAX_SEARCH_VERTICES})"
            )));
        }
        if has_kuratowski_subdivision(&to_masks(&reduced)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduced component as adjacency sets over local indices `0..nr`.
fn reduce(g: &SimpleGraph, comp: &[usize]) -> Vec<BTreeSet<usize>> {
    let local = |v: usize| comp.binary_search(&v).expect("neighbour inside component");
    let mut adj: Vec<BTreeSet<usize>> = comp
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&w| local(w)).collect())
        .collect();
    let mut alive = vec![true; comp.len()];
    let mut work: Vec<usize> = (0..comp.len()).collect();
    while let Some(v) = work.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        alive[v] = false;
        adj[v].clear();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            if adj[a].insert(b) {
                adj[b].insert(a);
                continue;
            }
        }
        work.extend(nbrs);
    }
    let ids: Vec<usize> = (0..comp.len()).filter(|&v| alive[v]).collect();
    ids.iter()
        .map(|&v| adj[v].iter().map(|w| ids.binary_search(w).expect("alive neighbour")).collect())
        .collect()
}

fn to_masks(adj: &[BTreeSet<usize>]) -> Vec<u32> {
    adj.iter().map(|s| s.iter().fold(0u32, |m, &w| m | (1 << w))).collect()
}

fn has_kuratowski_subdivision(adj: &[u32]) -> bool {
    let n = adj.len();
    let deg = |v: usize| adj[v].count_ones();

    let k5_candidates: Vec<usize> = (0..n).filter(|&v| deg(v) >= 4).collect();
    let mut found = false;
    for_each_subset(&k5_candidates, 5, &mut |branch| {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (branch[i], branch[j]))
            .collect();
        found = link_all(adj, branch, &pairs);
        found
    });
    if found {
        return true;
    }

    let k33_candidates: Vec<usize> = (0..n).filter(|&v| deg(v) >= 3).collect();
    for_each_subset(&k33_candidates, 6, &mut |branch| {
        // the side holding branch[0] picks two of the remaining five
        for i in 1..6 {
            for j in i + 1..6 {
                let side_a = [branch[0], branch[i], branch[j]];
                let side_b: Vec<usize> =
                    branch.iter().copied().filter(|v| !side_a.contains(v)).collect();
                let pairs: Vec<(usize, usize)> = side_a
                    .iter()
                    .flat_map(|&a| side_b.iter().map(move |&b| (a, b)))
                    .collect();
                if link_all(adj, branch, &pairs) {
                    found = true;
                    return true;
                }
            }
        }
        false
    });
    found
}

/// Calls `f` on every `k`-subset of `items` until it returns true.
fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if go(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Whether every pair can be joined by internally disjoint paths avoiding
/// the branch vertices. Adjacent pairs use their edge directly: a direct
/// edge consumes no vertices, so it is never worse than a longer path.
fn link_all(adj: &[u32], branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let branch_mask = branch.iter().fold(0u32, |m, &v| m | (1 << v));
    let all = if adj.len() == 32 { u32::MAX } else { (1u32 << adj.len()) - 1 };
    let pending: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(a, b)| adj[a] & (1 << b) == 0)
        .collect();
    route(adj, &pending, all & !branch_mask)
}

fn route(adj: &[u32], pending: &[(usize, usize)], free: u32) -> bool {
    let Some((&(a, b), rest)) = pending.split_first() else {
        return true;
    };
    if (free.count_ones() as usize) < pending.len() {
        return false;
    }
    extend(adj, a, b, 0, free, rest)
}

/// Extends a path that currently ends at `cur` and has used `used` as
/// internal vertices.
fn extend(adj: &[u32], cur: usize, target: usize, used: u32, free: u32, rest: &[(usize, usize)]) -> bool {
    let mut options = adj[cur] & free & !used;
    while options != 0 {
        let w = options.trailing_zeros() as usize;
        options &= options - 1;
        let path = used | (1 << w);
        if adj[w] & (1 << target) != 0 && route(adj, rest, free & !path) {
            return true;
        }
        if extend(adj, w, target, path, free, rest) {
            return true;
        }
    }
    false
}
