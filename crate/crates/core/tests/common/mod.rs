//! Brute-force oracles shared by the integration tests. They use nothing
//! from the library except plain data types.

#![allow(dead_code)]

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(n, k, 0, &mut Vec::with_capacity(k), &mut f);
}

/// All pairs `(a, b)` with `1 ≤ a < b ≤ n`, lexicographically.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Component label of every vertex `1..=n` (index 0 unused), or `None` if
/// the edges contain a cycle.
pub fn forest_components(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut parent: Vec<usize> = (0..=n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return None;
        }
        parent[ra] = rb;
    }
    Some((0..=n).map(|v| find(&mut parent, v)).collect())
}

/// Every forest on `[n]` with `t` trees whose roots `1..=t` lie in distinct
/// trees, as sorted edge lists.
pub fn brute_forests(n: usize, t: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs = all_pairs(n);
    let mut out = Vec::new();
    for_each_combination(pairs.len(), n - t, |idx| {
        let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
        if let Some(comp) = forest_components(n, &edges) {
            let mut roots: Vec<usize> = (1..=t).map(|r| comp[r]).collect();
            roots.sort_unstable();
            roots.dedup();
            if roots.len() == t {
                out.push(edges);
            }
        }
    });
    out
}

/// Degree of every vertex `1..=n` as a vector indexed from 0.
pub fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(a, b) in edges {
        d[a - 1] += 1;
        d[b - 1] += 1;
    }
    d
}

/// Cycle rank of every component is at most one.
pub fn every_component_has_at_most_one_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut verts = vec![0usize; n + 1];
    let mut edge_count = vec![0usize; n + 1];
    for v in 1..=n {
        verts[find(&mut parent, v)] += 1;
    }
    for &(a, _) in edges {
        edge_count[find(&mut parent, a)] += 1;
    }
    (1..=n).all(|r| edge_count[r] <= verts[r])
}
