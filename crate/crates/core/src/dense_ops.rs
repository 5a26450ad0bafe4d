//! The degree-raising transformation for dense classes and exhaustive checks
//! of its counting bounds.
//!
//! Given a graph with maximum degree `d`, a vertex `v1` of degree `d`, a
//! neighbour `v2`, an isolated vertex `v3` and two isolated edges `v4v5`,
//! `v6v7`, the transformation deletes `v4v5` and `v6v7` and adds `v1v3` and
//! `v2v3`. The edge count is unchanged, the maximum degree goes up by one,
//! three isolated vertices appear and two isolated edges disappear.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::graph_model::{is_planar, isolated_counts, SimpleGraph, MAX_SEARCH_VERTICES};

/// Largest number of edge subsets a single class enumeration will visit.
pub const MAX_ENUMERATED_SUBSETS: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassSignature {
    pub n: usize,
    pub m: usize,
    /// isolated vertices
    pub k: usize,
    /// isolated edges
    pub l: usize,
    /// maximum degree
    pub d: usize,
}

impl ClassSignature {
    /// The class the transformation maps into.
    pub fn target(&self) -> ClassSignature {
        ClassSignature { k: self.k + 3, l: self.l.saturating_sub(2), d: self.d + 1, ..*self }
    }

    fn meets_hypotheses(&self) -> bool {
        self.k >= 1 && self.l >= 2 && self.d >= 3
    }
}

pub fn signature_of(g: &SimpleGraph) -> ClassSignature {
    let (k, l) = isolated_counts(g);
    ClassSignature { n: g.n(), m: g.m(), k, l, d: g.max_degree() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
    pub v4: usize,
    pub v5: usize,
    pub v6: usize,
    pub v7: usize,
}

impl Witness {
    fn labels(&self) -> [usize; 7] {
        [self.v1, self.v2, self.v3, self.v4, self.v5, self.v6, self.v7]
    }
}

fn isolated_edge(g: &SimpleGraph, a: usize, b: usize) -> bool {
    g.has_edge(a, b) && g.degree(a) == 1 && g.degree(b) == 1
}

pub fn validate_witness(g: &SimpleGraph, w: &Witness) -> Result<()> {
    let labels = w.labels();
    if let Some(&v) = labels.iter().find(|&&v| v == 0 || v > g.n()) {
        return Err(invalid(format!("witness vertex {v} outside [1, {}]", g.n())));
    }
    let distinct: HashSet<usize> = labels.iter().copied().collect();
    if distinct.len() != 7 {
        return Err(invalid("witness vertices are not distinct"));
    }
    let d = g.max_degree();
    if d == 0 || g.degree(w.v1) != d {
        return Err(invalid(format!("v1 = {} does not attain the maximum degree {d}", w.v1)));
    }
    if !g.has_edge(w.v1, w.v2) {
        return Err(invalid(format!("v2 = {} is not adjacent to v1 = {}", w.v2, w.v1)));
    }
    if g.degree(w.v3) != 0 {
        return Err(invalid(format!("v3 = {} is not isolated", w.v3)));
    }
    if !isolated_edge(g, w.v4, w.v5) || !isolated_edge(g, w.v6, w.v7) {
        return Err(invalid("v4v5 and v6v7 must be isolated edges"));
    }
    Ok(())
}

/// All valid witnesses in lexicographic order of `(v1, …, v7)`, with each
/// isolated edge written low endpoint first and `v4v5` before `v6v7`.
pub fn witnesses(g: &SimpleGraph) -> Vec<Witness> {
    let d = g.max_degree();
    if d == 0 {
        return Vec::new();
    }
    let iso: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) == 0).collect();
    let iso_edges: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(a, b)| isolated_edge(g, a, b)).collect();
    let mut out = Vec::new();
    for v1 in (1..=g.n()).filter(|&v| g.degree(v) == d) {
        for &v2 in g.neighbors(v1) {
            let avoid = |e: &(usize, usize)| ![v1, v2].contains(&e.0) && ![v1, v2].contains(&e.1);
            let usable: Vec<(usize, usize)> = iso_edges.iter().copied().filter(avoid).collect();
            for &v3 in &iso {
                for (i, &(v4, v5)) in usable.iter().enumerate() {
                    for &(v6, v7) in &usable[i + 1..] {
                        out.push(Witness { v1, v2, v3, v4, v5, v6, v7 });
                    }
                }
            }
        }
    }
    out
}

/// The lexicographically smallest witness, if any.
pub fn find_witness(g: &SimpleGraph) -> Option<Witness> {
    witnesses(g).into_iter().next()
}

/// Deletes `v4v5`, `v6v7` and adds `v1v3`, `v2v3`.
///
/// With `d = Δ(g)` the result has maximum degree `d + 1` and three more
/// isolated vertices. It has two fewer isolated edges when `d ≥ 2`; for
/// `d = 1` the edge `v1v2` was itself isolated and the count drops by three.
pub fn apply_transformation(g: &SimpleGraph, w: &Witness) -> Result<SimpleGraph> {
    validate_witness(g, w)?;
    let d = g.max_degree();
    let gone = [canon(w.v4, w.v5), canon(w.v6, w.v7)];
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !gone.contains(e))
        .chain([canon(w.v1, w.v3), canon(w.v2, w.v3)]);
    let out = SimpleGraph::new(g.n(), edges)?;
    debug_assert!(post_state_holds(&out, w, d));
    Ok(out)
}

/// Structural facts that hold right after a transformation with witness `w`
/// applied to a graph of maximum degree `d`.
pub fn post_state_holds(h: &SimpleGraph, w: &Witness, d: usize) -> bool {
    h.degree(w.v1) == d + 1
        && h.max_degree() == d + 1
        && h.neighbors(w.v3) == [w.v1.min(w.v2), w.v1.max(w.v2)]
        && [w.v4, w.v5, w.v6, w.v7].iter().all(|&v| h.degree(v) == 0)
}

fn canon(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Distinct graphs reachable from `g` by one transformation.
pub fn forward_images(g: &SimpleGraph) -> Result<HashSet<SimpleGraph>> {
    witnesses(g).iter().map(|w| apply_transformation(g, w)).collect()
}

/// Distinct graphs that map onto `h` by one transformation.
pub fn preimages(h: &SimpleGraph) -> HashSet<SimpleGraph> {
    let top = h.max_degree();
    let mut out = HashSet::new();
    if top < 2 {
        return out;
    }
    let iso: Vec<usize> = (1..=h.n()).filter(|&v| h.degree(v) == 0).collect();
    for v3 in (1..=h.n()).filter(|&v| h.degree(v) == 2) {
        let (a, b) = (h.neighbors(v3)[0], h.neighbors(v3)[1]);
        if !h.has_edge(a, b) {
            continue;
        }
        for (v1, v2) in [(a, b), (b, a)] {
            if h.degree(v1) != top {
                continue;
            }
            for_each_four(&iso, |q| {
                for [v4, v5, v6, v7] in pairings(q) {
                    let w = Witness { v1, v2, v3, v4, v5, v6, v7 };
                    let removed = [canon(v1, v3), canon(v2, v3)];
                    let edges = h
                        .edges()
                        .iter()
                        .copied()
                        .filter(|e| !removed.contains(e))
                        .chain([canon(v4, v5), canon(v6, v7)]);
                    let g = SimpleGraph::new(h.n(), edges).expect("removed edges exist, added edges are new");
                    if validate_witness(&g, &w).is_ok() {
                        out.insert(g);
                    }
                }
            });
        }
    }
    out
}

fn for_each_four(items: &[usize], mut f: impl FnMut([usize; 4])) {
    let n = items.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    f([items[a], items[b], items[c], items[d]]);
                }
            }
        }
    }
}

/// The three ways to split four vertices into two edges.
fn pairings([a, b, c, d]: [usize; 4]) -> [[usize; 4]; 3] {
    [[a, b, c, d], [a, c, b, d], [a, d, b, c]]
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn check_enumeration(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("need at least one vertex"));
    }
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge(format!(
            "class enumeration on {n} vertices (limit {MAX_SEARCH_VERTICES})"
        )));
    }
    let pairs = (n * (n - 1) / 2) as u128;
    let subsets = binomial(pairs, m as u128);
    if subsets > MAX_ENUMERATED_SUBSETS {
        return Err(Error::TooLarge(format!(
            "{subsets} edge subsets for n={n}, m={m} (limit {MAX_ENUMERATED_SUBSETS})"
        )));
    }
    Ok(())
}

/// Counts labelled graphs on `[n]` with `m` edges by signature, keeping
/// only signatures accepted by `relevant`. Planarity is tested only for
/// relevant graphs.
pub fn class_histogram<P>(n: usize, m: usize, planar_only: bool, relevant: P) -> Result<HashMap<ClassSignature, u64>>
where
    P: Fn(&ClassSignature) -> bool + Sync,
{
    check_enumeration(n, m)?;
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    if m > pairs.len() {
        return Ok(HashMap::new());
    }
    let visit = |edges: &[(usize, usize)], deg: &[u8], hist: &mut HashMap<ClassSignature, u64>| {
        let k = deg.iter().filter(|&&x| x == 0).count();
        let l = edges.iter().filter(|&&(a, b)| deg[a - 1] == 1 && deg[b - 1] == 1).count();
        let d = deg.iter().copied().max().unwrap_or(0) as usize;
        let sig = ClassSignature { n, m, k, l, d };
        if !relevant(&sig) {
            return;
        }
        if planar_only {
            let g = SimpleGraph::from_sorted_unchecked(n, edges.to_vec());
            if !is_planar(&g).expect("enumeration size is within the planarity search limit") {
                return;
            }
        }
        *hist.entry(sig).or_insert(0) += 1;
    };

    // split the search on its first two edges so the work spreads evenly
    let prefixes: Vec<Vec<usize>> = match m {
        0 => vec![vec![]],
        1 => (0..pairs.len()).map(|i| vec![i]).collect(),
        _ => (0..pairs.len())
            .flat_map(|i| (i + 1..pairs.len()).map(move |j| vec![i, j]))
            .collect(),
    };
    let hist = prefixes
        .par_iter()
        .map(|prefix| {
            let mut hist = HashMap::new();
            let mut deg = vec![0u8; n];
            let mut chosen = Vec::with_capacity(m);
            for &i in prefix {
                let (a, b) = pairs[i];
                deg[a - 1] += 1;
                deg[b - 1] += 1;
                chosen.push(pairs[i]);
            }
            let start = prefix.last().map_or(0, |&i| i + 1);
            extend_subsets(&pairs, start, m, &mut chosen, &mut deg, &mut |e, dg| visit(e, dg, &mut hist));
            hist
        })
        .reduce(HashMap::new, |mut a, b| {
            for (sig, c) in b {
                *a.entry(sig).or_insert(0) += c;
            }
            a
        });
    Ok(hist)
}

type Leaf<'a> = dyn FnMut(&[(usize, usize)], &[u8]) + 'a;

fn extend_subsets(
    pairs: &[(usize, usize)],
    start: usize,
    m: usize,
    chosen: &mut Vec<(usize, usize)>,
    deg: &mut [u8],
    leaf: &mut Leaf<'_>,
) {
    if chosen.len() == m {
        leaf(chosen, deg);
        return;
    }
    let need = m - chosen.len();
    for i in start..pairs.len() {
        if pairs.len() - i < need {
            break;
        }
        let (a, b) = pairs[i];
        deg[a - 1] += 1;
        deg[b - 1] += 1;
        chosen.push((a, b));
        extend_subsets(pairs, i + 1, m, chosen, deg, leaf);
        chosen.pop();
        deg[a - 1] -= 1;
        deg[b - 1] -= 1;
    }
}

/// Number of labelled graphs on `[n]` with `m` edges, `k` isolated vertices,
/// `l` isolated edges and maximum degree `d`, optionally planar only.
pub fn enumerate_class(n: usize, m: usize, k: usize, l: usize, d: usize, planar_only: bool) -> Result<u64> {
    let want = ClassSignature { n, m, k, l, d };
    let hist = class_histogram(n, m, planar_only, |s| *s == want)?;
    Ok(hist.get(&want).copied().unwrap_or(0))
}

/// Outcome of comparing a source class with its transformation target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub source: ClassSignature,
    pub count_src: u64,
    pub count_dst: u64,
    /// `1 / (8k³)`
    pub bound: f64,
    pub holds: bool,
}

impl RatioCheck {
    fn new(source: ClassSignature, count_src: u64, count_dst: u64) -> Self {
        let k3 = (source.k as u128).pow(3);
        RatioCheck {
            source,
            count_src,
            count_dst,
            bound: 1.0 / (8.0 * k3 as f64),
            holds: count_src == 0 || u128::from(count_dst) * 8 * k3 >= u128::from(count_src),
        }
    }

    /// True when the source class is empty, so the bound holds trivially.
    pub fn vacuous(&self) -> bool {
        self.count_src == 0
    }
}

pub fn verify_ratio_bound(n: usize, m: usize, k: usize, l: usize, d: usize, planar_only: bool) -> Result<RatioCheck> {
    let source = ClassSignature { n, m, k, l, d };
    if !source.meets_hypotheses() {
        return Err(domain(format!("ratio bound needs k >= 1, l >= 2, d >= 3; got k={k}, l={l}, d={d}")));
    }
    let target = source.target();
    let hist = class_histogram(n, m, planar_only, |s| *s == source || *s == target)?;
    let get = |s| hist.get(&s).copied().unwrap_or(0);
    Ok(RatioCheck::new(source, get(source), get(target)))
}

/// Checks the ratio bound for every nonempty source class on `[n]` whose
/// edge count lies in `ms`. Rows come out ordered by `(m, k, l, d)`.
pub fn sweep_dense_ratio(n: usize, ms: impl IntoIterator<Item = usize>, planar_only: bool) -> Result<Vec<RatioCheck>> {
    let mut rows = Vec::new();
    for m in ms {
        let hist = class_histogram(n, m, planar_only, |s| s.meets_hypotheses() || (s.k >= 4 && s.d >= 4))?;
        let mut sources: Vec<ClassSignature> = hist.keys().copied().filter(ClassSignature::meets_hypotheses).collect();
        sources.sort_unstable();
        for s in sources {
            let dst = hist.get(&s.target()).copied().unwrap_or(0);
            rows.push(RatioCheck::new(s, hist[&s], dst));
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct CsvRow {
    m: usize,
    k: usize,
    l: usize,
    d: usize,
    count_src: u64,
    count_dst: u64,
    bound: f64,
    holds: bool,
}

/// Writes `m,k,l,d,count_src,count_dst,bound,holds` rows.
pub fn write_ratio_csv<W: Write>(rows: &[RatioCheck], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["m", "k", "l", "d", "count_src", "count_dst", "bound", "holds"])?;
    for r in rows {
        let s = r.source;
        w.serialize(CsvRow {
            m: s.m,
            k: s.k,
            l: s.l,
            d: s.d,
            count_src: r.count_src,
            count_dst: r.count_dst,
            bound: r.bound,
            holds: r.holds,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fourteen_vertex_graph() -> SimpleGraph {
        SimpleGraph::new(
            14,
            [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (3, 6), (5, 6), (7, 8), (9, 10), (11, 12)],
        )
        .unwrap()
    }

    #[test]
    fn fourteen_vertex_witness() {
        let g = fourteen_vertex_graph();
        let sig = signature_of(&g);
        assert_eq!((sig.k, sig.l, sig.d), (2, 3, 4));
        let drawn = Witness { v1: 1, v2: 3, v3: 14, v4: 7, v5: 8, v6: 9, v7: 10 };
        let h = apply_transformation(&g, &drawn).unwrap();
        assert_eq!(signature_of(&h), ClassSignature { n: 14, m: 11, k: 5, l: 1, d: 5 });
        assert!(post_state_holds(&h, &drawn, 4));
        assert!(is_planar(&g).unwrap() && is_planar(&h).unwrap());
        let w = find_witness(&g).unwrap();
        assert_eq!(w, Witness { v1: 1, v2: 2, v3: 13, v4: 7, v5: 8, v6: 9, v7: 10 });
    }

    #[test]
    fn no_witness_without_isolated_vertex() {
        let g = SimpleGraph::new(6, [(1, 2), (3, 4), (5, 6)]).unwrap();
        assert_eq!(find_witness(&g), None);
        assert_eq!(find_witness(&SimpleGraph::empty(7)), None);
    }

    #[test]
    fn matching_with_isolated_vertex() {
        // v1v2 is itself an isolated edge
        let g = SimpleGraph::new(7, [(1, 2), (4, 5), (6, 7)]).unwrap();
        let w = find_witness(&g).unwrap();
        assert_eq!(w, Witness { v1: 1, v2: 2, v3: 3, v4: 4, v5: 5, v6: 6, v7: 7 });
        let h = apply_transformation(&g, &w).unwrap();
        assert_eq!(h.m(), 3);
        assert_eq!(h.degree(3), 2);
        assert_eq!(h.max_degree(), 2);
        assert_eq!(isolated_counts(&h), (4, 0));
    }

    #[test]
    fn invalid_witness_is_rejected() {
        let g = fourteen_vertex_graph();
        let bad = Witness { v1: 2, v2: 1, v3: 14, v4: 7, v5: 8, v6: 9, v7: 10 };
        assert!(apply_transformation(&g, &bad).is_err());
        let bad = Witness { v1: 1, v2: 6, v3: 14, v4: 7, v5: 8, v6: 9, v7: 10 };
        assert!(apply_transformation(&g, &bad).is_err());
        let bad = Witness { v1: 1, v2: 2, v3: 14, v4: 7, v5: 8, v6: 7, v7: 8 };
        assert!(apply_transformation(&g, &bad).is_err());
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_class(3, 0, 3, 0, 0, true).unwrap(), 1);
        assert_eq!(enumerate_class(4, 1, 2, 1, 1, false).unwrap(), 6);
        assert_eq!(enumerate_class(6, 3, 0, 3, 1, true).unwrap(), 15);
        assert_eq!(enumerate_class(5, 10, 0, 0, 4, false).unwrap(), 1);
        assert_eq!(enumerate_class(5, 10, 0, 0, 4, true).unwrap(), 0);
    }

    #[test]
    fn enumeration_limits() {
        assert!(matches!(enumerate_class(13, 1, 0, 0, 1, false), Err(Error::TooLarge(_))));
        assert!(matches!(enumerate_class(12, 20, 0, 0, 3, false), Err(Error::TooLarge(_))));
        assert_eq!(enumerate_class(4, 7, 0, 0, 3, false).unwrap(), 0);
    }

    #[test]
    fn ratio_hypotheses() {
        assert!(verify_ratio_bound(7, 3, 1, 1, 3, true).is_err());
        assert!(verify_ratio_bound(7, 3, 0, 2, 3, true).is_err());
        let r = verify_ratio_bound(7, 5, 1, 2, 3, true).unwrap();
        assert!(r.vacuous() && r.holds);
    }

    #[test]
    fn csv_layout() {
        let src = ClassSignature { n: 9, m: 5, k: 1, l: 2, d: 3 };
        let rows = [RatioCheck::new(src, 10, 3)];
        let mut buf = Vec::new();
        write_ratio_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "m,k,l,d,count_src,count_dst,bound,holds\n5,1,2,3,10,3,0.125,true\n");
    }
}
