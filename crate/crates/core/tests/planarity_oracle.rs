mod common;

use planardeg::graph_model::{is_planar, SimpleGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_pairs, for_each_combination};

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> SimpleGraph {
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    SimpleGraph::new(n, edges).unwrap()
}

fn has(g: &SimpleGraph, a: usize, b: usize) -> bool {
    g.has_edge(a, b)
}

/// On at most six vertices a Kuratowski subdivision is K5, K3,3, or K5 with
/// one edge routed through the sixth vertex.
fn nonplanar_small(g: &SimpleGraph) -> bool {
    let n = g.n();
    let verts: Vec<usize> = (1..=n).collect();
    let mut found = false;
    for_each_combination(n, 5, |idx| {
        let s: Vec<usize> = idx.iter().map(|&i| verts[i]).collect();
        let missing: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (s[i], s[j]))
            .filter(|&(a, b)| !has(g, a, b))
            .collect();
        match missing[..] {
            [] => found = true,
            [(a, b)] => {
                if let Some(&x) = verts.iter().find(|v| !s.contains(v)) {
                    if has(g, a, x) && has(g, x, b) {
                        found = true;
                    }
                }
            }
            _ => {}
        }
    });
    if n == 6 {
        for_each_combination(5, 2, |idx| {
            let side_a = [1, idx[0] + 2, idx[1] + 2];
            let side_b: Vec<usize> = (1..=6).filter(|v| !side_a.contains(v)).collect();
            if side_a.iter().all(|&a| side_b.iter().all(|&b| has(g, a, b))) {
                found = true;
            }
        });
    }
    found
}

#[test]
fn agrees_with_kuratowski_oracle_up_to_six_vertices() {
    for n in 1..=6 {
        let pairs = all_pairs(n);
        for mask in 0..1u64 << pairs.len() {
            let g = graph_from_mask(n, &pairs, mask);
            assert_eq!(is_planar(&g).unwrap(), !nonplanar_small(&g), "{:?}", g.edges());
        }
    }
}

#[test]
fn labelled_planar_graph_counts() {
    let count = |n: usize| {
        let pairs = all_pairs(n);
        (0..1u64 << pairs.len())
            .filter(|&mask| is_planar(&graph_from_mask(n, &pairs, mask)).unwrap())
            .count()
    };
    assert_eq!(count(4), 64);
    assert_eq!(count(5), 1023);
    assert_eq!(count(6), 32071);
    assert_eq!(count(7), 1_823_707);
}

#[test]
fn monotone_under_edge_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..400 {
        let n = rng.gen_range(7..=12);
        let pairs = all_pairs(n);
        let m = rng.gen_range(n..=(3 * n - 6).min(pairs.len()));
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        while chosen.len() < m {
            let e = pairs[rng.gen_range(0..pairs.len())];
            if !chosen.contains(&e) {
                chosen.push(e);
            }
        }
        let g = SimpleGraph::new(n, chosen.iter().copied()).unwrap();
        let planar = is_planar(&g).unwrap();
        // relabelling by a reversal does not matter
        let flipped = SimpleGraph::new(n, chosen.iter().map(|&(a, b)| (n + 1 - a, n + 1 - b))).unwrap();
        assert_eq!(is_planar(&flipped).unwrap(), planar);
        let extra = pairs.iter().copied().find(|e| !chosen.contains(e));
        if let (false, Some(e)) = (planar, extra) {
            let bigger = SimpleGraph::new(n, chosen.iter().copied().chain([e])).unwrap();
            assert!(!is_planar(&bigger).unwrap());
        }
        if planar {
            let smaller = SimpleGraph::new(n, chosen[1..].iter().copied()).unwrap();
            assert!(is_planar(&smaller).unwrap());
        }
    }
}
