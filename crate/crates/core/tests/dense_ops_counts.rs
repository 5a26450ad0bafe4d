mod common;

use planardeg::dense_ops::{
    enumerate_class, forward_images, preimages, signature_of, sweep_dense_ratio, witnesses,
};
use planardeg::graph_model::{is_planar, SimpleGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::all_pairs;

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random graphs on `[n]` satisfying k ≥ 1, l ≥ 2, Δ ≥ 3.
fn random_sources(n: usize, count: usize, seed: u64) -> Vec<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = all_pairs(n);
    let mut out = Vec::new();
    while out.len() < count {
        let m = rng.gen_range(5..=n + 4);
        let edges: Vec<_> = pairs.choose_multiple(&mut rng, m).copied().collect();
        let g = SimpleGraph::new(n, edges).unwrap();
        let s = signature_of(&g);
        if s.k >= 1 && s.l >= 2 && s.d >= 3 {
            out.push(g);
        }
    }
    out
}

#[test]
fn every_source_class_at_nine_vertices_meets_the_bound() {
    for planar in [false, true] {
        let rows = sweep_dense_ratio(9, 5..=8, planar).unwrap();
        assert!(!rows.is_empty());
        for r in &rows {
            assert!(r.holds, "{r:?}");
            assert!(r.count_dst > 0, "{r:?}");
        }
    }
}

#[test]
fn forward_and_backward_counts() {
    for g in random_sources(11, 300, 21) {
        let s = signature_of(&g);
        let images = forward_images(&g).unwrap();
        assert!(images.len() >= s.d * s.k * binom(s.l, 2), "{s:?}: {}", images.len());
        assert!(witnesses(&g).len() >= images.len());
        for h in &images {
            assert_eq!(signature_of(h), s.target());
            let back = preimages(h);
            assert!(back.contains(&g));
            let t = s.target();
            assert!(back.len() <= 2 * t.d * 3 * binom(t.k, 4), "{t:?}: {}", back.len());
            for p in &back {
                assert!(forward_images(p).unwrap().contains(h));
            }
        }
    }
}

#[test]
fn transformation_keeps_planarity() {
    for g in random_sources(10, 300, 22) {
        let planar = is_planar(&g).unwrap();
        for h in forward_images(&g).unwrap() {
            if planar {
                assert!(is_planar(&h).unwrap());
            }
        }
    }
}

#[test]
fn classes_partition_all_graphs_at_five_vertices() {
    let n = 5;
    for m in 0..=10 {
        let mut total = 0u64;
        for k in 0..=n {
            for l in 0..=n / 2 {
                for d in 0..n {
                    total += enumerate_class(n, m, k, l, d, false).unwrap();
                }
            }
        }
        assert_eq!(total as usize, binom(10, m), "m={m}");
    }
}
