use std::collections::VecDeque;

use super::{components, edges_within, SimpleGraph};

/// Peels vertices of degree at most one until none remain. The result
/// keeps the labels of `g`; peeled vertices are isolated in it.
pub fn peel_leaves(g: &SimpleGraph) -> SimpleGraph {
    let n = g.n();
    let mut deg = g.degree_sequence();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (1..=n).filter(|&v| deg[v - 1] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v - 1] {
            continue;
        }
        alive[v - 1] = false;
        for &w in g.neighbors(v) {
            if alive[w - 1] {
                deg[w - 1] -= 1;
                if deg[w - 1] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    g.restrict(&alive)
}

/// The 2-core of the complex part.
///
/// Vertices of degree at most one are peeled until none remain, then every
/// component of what is left that is a bare cycle is discarded. The result
/// keeps the labels of `g`; vertices outside the core are isolated in it.
pub fn two_core(g: &SimpleGraph) -> SimpleGraph {
    let n = g.n();
    let peeled = peel_leaves(g);

    let mut keep = vec![false; n];
    for comp in components(&peeled) {
        if comp.len() == 1 && peeled.degree(comp[0]) == 0 {
            continue;
        }
        let is_cycle = comp.iter().all(|&v| peeled.degree(v) == 2);
        if !is_cycle {
            for v in comp {
                keep[v - 1] = true;
            }
        }
    }
    peeled.restrict(&keep)
}

/// One piece of a decomposition: its vertex set and the edges of `g` inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub vertices: Vec<usize>,
    pub graph: SimpleGraph,
}

impl Part {
    fn of(g: &SimpleGraph, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        let mut keep = vec![false; g.n()];
        for &v in &vertices {
            keep[v - 1] = true;
        }
        Self { graph: g.restrict(&keep), vertices }
    }

    pub fn v(&self) -> usize {
        self.vertices.len()
    }

    pub fn e(&self) -> usize {
        self.graph.m()
    }
}

/// Split of a graph into the large complex part (the complex component
/// holding the largest core component), the small complex part (all other
/// complex components) and the non-complex part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub core: SimpleGraph,
    /// Vertex set of the largest core component, empty without a core.
    pub largest_core_component: Vec<usize>,
    pub big_complex: Part,
    pub small_complex: Part,
    pub non_complex: Part,
}

impl Decomposition {
    pub fn core_vertices(&self) -> Vec<usize> {
        self.core.non_isolated_vertices()
    }
}

pub fn decompose(g: &SimpleGraph) -> Decomposition {
    let core = two_core(g);
    let core_vertices = core.non_isolated_vertices();
    let largest_core_component = if core_vertices.is_empty() {
        Vec::new()
    } else {
        components(&core)
            .into_iter()
            .find(|c| !(c.len() == 1 && core.degree(c[0]) == 0))
            .expect("non-empty core has a component with edges")
    };

    let mut big = Vec::new();
    let mut small = Vec::new();
    let mut rest = Vec::new();
    let anchor = largest_core_component.first().copied();
    for comp in components(g) {
        let complex = edges_within(g, &comp) > comp.len();
        if !complex {
            rest.extend(comp);
        } else if anchor.is_some_and(|a| comp.binary_search(&a).is_ok()) {
            big = comp;
        } else {
            small.extend(comp);
        }
    }

    Decomposition {
        big_complex: Part::of(g, big),
        small_complex: Part::of(g, small),
        non_complex: Part::of(g, rest),
        core,
        largest_core_component,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie_with_pendant() -> SimpleGraph {
        SimpleGraph::new(6, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5), (2, 6)]).unwrap()
    }

    #[test]
    fn forest_has_empty_core() {
        let g = SimpleGraph::new(7, [(1, 2), (2, 3), (4, 5), (5, 6), (5, 7)]).unwrap();
        assert_eq!(two_core(&g).m(), 0);
        let d = decompose(&g);
        assert_eq!(d.non_complex.v(), 7);
        assert!(d.big_complex.vertices.is_empty());
        assert!(d.small_complex.vertices.is_empty());
    }

    #[test]
    fn unicyclic_has_empty_core() {
        let g = SimpleGraph::new(4, [(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        assert_eq!(two_core(&g).m(), 0);
    }

    #[test]
    fn bowtie_core() {
        let core = two_core(&bowtie_with_pendant());
        assert_eq!(core.edges(), &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (4, 5)]);
        assert_eq!(core.non_isolated_vertices(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn single_complex_component_is_big() {
        let g = bowtie_with_pendant();
        let d = decompose(&g);
        assert_eq!(d.big_complex.vertices, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(d.big_complex.e(), 7);
        assert!(d.small_complex.vertices.is_empty());
        assert!(d.non_complex.vertices.is_empty());
    }

    #[test]
    fn big_part_keys_on_core_size_not_part_size() {
        // K4 on {1..4}: core of 4 vertices. Theta graph on {5,6,7,8,9} with
        // a long tail 9-10-11-12-13: core of 5 vertices, part of 9 vertices.
        let mut edges = vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        edges.extend([(5, 6), (6, 7), (7, 5), (5, 8), (8, 9), (9, 7)]);
        edges.extend([(9, 10), (10, 11), (11, 12), (12, 13)]);
        edges.extend([(14, 15)]);
        let g = SimpleGraph::new(15, edges).unwrap();
        let d = decompose(&g);
        assert_eq!(d.largest_core_component, vec![5, 6, 7, 8, 9]);
        assert_eq!(d.big_complex.vertices, (5..=13).collect::<Vec<_>>());
        assert_eq!(d.small_complex.vertices, vec![1, 2, 3, 4]);
        assert_eq!(d.non_complex.vertices, vec![14, 15]);
    }

    #[test]
    fn core_ties_break_on_smallest_label() {
        // two disjoint K4s
        let mut edges = vec![];
        for base in [0usize, 4] {
            for a in 1..=4 {
                for b in a + 1..=4 {
                    edges.push((base + a, base + b));
                }
            }
        }
        let g = SimpleGraph::new(8, edges).unwrap();
        let d = decompose(&g);
        assert_eq!(d.big_complex.vertices, vec![1, 2, 3, 4]);
        assert_eq!(d.small_complex.vertices, vec![5, 6, 7, 8]);
    }

    #[test]
    fn isolated_cycle_is_not_core() {
        // cycle on 1..4 plus bowtie on 5..9
        let g = SimpleGraph::new(
            9,
            [(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (5, 7), (5, 8), (8, 9), (5, 9)],
        )
        .unwrap();
        assert_eq!(two_core(&g).non_isolated_vertices(), vec![5, 6, 7, 8, 9]);
    }
}
