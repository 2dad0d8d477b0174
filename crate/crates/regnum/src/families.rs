//! Deterministic constructors for the graph families used across the test
//! corpus and the CLI `generate` verb.

use crate::graph::{Graph, Vertex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range for {family}: {reason}")]
    OutOfRange {
        family: &'static str,
        reason: String,
    },
}

fn out_of_range(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::OutOfRange {
        family,
        reason: reason.into(),
    }
}

/// Zebra cap. The recursion squares quickly; 4 already has 81 vertices and
/// 320 edges, which is as far as the exact machinery needs to go.
pub const ZEBRA_MAX: usize = 4;

/// The zebra recursion. `zebra(0)` is a single isolated vertex; each step
/// takes two copies of the previous graph, adds a fresh independent set of
/// equal size to one of them, and wires that copy to the fresh set with
/// `2^n` pairwise distinct perfect matchings (cyclic shifts).
pub fn zebra(n: usize) -> Result<Graph, FamilyError> {
    Ok(zebra_with_levels(n)?.0)
}

/// As [`zebra`], also tagging every edge with the recursion stage (1-based)
/// at which its matching bundle was introduced. The stage-`l` edges form a
/// `2^(l-1)`-regular subgraph on the vertices they cover, so the tags yield
/// an `n`-part regular partition witness without any search.
pub fn zebra_with_levels(n: usize) -> Result<(Graph, Vec<usize>), FamilyError> {
    if n > ZEBRA_MAX {
        return Err(out_of_range(
            "zebra",
            format!("n={} exceeds max {}", n, ZEBRA_MAX),
        ));
    }
    let mut vertex_count = 1usize;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut levels: Vec<usize> = Vec::new();
    for stage in 0..n {
        // Current graph is B_stage on `vertex_count` vertices. Build
        // B'_stage: the same vertices (I) plus `vertex_count` fresh isolated
        // vertices (J), joined by 2^stage cyclic-shift matchings.
        let side = vertex_count;
        let mut next_edges = edges.clone();
        let mut next_levels = levels.clone();
        for shift in 0..(1usize << stage) {
            for i in 0..side {
                next_edges.push((i, side + (i + shift) % side));
                next_levels.push(stage + 1);
            }
        }
        // B_{stage+1} = B'_stage together with an untouched copy of B_stage.
        let offset = 2 * side;
        for (k, &(u, v)) in edges.iter().enumerate() {
            next_edges.push((u + offset, v + offset));
            next_levels.push(levels[k]);
        }
        vertex_count = 3 * side;
        edges = next_edges;
        levels = next_levels;
    }
    let g = Graph::new(vertex_count, edges).expect("zebra construction is simple");
    Ok((g, levels))
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n > 64 {
        return Err(out_of_range(
            "complete",
            format!("n={} exceeds desk scale", n),
        ));
    }
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    Ok(Graph::new(n, edges).unwrap())
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, FamilyError> {
    if a.saturating_mul(b) > 20_000 {
        return Err(out_of_range(
            "complete-bipartite",
            "side product exceeds desk scale",
        ));
    }
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
    Ok(Graph::new(a + b, edges).unwrap())
}

/// The star K_{1,r}; vertex 0 is the center.
pub fn star(r: usize) -> Result<Graph, FamilyError> {
    if r > 10_000 {
        return Err(out_of_range("star", "r exceeds desk scale"));
    }
    Ok(Graph::new(r + 1, (1..=r).map(|i| (0, i))).unwrap())
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(out_of_range("cycle", "cycle needs at least 3 vertices"));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n == 0 {
        return Err(out_of_range("path", "path needs at least 1 vertex"));
    }
    Ok(Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap())
}

/// The Petersen graph: vertices are the 2-subsets of {0..4} in lexicographic
/// order, adjacent iff disjoint. 3-regular, 15 edges, chromatic index 4.
pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for a in 0..5 {
        for b in (a + 1)..5 {
            pairs.push((a, b));
        }
    }
    let mut edges = Vec::new();
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::new(10, edges).unwrap()
}

/// Uniform random recursive tree on `n` vertices: vertex i attaches to a
/// uniformly random earlier vertex. Deterministic for a fixed seed.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, FamilyError> {
    if n == 0 || n > 10_000 {
        return Err(out_of_range("random-tree", "need 1..=10000 vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Ok(Graph::new(n, edges).unwrap())
}

/// Random graph with exactly `m` edges on `n` vertices, sampled without
/// replacement. Deterministic for a fixed seed.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph, FamilyError> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if m > max_edges {
        return Err(out_of_range(
            "random-graph",
            format!("{} edges exceed C({},2)", m, n),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    // Partial Fisher-Yates: the first m slots are a uniform sample.
    for i in 0..m {
        let j = rng.random_range(i..all.len());
        all.swap(i, j);
    }
    all.truncate(m);
    Ok(Graph::new(n, all).unwrap())
}

/// Family selector used by the CLI and the Python bindings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Zebra { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Star { r: usize },
    Cycle { n: usize },
    Path { n: usize },
    Petersen,
    RandomTree { n: usize, seed: u64 },
    RandomGraph { n: usize, m: usize, seed: u64 },
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    match *spec {
        FamilySpec::Zebra { n } => zebra(n),
        FamilySpec::Complete { n } => complete(n),
        FamilySpec::CompleteBipartite { a, b } => complete_bipartite(a, b),
        FamilySpec::Star { r } => star(r),
        FamilySpec::Cycle { n } => cycle(n),
        FamilySpec::Path { n } => path(n),
        FamilySpec::Petersen => Ok(petersen()),
        FamilySpec::RandomTree { n, seed } => random_tree(n, seed),
        FamilySpec::RandomGraph { n, m, seed } => random_graph(n, m, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zebra_counts_and_degree_sets() {
        for n in 0..=ZEBRA_MAX {
            let g = zebra(n).unwrap();
            assert_eq!(
                g.vertex_count(),
                3usize.pow(n as u32),
                "vertices of zebra({})",
                n
            );
            let expected: Vec<usize> = (0..(1usize << n)).collect();
            assert_eq!(
                g.degree_profile().degree_set(),
                expected,
                "degree set of zebra({})",
                n
            );
        }
        // Edge counts follow E_{n+1} = 2 E_n + 6^n.
        let counts: Vec<usize> = (0..=4).map(|n| zebra(n).unwrap().edge_count()).collect();
        assert_eq!(counts, vec![0, 1, 8, 52, 320]);
        assert!(zebra(5).is_err());
    }

    #[test]
    fn zebra_level_parts_are_regular() {
        for n in 1..=3 {
            let (g, levels) = zebra_with_levels(n).unwrap();
            for level in 1..=n {
                let part: Vec<usize> = (0..g.edge_count())
                    .filter(|&e| levels[e] == level)
                    .collect();
                let r = g.edge_induced_regularity(&part).unwrap();
                assert_eq!(r, Some(1 << (level - 1)), "level {} of zebra({})", level, n);
            }
        }
    }

    #[test]
    fn zebra_recursion_matches_explicit_union() {
        // B_{n+1} is B'_n plus a disjoint untouched copy of B_n.
        let b2 = zebra(2).unwrap();
        let b3 = zebra(3).unwrap();
        let prefix = Graph::new(
            2 * b2.vertex_count(),
            b3.edges()
                .iter()
                .copied()
                .take_while(|&(u, v)| u < 18 && v < 18),
        )
        .unwrap();
        let rebuilt = prefix.disjoint_union(&b2);
        assert_eq!(rebuilt, b3);
    }

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.is_regular(), Some(3));
        assert!(g.connected_components().len() == 1);
    }

    #[test]
    fn random_tree_is_deterministic_tree() {
        let a = random_tree(10, 7).unwrap();
        let b = random_tree(10, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 9);
        assert_eq!(a.connected_components().len(), 1);
        let c = random_tree(10, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_graph_has_requested_size() {
        let g = random_graph(6, 9, 3).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(random_graph(6, 9, 3).unwrap(), g);
    }
}
