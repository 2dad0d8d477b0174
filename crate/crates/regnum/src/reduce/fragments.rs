//! Clause fragments for the formula gadget, assembled from antennas.
//!
//! An antenna is a connected piece whose internal vertices all have degree 3
//! counting its pendant edges; under any 2-labeling that keeps degree-3
//! vertices monochromatic, all of its edges (pendants included) carry one
//! common label. Clause fragments combine antennas around degree-6 hubs,
//! whose 3/3 label split turns antenna rigidity into the not-all-equal
//! constraint on the fragment's external stubs.
//!
//! The normative contract is behavioral, not shape-based: the exact set of
//! external label patterns a fragment admits, computed by exhaustive
//! enumeration in [`verify_fragment_contract`].

use super::ReduceError;
use crate::balance::{BalanceProblem, HalfConstrainedEdge, Label, VertexQuota};
use crate::budget::Budget;
use std::collections::BTreeSet;

/// An antenna shape: internal edges plus the internal sources of its
/// pendant edges (targets are supplied at graft time).
#[derive(Debug, Clone)]
pub struct Antenna {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub pendant_sources: Vec<usize>,
}

/// The three antenna shapes by pendant count.
///
/// arity 1: a 5-vertex block, 7 internal edges, pendant at one vertex;
/// arity 2: K_4 minus an edge, pendants at the two degree-2 vertices;
/// arity 3: K_{3,2}, pendants at the three degree-2 vertices.
pub fn antenna(arity: usize) -> Result<Antenna, ReduceError> {
    match arity {
        1 => Ok(Antenna {
            vertex_count: 5,
            edges: vec![(0, 1), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)],
            pendant_sources: vec![0],
        }),
        2 => Ok(Antenna {
            vertex_count: 4,
            edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            pendant_sources: vec![2, 3],
        }),
        3 => Ok(Antenna {
            vertex_count: 5,
            edges: vec![(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)],
            pendant_sources: vec![0, 1, 2],
        }),
        _ => Err(ReduceError::BadAntennaArity { arity }),
    }
}

/// A gadget fragment: internal vertices and edges plus ordered external
/// stubs (half-edges at a named internal vertex). Antenna spans are kept so
/// embedders can tag provenance.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Attachment vertex of each external stub, in slot order.
    pub stubs: Vec<usize>,
    /// (first vertex, vertex count) of each grafted antenna.
    pub antenna_spans: Vec<(usize, usize)>,
}

impl Fragment {
    pub fn empty(vertex_count: usize) -> Self {
        Fragment {
            vertex_count,
            edges: Vec::new(),
            stubs: Vec::new(),
            antenna_spans: Vec::new(),
        }
    }

    /// Instantiates an antenna and wires its pendant edges to the given
    /// internal target vertices, one per pendant.
    pub fn graft_antenna(&mut self, arity: usize, targets: &[usize]) {
        let shape = antenna(arity).expect("arity fixed by builders");
        assert_eq!(targets.len(), arity);
        let base = self.vertex_count;
        self.vertex_count += shape.vertex_count;
        self.antenna_spans.push((base, shape.vertex_count));
        for &(a, b) in &shape.edges {
            self.edges.push((base + a, base + b));
        }
        for (source, &target) in shape.pendant_sources.iter().zip(targets) {
            self.edges.push((base + source, target));
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        let internal = self
            .edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count();
        internal + self.stubs.iter().filter(|&&s| s == v).count()
    }
}

/// The 3-clause fragment. The clause hub takes the three external stubs plus
/// three antenna pendants (two from a 3-antenna, one from a 2-antenna); the
/// spare pendants of both land on a balance core that also absorbs two more
/// doubled-up 2-antennas. Admissible external patterns: exactly those with
/// both labels present.
pub fn gadget_hc() -> Fragment {
    let mut fragment = Fragment::empty(2);
    let hub = 0;
    let core = 1;
    fragment.graft_antenna(3, &[hub, hub, core]);
    fragment.graft_antenna(2, &[hub, core]);
    fragment.graft_antenna(2, &[core, core]);
    fragment.graft_antenna(2, &[core, core]);
    fragment.stubs = vec![hub, hub, hub];
    debug_assert_eq!(fragment.degree(hub), 6);
    debug_assert_eq!(fragment.degree(core), 6);
    fragment
}

/// The 2-clause fragment: the clause hub takes the two external stubs plus
/// two doubled-up 2-antennas. Admissible external patterns: the two mixed
/// ones.
pub fn gadget_ic() -> Fragment {
    let mut fragment = Fragment::empty(1);
    let hub = 0;
    fragment.graft_antenna(2, &[hub, hub]);
    fragment.graft_antenna(2, &[hub, hub]);
    fragment.stubs = vec![hub, hub];
    debug_assert_eq!(fragment.degree(hub), 6);
    fragment
}

/// Exhaustively enumerates 2-labelings of the fragment's edges and stubs
/// under the local constraints (degree-3 vertices monochromatic, degree-6
/// vertices split 3/3) and returns the exact set of stub label patterns.
pub fn verify_fragment_contract(
    fragment: &Fragment,
    budget: Budget,
) -> Result<BTreeSet<Vec<Label>>, ReduceError> {
    let problem = fragment_balance_problem(fragment)?;
    let stub_ids: Vec<usize> =
        (fragment.edges.len()..fragment.edges.len() + fragment.stubs.len()).collect();
    let (patterns, _) = problem.enumerate_patterns(&stub_ids, budget)?;
    Ok(patterns)
}

fn fragment_balance_problem(fragment: &Fragment) -> Result<BalanceProblem, ReduceError> {
    let mut quotas = Vec::with_capacity(fragment.vertex_count);
    for v in 0..fragment.vertex_count {
        match fragment.degree(v) {
            3 => quotas.push(VertexQuota::Monochromatic),
            6 => quotas.push(VertexQuota::Balanced { per_label: 3 }),
            degree => return Err(ReduceError::FragmentDegree { vertex: v, degree }),
        }
    }
    let edges: Vec<HalfConstrainedEdge> = fragment
        .edges
        .iter()
        .map(|&(a, b)| HalfConstrainedEdge::full(a, b))
        .chain(fragment.stubs.iter().map(|&s| HalfConstrainedEdge::stub(s)))
        .collect();
    Ok(BalanceProblem::new(fragment.vertex_count, edges, quotas)?)
}

/// All external patterns over `arity` stubs that contain both labels.
pub fn mixed_patterns(arity: usize) -> BTreeSet<Vec<Label>> {
    let mut out = BTreeSet::new();
    for mask in 1..(1u32 << arity) - 1 {
        out.insert((0..arity).map(|i| ((mask >> i) & 1) as Label).collect());
    }
    out
}
