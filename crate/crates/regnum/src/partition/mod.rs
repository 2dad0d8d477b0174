//! Regular edge partitions: certificates, verification, and exact solvers
//! for the regular number.

mod solver;

pub use solver::MAX_PARTS;

use crate::balance::{BalanceProblem, HalfConstrainedEdge, VertexQuota};
use crate::budget::{Budget, BudgetExceeded, SearchStats};
use crate::coloring;
use crate::graph::{EdgeIndex, Graph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A verified partition of a graph's edge set into regular parts.
///
/// Parts are edge-index sets keyed to the owner graph's edge order; the
/// struct does not hold the graph itself, so every consumer re-verifies
/// against the graph it pairs the certificate with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularPartition {
    pub parts: Vec<Vec<EdgeIndex>>,
    pub regularities: Vec<usize>,
}

impl RegularPartition {
    /// Checks `parts` against `graph` and records the per-part regularities.
    pub fn verified(graph: &Graph, parts: Vec<Vec<EdgeIndex>>) -> Result<Self, PartitionViolation> {
        let regularities = verify_partition(graph, &parts)?;
        let mut parts = parts;
        for part in &mut parts {
            part.sort_unstable();
        }
        Ok(RegularPartition {
            parts,
            regularities,
        })
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("edge {edge} appears in parts {first} and {second}")]
    OverlappingEdge {
        edge: EdgeIndex,
        first: usize,
        second: usize,
    },
    #[error("edge {edge} is not covered by any part")]
    UncoveredEdge { edge: EdgeIndex },
    #[error("part {part} references edge {edge} outside the graph")]
    EdgeOutOfRange { part: usize, edge: EdgeIndex },
    #[error("part {part} is irregular: vertex {vertex} has {actual} part-edges, another vertex has {expected}")]
    IrregularPart {
        part: usize,
        vertex: usize,
        expected: usize,
        actual: usize,
    },
}

/// Checks the regular-partition invariants and returns the regularity of
/// each part. An edgeless graph admits exactly the empty partition.
pub fn verify_partition(
    graph: &Graph,
    parts: &[Vec<EdgeIndex>],
) -> Result<Vec<usize>, PartitionViolation> {
    let m = graph.edge_count();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(PartitionViolation::EmptyPart { part: p });
        }
        for &e in part {
            if e >= m {
                return Err(PartitionViolation::EdgeOutOfRange { part: p, edge: e });
            }
            if let Some(first) = owner[e] {
                return Err(PartitionViolation::OverlappingEdge {
                    edge: e,
                    first,
                    second: p,
                });
            }
            owner[e] = Some(p);
        }
    }
    if let Some(edge) = owner.iter().position(|o| o.is_none()) {
        return Err(PartitionViolation::UncoveredEdge { edge });
    }
    let mut regularities = Vec::with_capacity(parts.len());
    for (p, part) in parts.iter().enumerate() {
        let mut count = std::collections::BTreeMap::new();
        for &e in part {
            let (u, v) = graph.endpoints(e);
            *count.entry(u).or_insert(0usize) += 1;
            *count.entry(v).or_insert(0usize) += 1;
        }
        let mut entries = count.iter();
        let (&v0, &r) = entries.next().expect("part is nonempty");
        let _ = v0;
        for (&vertex, &actual) in entries {
            if actual != r {
                return Err(PartitionViolation::IrregularPart {
                    part: p,
                    vertex,
                    expected: r,
                    actual,
                });
            }
        }
        regularities.push(r);
    }
    Ok(regularities)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    BranchAndBound,
    FastPath,
}

/// Result of an exact solve: the regular number with a verifying certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub value: usize,
    pub certificate: RegularPartition,
    pub stats: SearchStats,
    pub method: Method,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("{edges} edges exceed the brute-force cap of {max}")]
    TooLargeForBruteForce { edges: usize, max: usize },
    #[error("budget exhausted: reg >= {lower} proven, best certificate has {upper:?} parts")]
    Exhausted {
        lower: usize,
        upper: Option<usize>,
        certificate: Option<RegularPartition>,
        stats: SearchStats,
    },
    #[error("solver supports at most {max} parts, needed {t}")]
    TooManyParts { t: usize, max: usize },
    #[error("degree set {0:?} does not have the shape {{r, 2r}}")]
    NotBivalent(Vec<usize>),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

pub const BRUTE_FORCE_MAX_EDGES: usize = 12;

/// Exact regular number by enumerating every set partition of the edge set
/// (restricted-growth strings), keeping the best all-regular one. The
/// independent oracle for the search solver.
pub fn reg_bruteforce(g: &Graph) -> Result<SolveReport, SolveError> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_MAX_EDGES {
        return Err(SolveError::TooLargeForBruteForce {
            edges: m,
            max: BRUTE_FORCE_MAX_EDGES,
        });
    }
    if m == 0 {
        return Ok(SolveReport {
            value: 0,
            certificate: RegularPartition {
                parts: Vec::new(),
                regularities: Vec::new(),
            },
            stats: SearchStats::default(),
            method: Method::Oracle,
        });
    }
    let mut labels = vec![0usize; m];
    let mut best: Option<Vec<usize>> = None;
    let mut best_parts = m + 1;
    let mut stats = SearchStats::default();
    enumerate_rgs(g, &mut labels, 1, &mut best, &mut best_parts, &mut stats);
    let labels = best.expect("every graph has the all-singletons partition");
    let mut parts = vec![Vec::new(); best_parts];
    for (e, &p) in labels.iter().enumerate() {
        parts[p].push(e);
    }
    let certificate = RegularPartition::verified(g, parts).expect("oracle winner must verify");
    Ok(SolveReport {
        value: best_parts,
        certificate,
        stats,
        method: Method::Oracle,
    })
}

fn enumerate_rgs(
    g: &Graph,
    labels: &mut Vec<usize>,
    filled: usize,
    best: &mut Option<Vec<usize>>,
    best_parts: &mut usize,
    stats: &mut SearchStats,
) {
    let used = labels[..filled].iter().copied().max().unwrap_or(0) + 1;
    if used >= *best_parts {
        return;
    }
    if filled == labels.len() {
        stats.nodes += 1;
        if all_parts_regular(g, labels, used) {
            *best = Some(labels.clone());
            *best_parts = used;
        }
        return;
    }
    for p in 0..=used.min(labels.len() - 1) {
        labels[filled] = p;
        enumerate_rgs(g, labels, filled + 1, best, best_parts, stats);
    }
    labels[filled] = 0;
}

fn all_parts_regular(g: &Graph, labels: &[usize], used: usize) -> bool {
    for p in 0..used {
        let mut count = std::collections::BTreeMap::new();
        for (e, &l) in labels.iter().enumerate() {
            if l == p {
                let (u, v) = g.endpoints(e);
                *count.entry(u).or_insert(0usize) += 1;
                *count.entry(v).or_insert(0usize) += 1;
            }
        }
        let mut values = count.values();
        let Some(&r) = values.next() else {
            return false;
        };
        if !values.all(|&c| c == r) {
            return false;
        }
    }
    true
}

pub enum Decision {
    /// Satisfiable, with a verifying certificate of at most `t` parts.
    Yes(RegularPartition),
    /// Exhaustively refuted.
    No,
}

/// Decides whether the edge set splits into at most `t` regular parts.
pub fn reg_at_most(
    g: &Graph,
    t: usize,
    budget: Budget,
) -> Result<(Decision, SearchStats), SolveError> {
    assert!(t >= 1, "part bound must be positive");
    let m = g.edge_count();
    if m == 0 {
        return Ok((
            Decision::Yes(RegularPartition {
                parts: Vec::new(),
                regularities: Vec::new(),
            }),
            SearchStats::default(),
        ));
    }
    let effective = t.min(m);
    if effective > MAX_PARTS {
        return Err(SolveError::TooManyParts { t, max: MAX_PARTS });
    }
    let (outcome, stats) = solver::search_at_most(g, effective, budget)?;
    let decision = match outcome {
        solver::AtMostOutcome::Yes(parts) => {
            Decision::Yes(RegularPartition::verified(g, parts).expect("solver output must verify"))
        }
        solver::AtMostOutcome::No => Decision::No,
    };
    Ok((decision, stats))
}

/// Exact regular number by iterative deepening on the part count.
///
/// Lower bounds come only from exhausted searches: lb = 0 for edgeless,
/// 1 when the whole edge set is regular, else 2, then +1 per refuted level.
/// On budget exhaustion the error carries the proven lower bound and a
/// verified fallback certificate from a Δ+1 edge coloring.
pub fn reg_exact(g: &Graph, budget: Budget) -> Result<SolveReport, SolveError> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(SolveReport {
            value: 0,
            certificate: RegularPartition {
                parts: Vec::new(),
                regularities: Vec::new(),
            },
            stats: SearchStats::default(),
            method: Method::FastPath,
        });
    }
    let all: Vec<EdgeIndex> = (0..m).collect();
    if g.edge_induced_regularity(&all).expect("nonempty").is_some() {
        let certificate = RegularPartition::verified(g, vec![all]).expect("regular whole set");
        return Ok(SolveReport {
            value: 1,
            certificate,
            stats: SearchStats::default(),
            method: Method::FastPath,
        });
    }
    let mut stats = SearchStats::default();
    let ceiling = (g.max_degree() + 1).min(m);
    let mut t = 2;
    loop {
        if t > MAX_PARTS {
            return Err(SolveError::TooManyParts { t, max: MAX_PARTS });
        }
        let remaining = Budget::new(budget.max_nodes.saturating_sub(stats.nodes).max(1));
        match solver::search_at_most(g, t, remaining) {
            Ok((solver::AtMostOutcome::Yes(parts), s)) => {
                stats.merge(s);
                let certificate =
                    RegularPartition::verified(g, parts).expect("solver output must verify");
                return Ok(SolveReport {
                    value: t,
                    certificate,
                    stats,
                    method: Method::BranchAndBound,
                });
            }
            Ok((solver::AtMostOutcome::No, s)) => {
                stats.merge(s);
                debug_assert!(t < ceiling, "search must succeed at Δ+1 parts");
                t += 1;
            }
            Err(BudgetExceeded { nodes }) => {
                stats.nodes += nodes;
                let (upper, certificate) = coloring_fallback(g);
                return Err(SolveError::Exhausted {
                    lower: t,
                    upper,
                    certificate,
                    stats,
                });
            }
        }
    }
}

/// Matching-per-color partition from the constructive Δ+1 coloring; always
/// verifies, giving a sound upper bound when search runs out of budget.
fn coloring_fallback(g: &Graph) -> (Option<usize>, Option<RegularPartition>) {
    let coloring = coloring::color_delta_plus_one(g);
    let k = coloring.color_count();
    let mut parts = vec![Vec::new(); k];
    for (e, &c) in coloring.colors().iter().enumerate() {
        parts[c].push(e);
    }
    parts.retain(|p| !p.is_empty());
    match RegularPartition::verified(g, parts) {
        Ok(cert) => (Some(cert.part_count()), Some(cert)),
        Err(_) => (None, None),
    }
}

/// Decides whether a graph whose nonzero degree set is {r, 2r} (or {2r}
/// alone) splits into two r-regular parts. Such a split exists iff the
/// edges 2-label so that every degree-r vertex is monochromatic and every
/// degree-2r vertex carries r edges of each label.
pub fn decide_reg2_bivalent(
    g: &Graph,
    budget: Budget,
) -> Result<(Option<RegularPartition>, SearchStats), SolveError> {
    let profile = g.degree_profile();
    let nonzero: Vec<usize> = profile
        .degree_set()
        .into_iter()
        .filter(|&d| d > 0)
        .collect();
    let r = match nonzero.as_slice() {
        [a, b] if *b == 2 * a => *a,
        [d] if d % 2 == 0 && *d > 0 => d / 2,
        _ => return Err(SolveError::NotBivalent(nonzero)),
    };
    let quotas: Vec<VertexQuota> = (0..g.vertex_count())
        .map(|v| match g.degree(v) {
            0 => VertexQuota::Free,
            d if d == r => VertexQuota::Monochromatic,
            _ => VertexQuota::Balanced { per_label: r },
        })
        .collect();
    let edges: Vec<HalfConstrainedEdge> = g
        .edges()
        .iter()
        .map(|&(u, v)| HalfConstrainedEdge::full(u, v))
        .collect();
    let problem =
        BalanceProblem::new(g.vertex_count(), edges, quotas).expect("degree set was checked");
    let (solution, stats) = problem
        .solve_up_to_complement(budget)
        .map_err(|e| match e {
            crate::balance::BalanceError::Budget(b) => SolveError::Budget(b),
            other => panic!("unexpected balance failure: {other}"),
        })?;
    let certificate = solution.map(|labels| {
        let mut parts = vec![Vec::new(), Vec::new()];
        for (e, &l) in labels.iter().enumerate() {
            parts[l as usize].push(e);
        }
        RegularPartition::verified(g, parts).expect("balanced labeling is a 2-part certificate")
    });
    Ok((certificate, stats))
}
