//! Two-label edge labeling under local regularity quotas.
//!
//! A graph whose degree set is {r, 2r} admits a partition into two r-regular
//! parts exactly when its edges can be 2-labeled so that every degree-r
//! vertex is monochromatic and every degree-2r vertex carries exactly r
//! edges of each label. This module is the search engine for that labeling
//! problem; it also handles open-ended "stub" edges with a single real
//! endpoint, which is how gadget fragments expose their external pattern.

use crate::budget::{Budget, BudgetExceeded, SearchStats};
use std::collections::BTreeSet;
use thiserror::Error;

pub type Label = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexQuota {
    /// All incident edges must take one common label.
    Monochromatic,
    /// Exactly `per_label` incident edges of each label.
    Balanced { per_label: usize },
    /// No constraint (used for probe vertices in fragment tests).
    Free,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BalanceError {
    #[error("vertex {vertex} has degree {degree}, expected {expected} for its quota")]
    QuotaDegreeMismatch {
        vertex: usize,
        degree: usize,
        expected: String,
    },
    #[error("seed conflicts with propagation at edge {edge}")]
    SeedConflict { edge: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// An edge with up to two constrained endpoints. Stubs leave one side `None`.
#[derive(Debug, Clone, Copy)]
pub struct HalfConstrainedEdge {
    pub ends: [Option<usize>; 2],
}

impl HalfConstrainedEdge {
    pub fn full(u: usize, v: usize) -> Self {
        HalfConstrainedEdge {
            ends: [Some(u), Some(v)],
        }
    }

    pub fn stub(v: usize) -> Self {
        HalfConstrainedEdge {
            ends: [Some(v), None],
        }
    }
}

pub struct BalanceProblem {
    edges: Vec<HalfConstrainedEdge>,
    quotas: Vec<VertexQuota>,
}

impl BalanceProblem {
    /// Validates that each vertex's quota is consistent with its degree
    /// (counting stubs).
    pub fn new(
        vertex_count: usize,
        edges: Vec<HalfConstrainedEdge>,
        quotas: Vec<VertexQuota>,
    ) -> Result<Self, BalanceError> {
        assert_eq!(quotas.len(), vertex_count);
        let mut degree = vec![0usize; vertex_count];
        for e in &edges {
            for end in e.ends.iter().flatten() {
                degree[*end] += 1;
            }
        }
        for (v, quota) in quotas.iter().enumerate() {
            if let VertexQuota::Balanced { per_label } = quota {
                if degree[v] != 2 * per_label {
                    return Err(BalanceError::QuotaDegreeMismatch {
                        vertex: v,
                        degree: degree[v],
                        expected: format!("{}", 2 * per_label),
                    });
                }
            }
        }
        Ok(BalanceProblem { edges, quotas })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// First labeling extending `seeds`, or `None` after exhaustive search.
    pub fn solve_with_seeds(
        &self,
        seeds: &[(usize, Label)],
        budget: Budget,
    ) -> Result<(Option<Vec<Label>>, SearchStats), BalanceError> {
        let mut engine = Engine::new(self);
        for &(e, l) in seeds {
            if !engine.assign_and_propagate(e, l) {
                return Ok((None, engine.stats));
            }
        }
        let found = engine.dfs_first(budget)?;
        let labels = found.then(|| engine.labels());
        Ok((labels, engine.stats))
    }

    /// Decides satisfiability, fixing edge 0 to label 0 to kill the global
    /// label-swap symmetry. Only valid when the caller treats the two labels
    /// as interchangeable.
    pub fn solve_up_to_complement(
        &self,
        budget: Budget,
    ) -> Result<(Option<Vec<Label>>, SearchStats), BalanceError> {
        if self.edges.is_empty() {
            return Ok((Some(Vec::new()), SearchStats::default()));
        }
        self.solve_with_seeds(&[(0, 0)], budget)
    }

    /// Enumerates every labeling and collects the label tuple observed on
    /// `pattern_edges`. Exhaustive, so the result is the exact achievable set.
    pub fn enumerate_patterns(
        &self,
        pattern_edges: &[usize],
        budget: Budget,
    ) -> Result<(BTreeSet<Vec<Label>>, SearchStats), BalanceError> {
        let mut engine = Engine::new(self);
        let mut patterns = BTreeSet::new();
        engine.dfs_enumerate(pattern_edges, &mut patterns, budget)?;
        Ok((patterns, engine.stats))
    }
}

struct Engine<'p> {
    problem: &'p BalanceProblem,
    label: Vec<i8>,
    count: Vec<[usize; 2]>,
    unassigned: Vec<usize>,
    incident: Vec<Vec<usize>>,
    trail: Vec<usize>,
    stats: SearchStats,
}

impl<'p> Engine<'p> {
    fn new(problem: &'p BalanceProblem) -> Self {
        let n = problem.quotas.len();
        let mut incident = vec![Vec::new(); n];
        let mut unassigned = vec![0usize; n];
        for (e, edge) in problem.edges.iter().enumerate() {
            for end in edge.ends.iter().flatten() {
                incident[*end].push(e);
                unassigned[*end] += 1;
            }
        }
        Engine {
            problem,
            label: vec![-1; problem.edges.len()],
            count: vec![[0, 0]; n],
            unassigned,
            incident,
            trail: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn labels(&self) -> Vec<Label> {
        self.label.iter().map(|&l| l as Label).collect()
    }

    /// Assigns one edge and runs forced moves to fixpoint. Returns false on
    /// conflict. Each edge is applied to both endpoints before any check, so
    /// the trail always describes fully applied edges and undo stays exact.
    fn assign_and_propagate(&mut self, e: usize, l: Label) -> bool {
        let mut queue = vec![(e, l)];
        while let Some((e, l)) = queue.pop() {
            match self.label[e] {
                x if x == l as i8 => continue,
                -1 => {}
                _ => return false,
            }
            self.label[e] = l as i8;
            self.trail.push(e);
            self.stats.propagations += 1;
            for end in self.problem.edges[e].ends.iter().flatten() {
                let v = *end;
                self.count[v][l as usize] += 1;
                self.unassigned[v] -= 1;
            }
            for end in self.problem.edges[e].ends.iter().flatten() {
                let v = *end;
                match self.problem.quotas[v] {
                    VertexQuota::Free => {}
                    VertexQuota::Monochromatic => {
                        if self.count[v][1 - l as usize] > 0 {
                            return false;
                        }
                        for &f in &self.incident[v] {
                            if self.label[f] < 0 {
                                queue.push((f, l));
                            }
                        }
                    }
                    VertexQuota::Balanced { per_label } => {
                        if self.count[v][l as usize] > per_label {
                            return false;
                        }
                        if self.count[v][l as usize] == per_label {
                            for &f in &self.incident[v] {
                                if self.label[f] < 0 {
                                    queue.push((f, 1 - l));
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            let l = self.label[e] as usize;
            self.label[e] = -1;
            for end in self.problem.edges[e].ends.iter().flatten() {
                self.count[*end][l] -= 1;
                self.unassigned[*end] += 1;
            }
        }
    }

    fn next_unassigned(&self) -> Option<usize> {
        self.label.iter().position(|&l| l < 0)
    }

    fn dfs_first(&mut self, budget: Budget) -> Result<bool, BalanceError> {
        self.stats.charge_node(budget)?;
        let Some(e) = self.next_unassigned() else {
            return Ok(true);
        };
        for l in 0..2u8 {
            let mark = self.trail.len();
            if self.assign_and_propagate(e, l) && self.dfs_first(budget)? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }

    fn dfs_enumerate(
        &mut self,
        pattern_edges: &[usize],
        patterns: &mut BTreeSet<Vec<Label>>,
        budget: Budget,
    ) -> Result<(), BalanceError> {
        self.stats.charge_node(budget)?;
        let Some(e) = self.next_unassigned() else {
            patterns.insert(
                pattern_edges
                    .iter()
                    .map(|&e| self.label[e] as Label)
                    .collect(),
            );
            return Ok(());
        };
        for l in 0..2u8 {
            let mark = self.trail.len();
            if self.assign_and_propagate(e, l) {
                self.dfs_enumerate(pattern_edges, patterns, budget)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quotas_for(degrees: &[usize], r: usize) -> Vec<VertexQuota> {
        degrees
            .iter()
            .map(|&d| {
                if d == 0 {
                    VertexQuota::Free
                } else if d == r {
                    VertexQuota::Monochromatic
                } else {
                    assert_eq!(d, 2 * r);
                    VertexQuota::Balanced { per_label: r }
                }
            })
            .collect()
    }

    #[test]
    fn path_splits_into_two_matchings() {
        // P_3: degree set {1,2}, r=1: middle vertex balanced 1/1.
        let edges = vec![
            HalfConstrainedEdge::full(0, 1),
            HalfConstrainedEdge::full(1, 2),
        ];
        let quotas = quotas_for(&[1, 2, 1], 1);
        let p = BalanceProblem::new(3, edges, quotas).unwrap();
        let (sol, _) = p.solve_up_to_complement(Budget::default()).unwrap();
        let labels = sol.unwrap();
        assert_ne!(labels[0], labels[1]);
    }

    #[test]
    fn triangle_with_r1_is_infeasible() {
        // C_3 with r=1: every vertex has degree 2 = 2r, so all are balanced
        // 1/1, which would be a 2-edge-coloring of an odd cycle.
        let edges = vec![
            HalfConstrainedEdge::full(0, 1),
            HalfConstrainedEdge::full(1, 2),
            HalfConstrainedEdge::full(2, 0),
        ];
        let quotas = quotas_for(&[2, 2, 2], 1);
        let p = BalanceProblem::new(3, edges, quotas).unwrap();
        let (sol, _) = p.solve_up_to_complement(Budget::default()).unwrap();
        assert!(sol.is_none());
    }

    #[test]
    fn stub_patterns_of_a_shared_pair() {
        // One monochromatic vertex with two stubs: both stubs one label.
        let edges = vec![HalfConstrainedEdge::stub(0), HalfConstrainedEdge::stub(0)];
        let quotas = vec![VertexQuota::Monochromatic];
        let p = BalanceProblem::new(1, edges, quotas).unwrap();
        let (patterns, _) = p.enumerate_patterns(&[0, 1], Budget::default()).unwrap();
        let expected: BTreeSet<Vec<Label>> = [vec![0, 0], vec![1, 1]].into_iter().collect();
        assert_eq!(patterns, expected);
    }

    #[test]
    fn quota_degree_mismatch_is_rejected() {
        let edges = vec![HalfConstrainedEdge::full(0, 1)];
        let quotas = vec![VertexQuota::Balanced { per_label: 3 }, VertexQuota::Free];
        assert!(BalanceProblem::new(2, edges, quotas).is_err());
    }
}
