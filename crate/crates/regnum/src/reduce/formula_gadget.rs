//! Compiles a cubic (2,3) monotone formula into its graph: one vertex per
//! variable, one fragment per clause, one edge per occurrence. The graph's
//! degree set is {3, 6}, and it splits into two 3-regular parts exactly when
//! the formula is NAE-satisfiable; the two directions of that equivalence
//! are made executable by the certificate translators below.

use super::fragments::{gadget_hc, gadget_ic, Fragment};
use super::{EdgeRole, GadgetGraph, ReduceError, VertexRole};
use crate::balance::{BalanceProblem, HalfConstrainedEdge, VertexQuota};
use crate::budget::Budget;
use crate::graph::Graph;
use crate::partition::{verify_partition, RegularPartition};
use crate::sat::{check_cubic23, MonotoneFormula};

/// Builds the formula graph. Per clause, the external hub-to-variable edges
/// come first (in clause literal order) followed by the fragment interior,
/// so certificates stay aligned with occurrence order.
pub fn gadget_formula(f: &MonotoneFormula) -> Result<GadgetGraph, ReduceError> {
    check_cubic23(f)?;
    let var_count = f.variable_count();
    let mut vertex_roles: Vec<VertexRole> = (0..var_count)
        .map(|var| VertexRole::Variable { var })
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_roles: Vec<EdgeRole> = Vec::new();
    let mut next_vertex = var_count;

    for (clause_index, clause) in f.clauses().iter().enumerate() {
        let fragment: Fragment = if clause.len() == 3 {
            gadget_hc()
        } else {
            gadget_ic()
        };
        let base = next_vertex;
        next_vertex += fragment.vertex_count;
        let hub = base; // fragment vertex 0 is the clause hub

        for fv in 0..fragment.vertex_count {
            let role = if fv == 0 {
                VertexRole::ClauseHub {
                    clause: clause_index,
                }
            } else if let Some(antenna) = fragment
                .antenna_spans
                .iter()
                .position(|&(start, len)| fv >= start && fv < start + len)
            {
                let (start, _) = fragment.antenna_spans[antenna];
                VertexRole::AntennaInternal {
                    clause: clause_index,
                    antenna,
                    pos: fv - start,
                }
            } else {
                VertexRole::BalanceCore {
                    clause: clause_index,
                }
            };
            vertex_roles.push(role);
        }

        for (slot, &var) in clause.iter().enumerate() {
            debug_assert_eq!(fragment.stubs[slot], 0, "stubs sit on the hub");
            edges.push((hub, var));
            edge_roles.push(EdgeRole::ClauseExternal {
                clause: clause_index,
                var,
            });
        }
        for &(a, b) in &fragment.edges {
            edges.push((base + a, base + b));
            edge_roles.push(EdgeRole::FragmentInternal {
                clause: clause_index,
            });
        }
    }

    let graph = Graph::new(next_vertex, edges)?;
    for var in 0..var_count {
        assert_eq!(graph.degree(var), 3, "variable vertex degree contract");
    }
    for v in 0..graph.vertex_count() {
        let d = graph.degree(v);
        assert!(d == 3 || d == 6, "formula gadget degrees are 3 or 6");
    }
    Ok(GadgetGraph::new(graph, vertex_roles, edge_roles))
}

fn balance_problem_for(gadget: &GadgetGraph) -> BalanceProblem {
    let g = &gadget.graph;
    let quotas: Vec<VertexQuota> = (0..g.vertex_count())
        .map(|v| match g.degree(v) {
            3 => VertexQuota::Monochromatic,
            6 => VertexQuota::Balanced { per_label: 3 },
            _ => unreachable!("builder enforces degrees 3 and 6"),
        })
        .collect();
    let edges: Vec<HalfConstrainedEdge> = g
        .edges()
        .iter()
        .map(|&(a, b)| HalfConstrainedEdge::full(a, b))
        .collect();
    BalanceProblem::new(g.vertex_count(), edges, quotas).expect("degrees checked")
}

/// Turns an NAE model into a two-part 3-regular certificate: every edge at
/// variable `x` goes to part 0 iff the model sets `x` true, and each
/// fragment interior is completed to match its external pattern.
pub fn partition_from_assignment(
    f: &MonotoneFormula,
    assignment: &[bool],
    gadget: &GadgetGraph,
    budget: Budget,
) -> Result<RegularPartition, ReduceError> {
    if !f.nae_eval(assignment) {
        return Err(ReduceError::NotAModel);
    }
    let problem = balance_problem_for(gadget);
    let seeds: Vec<(usize, u8)> = gadget
        .edge_roles
        .iter()
        .enumerate()
        .filter_map(|(e, role)| match role {
            EdgeRole::ClauseExternal { var, .. } => Some((e, if assignment[*var] { 0 } else { 1 })),
            _ => None,
        })
        .collect();
    let (labels, _) = problem.solve_with_seeds(&seeds, budget)?;
    let labels = labels.ok_or(ReduceError::CompletionFailed)?;
    let mut parts = vec![Vec::new(), Vec::new()];
    for (e, &l) in labels.iter().enumerate() {
        parts[l as usize].push(e);
    }
    let partition = RegularPartition::verified(&gadget.graph, parts)?;
    debug_assert_eq!(partition.regularities, vec![3, 3]);
    Ok(partition)
}

/// Reads an NAE model back out of a two-part 3-regular certificate: each
/// variable vertex is necessarily monochromatic, and its part is its truth
/// value (part 0 = true).
pub fn assignment_from_partition(
    f: &MonotoneFormula,
    gadget: &GadgetGraph,
    partition: &RegularPartition,
) -> Result<Vec<bool>, ReduceError> {
    let regularities = verify_partition(&gadget.graph, &partition.parts)?;
    if partition.parts.len() != 2 || regularities != vec![3, 3] {
        return Err(ReduceError::NotTwoThreeRegularParts {
            parts: partition.parts.len(),
            regularities,
        });
    }
    let mut owner = vec![0usize; gadget.graph.edge_count()];
    for (p, part) in partition.parts.iter().enumerate() {
        for &e in part {
            owner[e] = p;
        }
    }
    let mut assignment: Vec<Option<bool>> = vec![None; f.variable_count()];
    for (e, role) in gadget.edge_roles.iter().enumerate() {
        if let EdgeRole::ClauseExternal { var, .. } = role {
            let value = owner[e] == 0;
            match assignment[*var] {
                None => assignment[*var] = Some(value),
                // A verified 3-regular part pins every degree-3 vertex to
                // one part, so a mismatch means the certificate is foreign.
                Some(prev) if prev != value => {
                    return Err(ReduceError::NotTwoThreeRegularParts {
                        parts: 2,
                        regularities,
                    })
                }
                _ => {}
            }
        }
    }
    let assignment: Vec<bool> = assignment
        .into_iter()
        .map(|a| a.expect("every variable has occurrences"))
        .collect();
    if !f.nae_eval(&assignment) {
        return Err(ReduceError::NotAModel);
    }
    Ok(assignment)
}
