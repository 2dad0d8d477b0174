//! The 3-partition instance model and its hub gadget: one complete
//! bipartite blob per value, three shared hubs, and a per-blob bundle of 2k
//! hub edges whose split across parts mirrors the numeric partition.

use super::{EdgeRole, GadgetGraph, Hub, ReduceError, VertexRole};
use crate::graph::Graph;
use crate::partition::RegularPartition;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Target `k` plus 3n values, each strictly between k/4 and k/2, summing
/// to n*k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub k: u64,
    pub values: Vec<u64>,
}

impl ThreePartitionInstance {
    pub fn groups(&self) -> usize {
        self.values.len() / 3
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThreePartitionViolation {
    #[error("value count {len} is not a positive multiple of 3")]
    LengthNotTripleMultiple { len: usize },
    #[error("value a_{index} = {value} violates k/4 < a < k/2 for k = {k}")]
    ValueOutOfRange { index: usize, value: u64, k: u64 },
    #[error("values sum to {sum}, expected n*k = {expected}")]
    SumMismatch { sum: u64, expected: u64 },
}

/// Checks all three instance invariants; strictness is exact integer
/// arithmetic (4a > k and 2a < k).
pub fn validate_3p(inst: &ThreePartitionInstance) -> Result<(), ThreePartitionViolation> {
    let len = inst.values.len();
    if len == 0 || !len.is_multiple_of(3) {
        return Err(ThreePartitionViolation::LengthNotTripleMultiple { len });
    }
    for (index, &value) in inst.values.iter().enumerate() {
        if 4 * value <= inst.k || 2 * value >= inst.k {
            return Err(ThreePartitionViolation::ValueOutOfRange {
                index,
                value,
                k: inst.k,
            });
        }
    }
    let sum: u64 = inst.values.iter().sum();
    let expected = inst.groups() as u64 * inst.k;
    if sum != expected {
        return Err(ThreePartitionViolation::SumMismatch { sum, expected });
    }
    Ok(())
}

pub const BRUTE_FORCE_MAX_GROUPS: usize = 5;

/// Exhaustive grouping into n triples each summing to k. The value bounds
/// force every group to have exactly three elements, so only triples are
/// tried. Returns index triples.
pub fn solve_3p_bruteforce(
    inst: &ThreePartitionInstance,
) -> Result<Option<Vec<[usize; 3]>>, ReduceError> {
    validate_3p(inst)?;
    let n = inst.groups();
    if n > BRUTE_FORCE_MAX_GROUPS {
        return Err(ReduceError::InstanceTooLarge {
            n,
            max: BRUTE_FORCE_MAX_GROUPS,
        });
    }
    let mut used = vec![false; inst.values.len()];
    let mut groups = Vec::with_capacity(n);
    if fill_groups(inst, &mut used, &mut groups) {
        Ok(Some(groups))
    } else {
        Ok(None)
    }
}

fn fill_groups(
    inst: &ThreePartitionInstance,
    used: &mut Vec<bool>,
    groups: &mut Vec<[usize; 3]>,
) -> bool {
    let Some(first) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[first] = true;
    let len = inst.values.len();
    for second in (first + 1)..len {
        if used[second] {
            continue;
        }
        let partial = inst.values[first] + inst.values[second];
        if partial >= inst.k {
            continue;
        }
        used[second] = true;
        for third in (second + 1)..len {
            if used[third] || partial + inst.values[third] != inst.k {
                continue;
            }
            used[third] = true;
            groups.push([first, second, third]);
            if fill_groups(inst, used, groups) {
                return true;
            }
            groups.pop();
            used[third] = false;
        }
        used[second] = false;
    }
    used[first] = false;
    false
}

/// Builds the hub gadget: one K_{2k,2k-1} blob per value, hubs u, v, w, and
/// per blob i a bundle of 2k hub edges (2a_i to u, k-a_i to v, k-a_i to w).
/// Hubs end at degree 2kn, every other covered vertex at degree 2k; the
/// graph is connected and bipartite.
pub fn gadget_three_partition(inst: &ThreePartitionInstance) -> Result<GadgetGraph, ReduceError> {
    validate_3p(inst)?;
    let k = inst.k as usize;
    let blobs = inst.values.len();
    let n = inst.groups();
    let blob_size = 4 * k - 1;
    let hub_base = blobs * blob_size;
    let (u, v, w) = (hub_base, hub_base + 1, hub_base + 2);

    let mut vertex_roles = Vec::with_capacity(hub_base + 3);
    let mut edges = Vec::new();
    let mut edge_roles = Vec::new();
    for blob in 0..blobs {
        let base = blob * blob_size;
        let x = |i: usize| base + i;
        let y = |j: usize| base + 2 * k + j;
        for _ in 0..2 * k {
            vertex_roles.push(VertexRole::BlobX { blob });
        }
        for _ in 0..(2 * k - 1) {
            vertex_roles.push(VertexRole::BlobY { blob });
        }
        for i in 0..2 * k {
            for j in 0..(2 * k - 1) {
                edges.push((x(i), y(j)));
                edge_roles.push(EdgeRole::BlobInternal { blob });
            }
        }
        // The 2k hub edges: 2a_i to u, then k-a_i each to v and w.
        let a = inst.values[blob] as usize;
        for i in 0..2 * k {
            let (hub_vertex, hub) = if i < 2 * a {
                (u, Hub::U)
            } else if i < 2 * a + (k - a) {
                (v, Hub::V)
            } else {
                (w, Hub::W)
            };
            edges.push((x(i), hub_vertex));
            edge_roles.push(EdgeRole::HubLink { blob, hub });
        }
    }
    vertex_roles.push(VertexRole::Hub(Hub::U));
    vertex_roles.push(VertexRole::Hub(Hub::V));
    vertex_roles.push(VertexRole::Hub(Hub::W));

    let graph = Graph::new(hub_base + 3, edges)?;
    // Degree contract, checked on every build.
    for hub in [u, v, w] {
        assert_eq!(graph.degree(hub), 2 * k * n, "hub degree contract");
    }
    for vertex in 0..hub_base {
        assert_eq!(graph.degree(vertex), 2 * k, "blob degree contract");
    }
    Ok(GadgetGraph::new(graph, vertex_roles, edge_roles))
}

/// Turns a numeric grouping into the n-part certificate: part j holds every
/// edge of the blobs in group j, interior and hub bundle alike. Each part
/// comes out 2k-regular.
pub fn partition_from_3p_solution(
    inst: &ThreePartitionInstance,
    grouping: &[[usize; 3]],
    gadget: &GadgetGraph,
) -> Result<RegularPartition, ReduceError> {
    validate_3p(inst)?;
    let n = inst.groups();
    if grouping.len() != n {
        return Err(ReduceError::GroupingInvalid {
            reason: format!("expected {} groups, got {}", n, grouping.len()),
        });
    }
    let mut seen = vec![false; inst.values.len()];
    let mut blob_group = vec![0usize; inst.values.len()];
    for (j, group) in grouping.iter().enumerate() {
        let mut sum = 0;
        for &i in group {
            if i >= inst.values.len() || seen[i] {
                return Err(ReduceError::GroupingInvalid {
                    reason: format!("index {} repeated or out of range", i),
                });
            }
            seen[i] = true;
            blob_group[i] = j;
            sum += inst.values[i];
        }
        if sum != inst.k {
            return Err(ReduceError::GroupingInvalid {
                reason: format!("group {} sums to {}, expected {}", j, sum, inst.k),
            });
        }
    }
    let mut parts = vec![Vec::new(); n];
    for (e, role) in gadget.edge_roles.iter().enumerate() {
        let blob = match role {
            EdgeRole::BlobInternal { blob } => *blob,
            EdgeRole::HubLink { blob, .. } => *blob,
            _ => {
                return Err(ReduceError::GroupingInvalid {
                    reason: "gadget has non-blob edges".to_string(),
                })
            }
        };
        parts[blob_group[blob]].push(e);
    }
    let partition = RegularPartition::verified(&gadget.graph, parts)?;
    let expected = 2 * inst.k as usize;
    debug_assert!(partition.regularities.iter().all(|&r| r == expected));
    Ok(partition)
}

/// Decides reg(gadget) <= n at blob granularity: every part of a minimum
/// partition must be 2k-regular with whole blobs monochromatic, so the
/// question collapses to assigning blob values to n bins of sum k.
pub fn blob_decide_3p(inst: &ThreePartitionInstance) -> Result<bool, ReduceError> {
    validate_3p(inst)?;
    let n = inst.groups();
    let mut bins = vec![0u64; n];
    Ok(place_blob(inst, 0, &mut bins, 0))
}

fn place_blob(
    inst: &ThreePartitionInstance,
    blob: usize,
    bins: &mut Vec<u64>,
    opened: usize,
) -> bool {
    if blob == inst.values.len() {
        return bins[..opened].iter().all(|&s| s == inst.k);
    }
    // Bin-permutation symmetry: a blob may open at most one fresh bin.
    let limit = (opened + 1).min(bins.len());
    for bin in 0..limit {
        if bins[bin] + inst.values[blob] > inst.k {
            continue;
        }
        bins[bin] += inst.values[blob];
        if place_blob(inst, blob + 1, bins, opened.max(bin + 1)) {
            return true;
        }
        bins[bin] -= inst.values[blob];
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Bipartiteness;
    use crate::partition::verify_partition;

    fn inst(k: u64, values: &[u64]) -> ThreePartitionInstance {
        ThreePartitionInstance {
            k,
            values: values.to_vec(),
        }
    }

    #[test]
    fn validation_examples() {
        assert!(validate_3p(&inst(3, &[1, 1, 1])).is_ok());
        assert!(validate_3p(&inst(13, &[4, 4, 4, 4, 4, 6])).is_ok());
        assert_eq!(
            validate_3p(&inst(5, &[2, 2, 2])),
            Err(ThreePartitionViolation::SumMismatch {
                sum: 6,
                expected: 5
            })
        );
        assert!(matches!(
            validate_3p(&inst(8, &[2, 3, 3])),
            Err(ThreePartitionViolation::ValueOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            validate_3p(&inst(3, &[1, 1])),
            Err(ThreePartitionViolation::LengthNotTripleMultiple { len: 2 })
        ));
    }

    #[test]
    fn brute_force_yes_and_no() {
        let yes = inst(3, &[1, 1, 1]);
        assert_eq!(solve_3p_bruteforce(&yes).unwrap(), Some(vec![[0, 1, 2]]));

        let yes2 = inst(13, &[4, 4, 5, 4, 4, 5]);
        let groups = solve_3p_bruteforce(&yes2).unwrap().unwrap();
        assert_eq!(groups.len(), 2);
        for group in groups {
            let sum: u64 = group.iter().map(|&i| yes2.values[i]).sum();
            assert_eq!(sum, 13);
        }

        let no = inst(13, &[4, 4, 4, 4, 4, 6]);
        assert_eq!(solve_3p_bruteforce(&no).unwrap(), None);
    }

    #[test]
    fn gadget_shape_k3_n1() {
        let gadget = gadget_three_partition(&inst(3, &[1, 1, 1])).unwrap();
        let g = &gadget.graph;
        assert_eq!(g.vertex_count(), 36);
        assert_eq!(g.edge_count(), 3 * 30 + 3 * 6);
        // 2kn = 2k here, so the whole graph is 6-regular.
        assert_eq!(g.is_regular(), Some(6));
        assert!(matches!(g.is_bipartite(), Bipartiteness::Bipartite { .. }));
        assert_eq!(g.connected_components().len(), 1);
    }

    #[test]
    fn gadget_hub_degrees_n2() {
        let gadget = gadget_three_partition(&inst(3, &[1, 1, 1, 1, 1, 1])).unwrap();
        let g = &gadget.graph;
        let hubs: Vec<usize> = gadget
            .vertex_roles
            .iter()
            .enumerate()
            .filter_map(|(i, r)| matches!(r, VertexRole::Hub(_)).then_some(i))
            .collect();
        for &hub in &hubs {
            assert_eq!(g.degree(hub), 12);
        }
        for vertex in 0..g.vertex_count() {
            if !hubs.contains(&vertex) {
                assert_eq!(g.degree(vertex), 6);
            }
        }
        // Total u-edges across blobs: sum of 2a_i = 2nk.
        let u_edges = gadget
            .edge_roles
            .iter()
            .filter(|r| matches!(r, EdgeRole::HubLink { hub: Hub::U, .. }))
            .count();
        assert_eq!(u_edges, 12);
    }

    #[test]
    fn certificate_from_grouping() {
        let instance = inst(3, &[1, 1, 1]);
        let gadget = gadget_three_partition(&instance).unwrap();
        let grouping = solve_3p_bruteforce(&instance).unwrap().unwrap();
        let cert = partition_from_3p_solution(&instance, &grouping, &gadget).unwrap();
        assert_eq!(cert.part_count(), 1);
        assert_eq!(cert.regularities, vec![6]);
        assert_eq!(
            verify_partition(&gadget.graph, &cert.parts).unwrap(),
            vec![6]
        );

        let instance2 = inst(3, &[1, 1, 1, 1, 1, 1]);
        let gadget2 = gadget_three_partition(&instance2).unwrap();
        let grouping2 = solve_3p_bruteforce(&instance2).unwrap().unwrap();
        let cert2 = partition_from_3p_solution(&instance2, &grouping2, &gadget2).unwrap();
        assert_eq!(cert2.part_count(), 2);
        assert_eq!(cert2.regularities, vec![6, 6]);
    }

    #[test]
    fn mismatched_grouping_is_rejected() {
        let instance = inst(3, &[1, 1, 1, 1, 1, 1]);
        let gadget = gadget_three_partition(&instance).unwrap();
        let bad = vec![[0, 1, 2], [2, 3, 4]];
        assert!(matches!(
            partition_from_3p_solution(&instance, &bad, &gadget),
            Err(ReduceError::GroupingInvalid { .. })
        ));
    }

    #[test]
    fn blob_decision_agrees_with_brute_force() {
        let cases = [
            inst(3, &[1, 1, 1]),
            inst(3, &[1, 1, 1, 1, 1, 1]),
            inst(13, &[4, 4, 5, 4, 4, 5]),
            inst(13, &[4, 4, 4, 4, 4, 6]),
            inst(9, &[3, 3, 3, 3, 3, 3]),
        ];
        for instance in cases {
            let expected = solve_3p_bruteforce(&instance).unwrap().is_some();
            assert_eq!(
                blob_decide_3p(&instance).unwrap(),
                expected,
                "{:?}",
                instance
            );
        }
    }
}
