//! The pendant transform on cubic graphs: remove one edge uv, then hang a
//! fresh degree-3 vertex off v with two leaves. The result has reg = 3
//! exactly when the original graph 4-edge-colors with an empty fourth class,
//! and it is the source of connected graphs with reg = Δ + 1.

use super::{EdgeRole, GadgetGraph, ReduceError, VertexRole};
use crate::graph::{Graph, Vertex};

/// Removes edge (u, v), adds vertices v' (joined to v), v'' and v'''
/// (joined to v'). Degrees afterwards: u drops to 2, v stays 3, v' is 3,
/// the leaves are 1.
pub fn cubic_pendant_transform(
    g: &Graph,
    u: Vertex,
    v: Vertex,
) -> Result<GadgetGraph, ReduceError> {
    for vertex in 0..g.vertex_count() {
        if g.degree(vertex) != 3 {
            return Err(ReduceError::NotCubic {
                vertex,
                degree: g.degree(vertex),
            });
        }
    }
    let Some(removed) = g.edge_between(u, v) else {
        return Err(ReduceError::EdgeAbsent { u, v });
    };
    let n = g.vertex_count();
    let (root, leaf_a, leaf_b) = (n, n + 1, n + 2);

    let mut edges = Vec::with_capacity(g.edge_count() + 2);
    let mut edge_roles = Vec::with_capacity(g.edge_count() + 2);
    for (e, &pair) in g.edges().iter().enumerate() {
        if e != removed {
            edges.push(pair);
            edge_roles.push(EdgeRole::Plain);
        }
    }
    for (index, pair) in [(v, root), (root, leaf_a), (root, leaf_b)]
        .into_iter()
        .enumerate()
    {
        edges.push(pair);
        edge_roles.push(EdgeRole::PendantArm { index });
    }

    let mut vertex_roles = vec![VertexRole::Plain; n];
    vertex_roles[u] = VertexRole::CutEnd;
    vertex_roles[v] = VertexRole::Rejoined;
    vertex_roles.push(VertexRole::PendantRoot);
    vertex_roles.push(VertexRole::PendantLeaf { index: 0 });
    vertex_roles.push(VertexRole::PendantLeaf { index: 1 });

    let graph = Graph::new(n + 3, edges)?;
    assert_eq!(graph.degree(u), 2);
    assert_eq!(graph.degree(v), 3);
    assert_eq!(graph.degree(root), 3);
    assert_eq!(graph.degree(leaf_a), 1);
    assert_eq!(graph.degree(leaf_b), 1);
    Ok(GadgetGraph::new(graph, vertex_roles, edge_roles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::families;
    use crate::partition::reg_exact;

    #[test]
    fn shape_of_transformed_k4() {
        let k4 = families::complete(4).unwrap();
        let (u, v) = k4.endpoints(0);
        let gadget = cubic_pendant_transform(&k4, u, v).unwrap();
        assert_eq!(gadget.graph.vertex_count(), 7);
        assert_eq!(gadget.graph.edge_count(), 8);
        assert_eq!(gadget.graph.degree_profile().degree_set(), vec![1, 2, 3]);
    }

    #[test]
    fn transform_rejects_bad_inputs() {
        let c4 = families::cycle(4).unwrap();
        assert!(matches!(
            cubic_pendant_transform(&c4, 0, 1),
            Err(ReduceError::NotCubic { .. })
        ));
        let k4 = families::complete(4).unwrap();
        assert!(matches!(
            cubic_pendant_transform(&k4, 0, 0),
            Err(ReduceError::EdgeAbsent { .. })
        ));
    }

    #[test]
    fn three_colorable_sources_give_reg_three() {
        for g in [
            families::complete(4).unwrap(),
            families::complete_bipartite(3, 3).unwrap(),
        ] {
            let (u, v) = g.endpoints(0);
            let gadget = cubic_pendant_transform(&g, u, v).unwrap();
            let report = reg_exact(&gadget.graph, Budget::default()).unwrap();
            assert_eq!(report.value, 3);
        }
    }

    #[test]
    fn petersen_transform_exceeds_max_degree() {
        let petersen = families::petersen();
        let (u, v) = petersen.endpoints(0);
        let gadget = cubic_pendant_transform(&petersen, u, v).unwrap();
        let report = reg_exact(&gadget.graph, Budget::default()).unwrap();
        assert_eq!(report.value, 4);
        assert_eq!(gadget.graph.max_degree(), 3);
    }
}
