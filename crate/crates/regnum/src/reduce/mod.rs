//! Executable reductions: the 3-partition hub gadget, the formula-to-graph
//! compiler with its clause fragments, and the cubic pendant transform.
//! Every builder attaches provenance so exports and error messages can name
//! construction roles.

mod formula_gadget;
mod fragments;
mod pendant;
mod three_partition;

pub use formula_gadget::{assignment_from_partition, gadget_formula, partition_from_assignment};
pub use fragments::{
    antenna, gadget_hc, gadget_ic, mixed_patterns, verify_fragment_contract, Antenna, Fragment,
};
pub use pendant::cubic_pendant_transform;
pub use three_partition::{
    blob_decide_3p, gadget_three_partition, partition_from_3p_solution, solve_3p_bruteforce,
    validate_3p, ThreePartitionInstance, ThreePartitionViolation,
};

use crate::balance::BalanceError;
use crate::graph::{Graph, GraphError};
use crate::partition::PartitionViolation;
use crate::sat::Cubic23Violation;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hub {
    U,
    V,
    W,
}

impl fmt::Display for Hub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hub::U => write!(f, "u"),
            Hub::V => write!(f, "v"),
            Hub::W => write!(f, "w"),
        }
    }
}

/// Construction role of a gadget vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexRole {
    Hub(Hub),
    /// Vertex of the blob's larger side (the one wired to hubs).
    BlobX {
        blob: usize,
    },
    /// Vertex of the blob's smaller side.
    BlobY {
        blob: usize,
    },
    /// Clause hub: receives one edge per literal plus fragment interior.
    ClauseHub {
        clause: usize,
    },
    /// Degree-6 interior vertex absorbing antenna pendants in a 3-clause
    /// fragment.
    BalanceCore {
        clause: usize,
    },
    Variable {
        var: usize,
    },
    AntennaInternal {
        clause: usize,
        antenna: usize,
        pos: usize,
    },
    /// Pendant transform: the fresh degree-3 vertex.
    PendantRoot,
    /// Pendant transform: one of the two fresh leaves.
    PendantLeaf {
        index: usize,
    },
    /// Pendant transform: the endpoint left at degree 2.
    CutEnd,
    /// Pendant transform: the endpoint rejoined through the pendant root.
    Rejoined,
    Plain,
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Hub(h) => write!(f, "hub-{}", h),
            VertexRole::BlobX { blob } => write!(f, "blob({},X)", blob),
            VertexRole::BlobY { blob } => write!(f, "blob({},Y)", blob),
            VertexRole::ClauseHub { clause } => write!(f, "clause-hub({})", clause),
            VertexRole::BalanceCore { clause } => write!(f, "balance({})", clause),
            VertexRole::Variable { var } => write!(f, "variable({})", var),
            VertexRole::AntennaInternal {
                clause,
                antenna,
                pos,
            } => write!(f, "antenna({},{},{})", clause, antenna, pos),
            VertexRole::PendantRoot => write!(f, "pendant-root"),
            VertexRole::PendantLeaf { index } => write!(f, "pendant-leaf({})", index),
            VertexRole::CutEnd => write!(f, "cut-end"),
            VertexRole::Rejoined => write!(f, "rejoined"),
            VertexRole::Plain => write!(f, "plain"),
        }
    }
}

/// Construction role of a gadget edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRole {
    /// Interior edge of blob `blob` (complete-bipartite part).
    BlobInternal {
        blob: usize,
    },
    /// Member of the blob's hub bundle: one of its 2k hub edges.
    HubLink {
        blob: usize,
        hub: Hub,
    },
    /// Clause-to-variable edge.
    ClauseExternal {
        clause: usize,
        var: usize,
    },
    /// Interior edge of a clause fragment.
    FragmentInternal {
        clause: usize,
    },
    /// Pendant transform: one of the three fresh edges.
    PendantArm {
        index: usize,
    },
    Plain,
}

impl fmt::Display for EdgeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRole::BlobInternal { blob } => write!(f, "blob({})", blob),
            EdgeRole::HubLink { blob, hub } => write!(f, "hub-link({},{})", blob, hub),
            EdgeRole::ClauseExternal { clause, var } => {
                write!(f, "clause-external({},{})", clause, var)
            }
            EdgeRole::FragmentInternal { clause } => write!(f, "fragment({})", clause),
            EdgeRole::PendantArm { index } => write!(f, "pendant-arm({})", index),
            EdgeRole::Plain => write!(f, "plain"),
        }
    }
}

/// A graph plus total provenance over vertices and edges.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub vertex_roles: Vec<VertexRole>,
    pub edge_roles: Vec<EdgeRole>,
}

impl GadgetGraph {
    pub fn new(graph: Graph, vertex_roles: Vec<VertexRole>, edge_roles: Vec<EdgeRole>) -> Self {
        assert_eq!(
            vertex_roles.len(),
            graph.vertex_count(),
            "provenance must be total"
        );
        assert_eq!(
            edge_roles.len(),
            graph.edge_count(),
            "provenance must be total"
        );
        GadgetGraph {
            graph,
            vertex_roles,
            edge_roles,
        }
    }

    /// Sidecar form: `{"vertex_roles": {"0": "hub-u", ...}, "edge_roles": ...}`.
    pub fn provenance_json(&self) -> serde_json::Value {
        let vertices: serde_json::Map<String, serde_json::Value> = self
            .vertex_roles
            .iter()
            .enumerate()
            .map(|(i, r)| (i.to_string(), serde_json::Value::String(r.to_string())))
            .collect();
        let edges: serde_json::Map<String, serde_json::Value> = self
            .edge_roles
            .iter()
            .enumerate()
            .map(|(i, r)| (i.to_string(), serde_json::Value::String(r.to_string())))
            .collect();
        serde_json::json!({ "vertex_roles": vertices, "edge_roles": edges })
    }

    pub fn to_dot(&self) -> String {
        let vertex_labels: Vec<String> = self.vertex_roles.iter().map(|r| r.to_string()).collect();
        let edge_labels: Vec<String> = self.edge_roles.iter().map(|r| r.to_string()).collect();
        self.graph.to_dot(Some(&vertex_labels), Some(&edge_labels))
    }
}

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("invalid 3-partition instance: {0}")]
    Instance(#[from] ThreePartitionViolation),
    #[error("instance too large for brute force: n={n} exceeds {max}")]
    InstanceTooLarge { n: usize, max: usize },
    #[error("grouping does not solve the instance: {reason}")]
    GroupingInvalid { reason: String },
    #[error("formula is not cubic (2,3): {0}")]
    NotCubic23(#[from] Cubic23Violation),
    #[error("assignment is not an NAE model of the formula")]
    NotAModel,
    #[error("certificate rejected: {0}")]
    InvalidCertificate(#[from] PartitionViolation),
    #[error("certificate has {parts} parts with regularities {regularities:?}, expected two 3-regular parts")]
    NotTwoThreeRegularParts {
        parts: usize,
        regularities: Vec<usize>,
    },
    #[error("fragment vertex {vertex} has degree {degree}, outside {{3,6}}")]
    FragmentDegree { vertex: usize, degree: usize },
    #[error("antenna arity {arity} not in 1..=3")]
    BadAntennaArity { arity: usize },
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("edge ({u},{v}) is not in the graph")]
    EdgeAbsent { u: usize, v: usize },
    #[error("gadget labeling search failed to complete a certificate")]
    CompletionFailed,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Balance(#[from] BalanceError),
}
