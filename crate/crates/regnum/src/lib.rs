//! Exact computation of the regular number of a graph, together with the
//! constructions that make its hardness reductions executable: the zebra
//! family, the 3-partition hub gadget, monotone NAE formula normalization,
//! the formula-to-graph compiler, and the cubic pendant transform.
//!
//! The regular number `reg(G)` is the minimum number of parts in a partition
//! of the edge set such that each part induces a regular subgraph. Everything
//! here is exact at desk scale: solvers return verifiable certificates, and
//! each gadget builder is paired with a checker for the property it is
//! supposed to force.

pub mod balance;
pub mod budget;
pub mod coloring;
pub mod families;
pub mod graph;
pub mod partition;
pub mod reduce;
pub mod sat;

pub use budget::{Budget, BudgetExceeded, SearchStats};
pub use graph::{Graph, GraphError};
pub use partition::{RegularPartition, SolveReport};
