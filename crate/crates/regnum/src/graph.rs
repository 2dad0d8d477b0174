//! Simple undirected loopless graphs with stable, positional edge identity.
//!
//! Edge index = position in the edge sequence. Partitions, colorings and
//! certificates all refer to edges by that index, so construction order is
//! part of the contract and serialization round-trips keep it intact.

use crate::budget::{Budget, BudgetExceeded, SearchStats};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

pub type Vertex = usize;
pub type EdgeIndex = usize;

/// A subset of edges, by index into the owner graph's edge sequence.
pub type EdgeSubset = Vec<EdgeIndex>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} is a loop at vertex {vertex}")]
    LoopEdge { index: usize, vertex: Vertex },
    #[error("edge {index} ({u},{v}) duplicates edge {first}")]
    DuplicateEdge {
        index: usize,
        first: usize,
        u: Vertex,
        v: Vertex,
    },
    #[error("edge {index} endpoint {vertex} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        index: usize,
        vertex: Vertex,
        vertex_count: usize,
    },
    #[error("edge subset is empty")]
    EmptySubset,
    #[error("edge index {0} out of range")]
    BadEdgeIndex(usize),
    #[error("duplicate edge index {0} in subset")]
    DuplicateInSubset(usize),
    #[error("requested {k} colors, vertex colorability checks support k <= 6")]
    TooManyColors { k: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Finite undirected loopless simple graph. Isolated vertices are first-class:
/// `vertex_count` may exceed the number of covered vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<(Vertex, EdgeIndex)>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges (compared unordered)
    /// and out-of-range endpoints. Edge order is preserved.
    pub fn new(
        vertex_count: usize,
        edge_list: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for (index, (u, v)) in edge_list.into_iter().enumerate() {
            for &endpoint in [u, v].iter() {
                if endpoint >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        index,
                        vertex: endpoint,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge { index, vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Err(GraphError::DuplicateEdge { index, first, u, v });
            }
            seen.insert(key, index);
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
            edges.push((u, v));
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeIndex) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Neighbors of `v` with the connecting edge index, in insertion order.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeIndex)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].iter().any(|&(w, _)| w == v)
    }

    /// Looks up an edge index by its endpoints, in either order.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeIndex> {
        self.adjacency[u]
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.vertex_count).map(|v| self.degree(v)).collect();
        let mut multiset = BTreeMap::new();
        for &d in &degrees {
            *multiset.entry(d).or_insert(0usize) += 1;
        }
        DegreeProfile { degrees, multiset }
    }

    /// Maximum degree; 0 for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d0 = if self.vertex_count == 0 {
            return Some(0);
        } else {
            self.degree(0)
        };
        (1..self.vertex_count)
            .all(|v| self.degree(v) == d0)
            .then_some(d0)
    }

    /// Edge-induced regularity of a subset: `Some(r)` if every vertex covered
    /// by the subset has exactly `r` incident subset edges, `None` otherwise.
    /// Vertices touching no subset edge are ignored.
    pub fn edge_induced_regularity(
        &self,
        subset: &[EdgeIndex],
    ) -> Result<Option<usize>, GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut seen = vec![false; self.edges.len()];
        for &e in subset {
            if e >= self.edges.len() {
                return Err(GraphError::BadEdgeIndex(e));
            }
            if seen[e] {
                return Err(GraphError::DuplicateInSubset(e));
            }
            seen[e] = true;
            let (u, v) = self.edges[e];
            *count.entry(u).or_insert(0) += 1;
            *count.entry(v).or_insert(0) += 1;
        }
        let mut values = count.values();
        let r = *values.next().expect("subset is nonempty");
        Ok(values.all(|&c| c == r).then_some(r))
    }

    /// BFS 2-coloring; returns either the side assignment or an odd cycle.
    pub fn is_bipartite(&self) -> Bipartiteness {
        let n = self.vertex_count;
        let mut side: Vec<i8> = vec![-1; n];
        let mut parent: Vec<Option<Vertex>> = vec![None; n];
        for start in 0..n {
            if side[start] >= 0 {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adjacency[u] {
                    if side[w] < 0 {
                        side[w] = 1 - side[u];
                        parent[w] = Some(u);
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Bipartiteness::OddCycle {
                            cycle: odd_cycle_through(&parent, u, w),
                        };
                    }
                }
            }
        }
        Bipartiteness::Bipartite {
            sides: side.iter().map(|&s| s.max(0) as u8).collect(),
        }
    }

    /// Maximal connected vertex sets, each sorted; isolated vertices are
    /// singletons. Components are ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count;
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adjacency[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Disjoint union: vertices of `other` are shifted by `self.vertex_count`,
    /// edges of `self` come first.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.vertex_count + other.vertex_count, edges)
            .expect("union of valid graphs is valid")
    }

    /// Exact proper vertex k-colorability by backtracking, `k <= 6`.
    ///
    /// `Ok(Some(colors))` carries a witness; `Ok(None)` means exhaustive
    /// refutation. Budget exhaustion is a distinct error, never a "no".
    pub fn is_k_colorable(&self, k: usize, budget: Budget) -> Result<Option<Vec<u8>>, GraphError> {
        if k > 6 {
            return Err(GraphError::TooManyColors { k });
        }
        let n = self.vertex_count;
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        if k == 0 {
            return Ok(None);
        }
        // Order vertices by descending degree; isolated vertices trail and
        // always take color 0.
        let mut order: Vec<Vertex> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut colors: Vec<i8> = vec![-1; n];
        let mut stats = SearchStats::default();
        let found = self.color_rec(&order, 0, k as i8, &mut colors, budget, &mut stats)?;
        Ok(found.then(|| colors.iter().map(|&c| c.max(0) as u8).collect()))
    }

    fn color_rec(
        &self,
        order: &[Vertex],
        pos: usize,
        k: i8,
        colors: &mut Vec<i8>,
        budget: Budget,
        stats: &mut SearchStats,
    ) -> Result<bool, GraphError> {
        if pos == order.len() {
            return Ok(true);
        }
        stats.charge_node(budget)?;
        let v = order[pos];
        let mut used = 0u8;
        let mut max_seen = -1i8;
        for &(w, _) in &self.adjacency[v] {
            if colors[w] >= 0 {
                used |= 1 << colors[w];
            }
        }
        for &w in order[..pos].iter() {
            max_seen = max_seen.max(colors[w]);
        }
        // New colors are introduced in index order, which removes color
        // permutation symmetry.
        let cap = k.min(max_seen + 2);
        for c in 0..cap {
            if used & (1 << c) != 0 {
                continue;
            }
            colors[v] = c;
            if self.color_rec(order, pos + 1, k, colors, budget, stats)? {
                return Ok(true);
            }
            colors[v] = -1;
        }
        Ok(false)
    }

    // ---- serialization ----

    /// Edge-list text form: `graph <n> <m>` then one `u v` line per edge.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {}", self.vertex_count, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    pub fn from_edge_list_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(ParseError::MissingHeader)?;
        let mut fields = header.split(' ');
        if fields.next() != Some("graph") {
            return Err(ParseError::MissingHeader);
        }
        let n: usize = fields
            .next()
            .ok_or(ParseError::MissingHeader)?
            .parse()
            .map_err(|_| ParseError::MissingHeader)?;
        let m: usize = fields
            .next()
            .ok_or(ParseError::MissingHeader)?
            .parse()
            .map_err(|_| ParseError::MissingHeader)?;
        if fields.next().is_some() {
            return Err(ParseError::MissingHeader);
        }
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines.enumerate() {
            if edges.len() == m && line.is_empty() {
                continue;
            }
            let mut fields = line.split(' ');
            let parse = |f: Option<&str>| -> Result<usize, ParseError> {
                f.ok_or(ParseError::BadEdgeLine { line: lineno + 2 })?
                    .parse()
                    .map_err(|_| ParseError::BadEdgeLine { line: lineno + 2 })
            };
            let u = parse(fields.next())?;
            let v = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(ParseError::BadEdgeLine { line: lineno + 2 });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(ParseError::EdgeCountMismatch {
                declared: m,
                found: edges.len(),
            });
        }
        Graph::new(n, edges).map_err(ParseError::Graph)
    }

    pub fn to_json(&self) -> JsonGraph {
        JsonGraph {
            n: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(j: &JsonGraph) -> Result<Self, GraphError> {
        Graph::new(j.n, j.edges.iter().map(|&[u, v]| (u, v)))
    }

    /// DOT export for visualization. Labels, when given, are attached per
    /// vertex and per edge; indices are always shown.
    pub fn to_dot(
        &self,
        vertex_labels: Option<&[String]>,
        edge_labels: Option<&[String]>,
    ) -> String {
        let mut out = String::from("graph regnum {\n");
        for v in 0..self.vertex_count {
            match vertex_labels.and_then(|ls| ls.get(v)) {
                Some(label) => {
                    let _ = writeln!(out, "  {} [label=\"{}: {}\"];", v, v, label);
                }
                None => {
                    let _ = writeln!(out, "  {};", v);
                }
            }
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            match edge_labels.and_then(|ls| ls.get(e)) {
                Some(label) => {
                    let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", u, v, label);
                }
                None => {
                    let _ = writeln!(out, "  {} -- {};", u, v);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Walks parent pointers from both endpoints of the conflicting edge to
/// recover an odd cycle witness.
fn odd_cycle_through(parent: &[Option<Vertex>], u: Vertex, w: Vertex) -> Vec<Vertex> {
    let path_to_root = |mut x: Vertex| {
        let mut path = vec![x];
        while let Some(p) = parent[x] {
            path.push(p);
            x = p;
        }
        path
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    // Drop the common tail, keep the junction once.
    let mut iu = pu.len();
    let mut iw = pw.len();
    while iu > 0 && iw > 0 && pu[iu - 1] == pw[iw - 1] {
        iu -= 1;
        iw -= 1;
    }
    let mut cycle: Vec<Vertex> = pu[..=iu.min(pu.len() - 1)].to_vec();
    for &x in pw[..iw].iter().rev() {
        cycle.push(x);
    }
    cycle
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite { sides: Vec<u8> },
    OddCycle { cycle: Vec<Vertex> },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// Per-vertex degrees plus the degree multiset summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    degrees: Vec<usize>,
    multiset: BTreeMap<usize, usize>,
}

impl DegreeProfile {
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn multiset(&self) -> &BTreeMap<usize, usize> {
        &self.multiset
    }

    pub fn max_degree(&self) -> usize {
        self.multiset.keys().next_back().copied().unwrap_or(0)
    }

    /// The set of distinct degrees, ascending.
    pub fn degree_set(&self) -> Vec<usize> {
        self.multiset.keys().copied().collect()
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// Machine interchange form: `{"n": ..., "edges": [[u,v],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JsonGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected header line `graph <n> <m>`")]
    MissingHeader,
    #[error("malformed edge line {line}: expected `u v`")]
    BadEdgeLine { line: usize },
    #[error("header declared {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(GraphError),
}
