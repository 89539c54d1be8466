//! Weighted multigraph container and block decomposition.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::weight::Weight;
use crate::{Error, Result};

/// Index of a vertex in declaration order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

/// Index of an edge in declaration order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct EdgeRecord {
    pub name: String,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

/// Undirected multigraph with named vertices and named, weighted edges.
/// Parallel edges and loops are allowed; declaration order is the universal
/// tie-breaker, so construction order is part of the instance.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    names: Vec<String>,
    edges: Vec<EdgeRecord>,
    incident: Vec<Vec<EdgeId>>,
}

impl WeightedGraph {
    /// Builds a graph from named parts, validating referential integrity.
    pub fn build(
        vertices: Vec<String>,
        edges: Vec<(String, String, String, Weight)>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut index: HashMap<String, VertexId> = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut seen_edges: HashSet<&str> = HashSet::new();
        let mut records = Vec::with_capacity(edges.len());
        for (name, u, v, weight) in &edges {
            if !seen_edges.insert(name) {
                return Err(Error::DuplicateEdge(name.clone()));
            }
            let lookup = |end: &String| {
                index.get(end).copied().ok_or_else(|| Error::UnknownEndpoint {
                    edge: name.clone(),
                    vertex: end.clone(),
                })
            };
            records.push(EdgeRecord {
                name: name.clone(),
                u: lookup(u)?,
                v: lookup(v)?,
                weight: weight.clone(),
            });
        }
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in records.iter().enumerate() {
            incident[e.u.0].push(EdgeId(i));
            if e.v != e.u {
                incident[e.v.0].push(EdgeId(i));
            }
        }
        Ok(WeightedGraph {
            names: vertices,
            edges: records,
            incident,
        })
    }

    /// Test and generator helper: vertices named `"1"..="n"`, edges named
    /// `"e0"`, `"e1"`, ... in declaration order.
    pub fn from_indexed(n: usize, edges: &[(usize, usize, Weight)]) -> Self {
        let names = (1..=n).map(|i| i.to_string()).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, (u, v, w))| {
                assert!(*u < n && *v < n, "edge endpoint out of range");
                (
                    format!("e{i}"),
                    (u + 1).to_string(),
                    (v + 1).to_string(),
                    w.clone(),
                )
            })
            .collect();
        Self::build(names, edges).expect("indexed construction is valid")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.m()).map(EdgeId)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e.0]
    }

    pub fn weight(&self, e: EdgeId) -> &Weight {
        &self.edges[e.0].weight
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let r = &self.edges[e.0];
        (r.u, r.v)
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let r = &self.edges[e.0];
        r.u == r.v
    }

    /// The endpoint of `e` other than `v`. For loops returns `v` itself.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let r = &self.edges[e.0];
        if r.u == v {
            r.v
        } else {
            debug_assert_eq!(r.v, v, "vertex not an endpoint of edge");
            r.u
        }
    }

    /// Edges incident to `v`, in declaration order. Loops appear once.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    /// Number of incident edges, counting loops once.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    /// First declared edge whose endpoints are exactly `{u, v}`.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.incident[u.0]
            .iter()
            .copied()
            .find(|&e| !self.is_loop(e) && self.other_end(e, u) == v)
    }

    pub fn has_loops(&self) -> bool {
        self.edge_ids().any(|e| self.is_loop(e))
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = HashSet::new();
        for e in self.edge_ids() {
            if self.is_loop(e) {
                continue;
            }
            let (u, v) = self.endpoints(e);
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return true;
            }
        }
        false
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_parallel_edges()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![VertexId(0)];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in self.incident(v) {
                let u = self.other_end(e, v);
                if !seen[u.0] {
                    seen[u.0] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    /// `"a, b, c"`, the vertex names in index order, for error messages.
    pub fn vertex_list(&self) -> String {
        self.names.join(", ")
    }
}

/// A subgraph materialized as its own `WeightedGraph` plus index maps back
/// to the parent. Vertex and edge names are inherited, so messages about a
/// subgraph read in the parent's vocabulary.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: WeightedGraph,
    /// Local vertex index -> parent vertex.
    pub vertices: Vec<VertexId>,
    /// Local edge index -> parent edge.
    pub edges: Vec<EdgeId>,
}

impl Subgraph {
    pub fn to_parent_vertex(&self, local: VertexId) -> VertexId {
        self.vertices[local.0]
    }

    pub fn to_parent_edge(&self, local: EdgeId) -> EdgeId {
        self.edges[local.0]
    }

    pub fn to_local_vertex(&self, parent: VertexId) -> Option<VertexId> {
        self.vertices.iter().position(|&v| v == parent).map(VertexId)
    }
}

/// Materializes the subgraph spanned by `edges` (their endpoints become the
/// vertex set). Edge order is preserved as given; vertices are sorted by
/// parent index.
pub fn induced_by_edges(g: &WeightedGraph, edges: &[EdgeId]) -> Subgraph {
    let mut vertex_set = BTreeSet::new();
    for &e in edges {
        let (u, v) = g.endpoints(e);
        vertex_set.insert(u);
        vertex_set.insert(v);
    }
    let vertices: Vec<VertexId> = vertex_set.into_iter().collect();
    let names = vertices.iter().map(|&v| g.name(v).to_string()).collect();
    let edge_tuples = edges
        .iter()
        .map(|&e| {
            let r = g.edge(e);
            (
                r.name.clone(),
                g.name(r.u).to_string(),
                g.name(r.v).to_string(),
                r.weight.clone(),
            )
        })
        .collect();
    let graph = WeightedGraph::build(names, edge_tuples).expect("subgraph parts are consistent");
    Subgraph {
        graph,
        vertices,
        edges: edges.to_vec(),
    }
}

struct BlockDfs<'g> {
    g: &'g WeightedGraph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<EdgeId>,
    blocks: Vec<Vec<EdgeId>>,
    cut_vertices: BTreeSet<VertexId>,
}

impl BlockDfs<'_> {
    fn dfs(&mut self, v: VertexId, entered_by: Option<EdgeId>) {
        self.disc[v.0] = self.timer;
        self.low[v.0] = self.timer;
        self.timer += 1;
        let mut children = 0;
        for &e in self.g.incident(v) {
            if Some(e) == entered_by || self.g.is_loop(e) {
                continue;
            }
            let u = self.g.other_end(e, v);
            if self.disc[u.0] == usize::MAX {
                self.edge_stack.push(e);
                children += 1;
                self.dfs(u, Some(e));
                self.low[v.0] = self.low[v.0].min(self.low[u.0]);
                if self.low[u.0] >= self.disc[v.0] {
                    if entered_by.is_some() || children > 1 {
                        self.cut_vertices.insert(v);
                    }
                    let mut block = Vec::new();
                    while let Some(&top) = self.edge_stack.last() {
                        self.edge_stack.pop();
                        block.push(top);
                        if top == e {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[u.0] < self.disc[v.0] {
                self.edge_stack.push(e);
                self.low[v.0] = self.low[v.0].min(self.disc[u.0]);
            }
        }
    }
}

/// Splits a connected graph into its blocks (maximal 2-connected subgraphs;
/// a bridge forms a single-edge block) and returns them with the set of cut
/// vertices. Loops belong to no block. Blocks are ordered by their smallest
/// edge index, edges within a block by index.
pub fn biconnected_components(
    g: &WeightedGraph,
) -> Result<(Vec<Subgraph>, BTreeSet<VertexId>)> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut state = BlockDfs {
        g,
        disc: vec![usize::MAX; g.n()],
        low: vec![usize::MAX; g.n()],
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut_vertices: BTreeSet::new(),
    };
    state.dfs(VertexId(0), None);
    debug_assert!(state.edge_stack.is_empty());
    let mut blocks = state.blocks;
    for b in &mut blocks {
        b.sort();
    }
    blocks.sort_by_key(|b| b[0]);
    let subs = blocks.iter().map(|b| induced_by_edges(g, b)).collect();
    Ok((subs, state.cut_vertices))
}
