//! Orientations of a weighted graph: full, mixed (partially directed),
//! acyclicity and trivial-cut queries, sink census.

use std::collections::BTreeMap;

use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::weight::Weight;
use crate::{Error, Result};

/// Direction of one edge relative to its declared endpoint order `(u, v)`.
/// Loops carry no direction and are transparent to every directed query.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum ArcDir {
    /// Arc u -> v.
    Forward,
    /// Arc v -> u.
    Reverse,
    Loop,
}

/// A complete orientation of every edge, tagged with the intended root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orientation {
    root: VertexId,
    dir: Vec<ArcDir>,
}

impl Orientation {
    /// Wraps a direction vector, checking it against the graph: one entry
    /// per edge, `Loop` exactly on loops.
    pub fn from_dirs(g: &WeightedGraph, root: VertexId, dir: Vec<ArcDir>) -> Result<Self> {
        if root.0 >= g.n() {
            return Err(Error::InvalidInput(format!("root {root} out of range")));
        }
        if dir.len() != g.m() {
            return Err(Error::InvalidInput(format!(
                "orientation has {} directions for {} edges",
                dir.len(),
                g.m()
            )));
        }
        for (i, d) in dir.iter().enumerate() {
            if (*d == ArcDir::Loop) != g.is_loop(EdgeId(i)) {
                return Err(Error::InvalidInput(format!(
                    "edge {:?} direction disagrees with loop status",
                    g.edge(EdgeId(i)).name
                )));
            }
        }
        Ok(Orientation { root, dir })
    }

    /// Builds the orientation in which every non-loop edge points from the
    /// earlier to the later vertex of `order` (a permutation of all
    /// vertices starting at `root`).
    pub fn from_topological_order(
        g: &WeightedGraph,
        order: &[VertexId],
    ) -> Result<Self> {
        if order.len() != g.n() {
            return Err(Error::InvalidInput(
                "vertex order must cover every vertex".into(),
            ));
        }
        let mut pos = vec![usize::MAX; g.n()];
        for (i, v) in order.iter().enumerate() {
            if pos[v.0] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "vertex {:?} repeated in order",
                    g.name(*v)
                )));
            }
            pos[v.0] = i;
        }
        let dir = g
            .edge_ids()
            .map(|e| {
                let (u, v) = g.endpoints(e);
                if u == v {
                    ArcDir::Loop
                } else if pos[u.0] < pos[v.0] {
                    ArcDir::Forward
                } else {
                    ArcDir::Reverse
                }
            })
            .collect();
        Ok(Orientation {
            root: order[0],
            dir,
        })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn dir(&self, e: EdgeId) -> ArcDir {
        self.dir[e.0]
    }

    pub fn dirs(&self) -> &[ArcDir] {
        &self.dir
    }

    /// Tail of the arc on `e`; `None` for loops.
    pub fn tail(&self, g: &WeightedGraph, e: EdgeId) -> Option<VertexId> {
        let (u, v) = g.endpoints(e);
        match self.dir[e.0] {
            ArcDir::Forward => Some(u),
            ArcDir::Reverse => Some(v),
            ArcDir::Loop => None,
        }
    }

    /// Head of the arc on `e`; `None` for loops.
    pub fn head(&self, g: &WeightedGraph, e: EdgeId) -> Option<VertexId> {
        let (u, v) = g.endpoints(e);
        match self.dir[e.0] {
            ArcDir::Forward => Some(v),
            ArcDir::Reverse => Some(u),
            ArcDir::Loop => None,
        }
    }

    /// All arcs as `(edge, tail, head)`, loops omitted.
    pub fn arcs<'a>(
        &'a self,
        g: &'a WeightedGraph,
    ) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + 'a {
        g.edge_ids().filter_map(move |e| {
            let t = self.tail(g, e)?;
            let h = self.head(g, e).expect("non-loop has a head");
            Some((e, t, h))
        })
    }

    pub fn in_edges(&self, g: &WeightedGraph, v: VertexId) -> Vec<EdgeId> {
        g.incident(v)
            .iter()
            .copied()
            .filter(|&e| self.head(g, e) == Some(v))
            .collect()
    }

    pub fn in_degree(&self, g: &WeightedGraph, v: VertexId) -> usize {
        self.in_edges(g, v).len()
    }

    pub fn out_degree(&self, g: &WeightedGraph, v: VertexId) -> usize {
        g.incident(v)
            .iter()
            .filter(|&&e| self.tail(g, e) == Some(v))
            .count()
    }

    pub fn in_weight(&self, g: &WeightedGraph, v: VertexId) -> Weight {
        self.in_edges(g, v).iter().map(|&e| g.weight(e)).sum()
    }
}

/// Topological order of the directed part, or `None` if it has a directed
/// cycle. Loops are ignored. Ties broken by vertex index, so the order is
/// deterministic.
pub fn topological_order(g: &WeightedGraph, o: &Orientation) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut in_deg = vec![0usize; n];
    for (_, _, h) in o.arcs(g) {
        in_deg[h.0] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| in_deg[v] == 0).collect();
    ready.sort_unstable_by(|a, b| b.cmp(a));
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(VertexId(v));
        let mut next = Vec::new();
        for &e in g.incident(VertexId(v)) {
            if o.tail(g, e) == Some(VertexId(v)) {
                let h = o.head(g, e).expect("arc has head");
                in_deg[h.0] -= 1;
                if in_deg[h.0] == 0 {
                    next.push(h.0);
                }
            }
        }
        for h in next {
            let at = ready.partition_point(|&x| x > h);
            ready.insert(at, h);
        }
    }
    (order.len() == n).then_some(order)
}

/// True iff the directed part is acyclic and `o.root()` is the unique
/// vertex of in-degree 0 (the unique source).
pub fn is_r_acyclic_orientation(g: &WeightedGraph, o: &Orientation) -> bool {
    if topological_order(g, o).is_none() {
        return false;
    }
    g.vertices()
        .all(|v| (o.in_degree(g, v) == 0) == (v == o.root()))
}

/// Cheapest single-vertex in-cut over all non-root vertices; ties broken by
/// vertex index. This is the quantity the solver maximizes.
pub fn min_trivial_r_cut(g: &WeightedGraph, o: &Orientation) -> Result<(Weight, VertexId)> {
    let mut best: Option<(Weight, VertexId)> = None;
    for v in g.vertices() {
        if v == o.root() {
            continue;
        }
        let w = o.in_weight(g, v);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, v));
        }
    }
    best.ok_or(Error::SingleVertex)
}

/// Histogram of sinks (out-degree 0 vertices) keyed by their undirected
/// degree, loops not counted.
pub fn sink_census(g: &WeightedGraph, o: &Orientation) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for v in g.vertices() {
        let deg = g.incident(v).iter().filter(|&&e| !g.is_loop(e)).count();
        if o.out_degree(g, v) == 0 {
            *census.entry(deg).or_insert(0) += 1;
        }
    }
    census
}

/// `sum over d of (d - 1) * census[d]`: total in-degree surplus carried by
/// sinks. For a block with `c` chords this is at most `c + 1` in any rooted
/// acyclic orientation.
pub fn sink_excess(census: &BTreeMap<usize, usize>) -> usize {
    census
        .iter()
        .map(|(&d, &count)| d.saturating_sub(1) * count)
        .sum()
}

/// Total excess `sum over v with in-degree >= 1 of (in(v) - 1)`. A complete
/// rooted acyclic orientation of a connected graph has excess
/// `m - (n - 1)`, loops excluded from `m`.
pub fn excess(g: &WeightedGraph, o: &Orientation) -> usize {
    g.vertices()
        .map(|v| o.in_degree(g, v).saturating_sub(1))
        .sum()
}

/// Direction state of one edge in a partially directed graph.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum MixedDir {
    Free,
    Forward,
    Reverse,
    Loop,
}

/// A partially directed orientation: some edges fixed, the rest free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedOrientation {
    pub root: VertexId,
    pub dir: Vec<MixedDir>,
}

impl MixedOrientation {
    pub fn directed_count(&self) -> usize {
        self.dir
            .iter()
            .filter(|d| matches!(d, MixedDir::Forward | MixedDir::Reverse))
            .count()
    }

    pub fn free_edges(&self) -> Vec<EdgeId> {
        self.dir
            .iter()
            .enumerate()
            .filter_map(|(i, d)| (*d == MixedDir::Free).then_some(EdgeId(i)))
            .collect()
    }

    pub fn head(&self, g: &WeightedGraph, e: EdgeId) -> Option<VertexId> {
        let (u, v) = g.endpoints(e);
        match self.dir[e.0] {
            MixedDir::Forward => Some(v),
            MixedDir::Reverse => Some(u),
            MixedDir::Free | MixedDir::Loop => None,
        }
    }

    /// Vertices that already have an in-arc while an incident edge is still
    /// free. Empty on states where every fed vertex is fully decided; the
    /// solver reports these as a diagnostic, they are legal mid-run.
    pub fn partial_condition_violations(&self, g: &WeightedGraph) -> Vec<VertexId> {
        g.vertices()
            .filter(|&v| {
                let fed = g.incident(v).iter().any(|&e| self.head(g, e) == Some(v));
                let free = g
                    .incident(v)
                    .iter()
                    .any(|&e| self.dir[e.0] == MixedDir::Free);
                fed && free
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        !self.dir.contains(&MixedDir::Free)
    }

    pub fn to_orientation(&self, g: &WeightedGraph) -> Result<Orientation> {
        let dir = self
            .dir
            .iter()
            .map(|d| match d {
                MixedDir::Forward => Ok(ArcDir::Forward),
                MixedDir::Reverse => Ok(ArcDir::Reverse),
                MixedDir::Loop => Ok(ArcDir::Loop),
                MixedDir::Free => Err(Error::InvariantViolation(
                    "orientation is incomplete".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Orientation::from_dirs(g, self.root, dir)
    }
}
