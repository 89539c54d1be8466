//! Outerplanarity recognition for 2-connected graphs, with a constructive
//! embedding (outer cycle + chords) on acceptance and a concrete witness on
//! rejection, plus the chord structure the solver reasons about.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{biconnected_components, EdgeId, VertexId, WeightedGraph};
use crate::{Error, Result};

/// Evidence that a graph is not outerplanar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// Outerplanar graphs have at most 2n - 3 edges.
    TooManyEdges { n: usize, m: usize },
    /// Two chords of the outer cycle interleave.
    CrossingChords(EdgeId, EdgeId),
    /// No Hamiltonian outer cycle exists (with a short reason).
    NoOuterCycle(&'static str),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::TooManyEdges { n, m } => {
                write!(f, "{m} edges exceed the outerplanar bound {} for {n} vertices", 2 * n - 3)
            }
            Witness::CrossingChords(e, g) => write!(f, "chords {e} and {g} cross"),
            Witness::NoOuterCycle(reason) => write!(f, "no outer cycle: {reason}"),
        }
    }
}

/// Outer structure of a 2-connected outerplanar graph. The cycle starts at
/// the smallest vertex and continues toward its smaller cycle neighbor, so
/// equal graphs get equal embeddings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OuterplanarEmbedding {
    /// The Hamiltonian outer cycle as a vertex sequence (first vertex not
    /// repeated at the end).
    pub outer_cycle: Vec<VertexId>,
    /// `outer_edges[i]` joins `outer_cycle[i]` and `outer_cycle[i + 1]`
    /// (wrapping).
    pub outer_edges: Vec<EdgeId>,
    /// Non-cycle edges, by index.
    pub chords: Vec<EdgeId>,
}

impl OuterplanarEmbedding {
    /// Position of each vertex on the outer cycle.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.outer_cycle.len()];
        for (i, v) in self.outer_cycle.iter().enumerate() {
            pos[v.0] = i;
        }
        pos
    }
}

fn not_outerplanar(g: &WeightedGraph, witness: Witness) -> Error {
    Error::NotOuterplanar {
        block: g.vertex_list(),
        witness,
    }
}

/// Decides outerplanarity for a simple 2-connected graph. Returns the
/// embedding, or an error carrying a witness. The algorithm peels degree-2
/// vertices (adding a virtual edge between their neighbors) down to a
/// triangle, reinserts them to propose an outer cycle, then verifies the
/// proposal against the real edge set, so acceptance is self-checking.
pub fn recognize(g: &WeightedGraph) -> Result<OuterplanarEmbedding> {
    if !g.is_simple() {
        return Err(Error::InvalidInput(
            "outerplanarity recognition requires a simple graph".into(),
        ));
    }
    let n = g.n();
    if n < 3 {
        return Err(Error::NotTwoConnected("fewer than 3 vertices"));
    }
    let (blocks, cuts) = biconnected_components(g)?;
    if blocks.len() != 1 || !cuts.is_empty() {
        return Err(Error::NotTwoConnected("the graph has a cut vertex"));
    }
    if g.m() > 2 * n - 3 {
        return Err(not_outerplanar(
            g,
            Witness::TooManyEdges { n, m: g.m() },
        ));
    }

    // Peel phase, on a scratch adjacency structure that admits virtual edges.
    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        neighbors[u.0].insert(v.0);
        neighbors[v.0].insert(u.0);
    }
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut peeled: Vec<(usize, usize, usize)> = Vec::new();
    while alive_count > 3 {
        let ear = (0..n)
            .find(|&v| alive[v] && neighbors[v].len() == 2)
            .ok_or_else(|| {
                not_outerplanar(
                    g,
                    Witness::NoOuterCycle("every remaining vertex has three or more neighbors"),
                )
            })?;
        let mut it = neighbors[ear].iter();
        let u = *it.next().expect("degree 2");
        let w = *it.next().expect("degree 2");
        alive[ear] = false;
        alive_count -= 1;
        neighbors[u].remove(&ear);
        neighbors[w].remove(&ear);
        neighbors[ear].clear();
        neighbors[u].insert(w);
        neighbors[w].insert(u);
        peeled.push((ear, u, w));
    }
    let base: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let triangle = base
        .iter()
        .all(|&a| base.iter().all(|&b| a == b || neighbors[a].contains(&b)));
    if !triangle {
        return Err(not_outerplanar(
            g,
            Witness::NoOuterCycle("the peel residue is not a triangle"),
        ));
    }

    // Rebuild phase: reinsert each peeled ear between its two neighbors,
    // which must sit next to each other on the cycle built so far.
    let mut cycle: Vec<usize> = base;
    while let Some((ear, u, w)) = peeled.pop() {
        let pu = cycle.iter().position(|&x| x == u).expect("u on cycle");
        let pw = cycle.iter().position(|&x| x == w).expect("w on cycle");
        let len = cycle.len();
        let after = if (pu + 1) % len == pw {
            pu + 1
        } else if (pw + 1) % len == pu {
            pw + 1
        } else {
            return Err(not_outerplanar(
                g,
                Witness::NoOuterCycle("a peeled vertex does not fit between its neighbors"),
            ));
        };
        cycle.insert(after % len.max(1), ear);
    }

    // Canonical start and direction.
    let start = cycle
        .iter()
        .position(|&v| v == cycle.iter().copied().min().expect("nonempty"))
        .expect("min exists");
    cycle.rotate_left(start);
    if cycle[1] > cycle[n - 1] {
        cycle[1..].reverse();
    }

    // Verification phase: the proposal must be a real Hamiltonian cycle and
    // the leftover chords must be pairwise non-crossing.
    let outer_cycle: Vec<VertexId> = cycle.iter().map(|&v| VertexId(v)).collect();
    let mut outer_edges = Vec::with_capacity(n);
    let mut on_cycle = vec![false; g.m()];
    for i in 0..n {
        let a = outer_cycle[i];
        let b = outer_cycle[(i + 1) % n];
        let e = g.edge_between(a, b).ok_or_else(|| {
            not_outerplanar(
                g,
                Witness::NoOuterCycle("the proposed outer cycle skips a missing edge"),
            )
        })?;
        outer_edges.push(e);
        on_cycle[e.0] = true;
    }
    let chords: Vec<EdgeId> = g.edge_ids().filter(|e| !on_cycle[e.0]).collect();
    let embedding = OuterplanarEmbedding {
        outer_cycle,
        outer_edges,
        chords,
    };
    let pos = embedding.positions();
    if let Some((e, f)) = crossing_pair(g, &pos, &embedding.chords) {
        return Err(not_outerplanar(g, Witness::CrossingChords(e, f)));
    }
    Ok(embedding)
}

/// First pair of chords (by index) that interleave around the cycle, if any.
fn crossing_pair(
    g: &WeightedGraph,
    pos: &[usize],
    chords: &[EdgeId],
) -> Option<(EdgeId, EdgeId)> {
    let span = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        let (a, b) = (pos[u.0], pos[v.0]);
        (a.min(b), a.max(b))
    };
    for (i, &e) in chords.iter().enumerate() {
        let (a, b) = span(e);
        for &f in &chords[i + 1..] {
            let (c, d) = span(f);
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Some((e, f));
            }
        }
    }
    None
}

/// How a chord-like object attaches to the rest of the block: either a real
/// chord edge or a maximal chord-free stretch of the outer cycle.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ChordHandle {
    Inner(EdgeId),
    Outer(usize),
}

/// A maximal stretch of the outer cycle between consecutive join vertices
/// (or the whole cycle when there are no chords).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OuterChord {
    /// Path vertices, endpoints included. For the whole-cycle case the
    /// first vertex is repeated at the end.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// A stretch of two or more edges has interior degree-2 vertices and
    /// behaves like a series composition of its edges.
    pub series: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChordClassification {
    /// Endpoints of inner chords.
    pub join_vertices: BTreeSet<VertexId>,
    pub outer_chords: Vec<OuterChord>,
    /// Unordered pairs of chord-like objects sharing a join vertex, each
    /// listed once in `(smaller, larger)` order.
    pub adjacent_pairs: Vec<(ChordHandle, ChordHandle)>,
}

/// Splits the outer cycle at the chord endpoints and reports which
/// chord-like objects touch.
pub fn classify_chords(
    g: &WeightedGraph,
    emb: &OuterplanarEmbedding,
) -> ChordClassification {
    let n = emb.outer_cycle.len();
    let join_vertices: BTreeSet<VertexId> = emb
        .chords
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    let mut outer_chords = Vec::new();
    if join_vertices.is_empty() {
        let mut vertices = emb.outer_cycle.clone();
        vertices.push(emb.outer_cycle[0]);
        outer_chords.push(OuterChord {
            vertices,
            edges: emb.outer_edges.clone(),
            series: emb.outer_edges.len() >= 2,
        });
    } else {
        let join_positions: Vec<usize> = (0..n)
            .filter(|&i| join_vertices.contains(&emb.outer_cycle[i]))
            .collect();
        for (idx, &from) in join_positions.iter().enumerate() {
            let to = join_positions[(idx + 1) % join_positions.len()];
            let mut vertices = vec![emb.outer_cycle[from]];
            let mut edges = Vec::new();
            let mut at = from;
            loop {
                edges.push(emb.outer_edges[at]);
                at = (at + 1) % n;
                vertices.push(emb.outer_cycle[at]);
                if at == to {
                    break;
                }
            }
            outer_chords.push(OuterChord {
                series: edges.len() >= 2,
                vertices,
                edges,
            });
        }
    }

    let mut at_join: Vec<(VertexId, ChordHandle)> = Vec::new();
    for &e in &emb.chords {
        let (u, v) = g.endpoints(e);
        at_join.push((u, ChordHandle::Inner(e)));
        at_join.push((v, ChordHandle::Inner(e)));
    }
    for (i, oc) in outer_chords.iter().enumerate() {
        for &end in [oc.vertices.first(), oc.vertices.last()].into_iter().flatten() {
            if join_vertices.contains(&end) {
                at_join.push((end, ChordHandle::Outer(i)));
            }
        }
    }
    let mut pairs: BTreeSet<(ChordHandle, ChordHandle)> = BTreeSet::new();
    for (i, &(v, a)) in at_join.iter().enumerate() {
        for &(u, b) in &at_join[i + 1..] {
            if v == u && a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    ChordClassification {
        join_vertices,
        outer_chords,
        adjacent_pairs: pairs.into_iter().collect(),
    }
}
