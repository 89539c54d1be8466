//! Partially directed orientations driven by sink choices and forced
//! closure. This is the state the solver searches over.

use crate::digraph::{MixedDir, MixedOrientation, Orientation};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::weight::Weight;
use crate::{Error, Result};

/// A partial orientation of a connected loop-free graph, rooted at `root`,
/// grown by `orient_sink` moves. The struct maintains the in-degree excess
/// `f = sum over fed vertices of (in(v) - 1)` incrementally; a complete
/// rooted acyclic orientation has `f = m - (n - 1)` (the target), and no
/// consistent state ever exceeds the target.
///
/// After every public operation the state is closed under forcing: an edge
/// whose two directions cannot both appear in a completion is directed. The
/// rules, each sound for every completion from the current state:
/// no arc may enter the root; no arc may close a directed cycle; a non-root
/// vertex with no in-arc and one free edge takes that edge as its in-arc;
/// once `f` hits the target, no arc may enter an already-fed vertex. At the
/// target these rules either finish the orientation or expose the state as
/// a dead end, which surfaces as `ForcedContradiction`.
#[derive(Clone, Debug)]
pub struct PartialState<'g> {
    g: &'g WeightedGraph,
    root: VertexId,
    dir: Vec<MixedDir>,
    in_deg: Vec<usize>,
    und_deg: Vec<usize>,
    excess: usize,
    target: usize,
    chosen: Vec<VertexId>,
    deltas: Vec<Weight>,
    increment_divergences: usize,
}

impl<'g> PartialState<'g> {
    /// Fresh state: nothing directed, then forced closure (which at least
    /// points every root edge outward).
    pub fn init(g: &'g WeightedGraph, root: VertexId) -> Result<Self> {
        if root.0 >= g.n() {
            return Err(Error::UnknownVertex(format!("{root}")));
        }
        if g.n() == 1 {
            return Err(Error::SingleVertex);
        }
        if g.has_loops() {
            return Err(Error::InvalidInput(
                "orientation states require a loop-free graph".into(),
            ));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut state = PartialState {
            g,
            root,
            dir: vec![MixedDir::Free; g.m()],
            in_deg: vec![0; g.n()],
            und_deg: g.vertices().map(|v| g.degree(v)).collect(),
            excess: 0,
            target: g.m() - (g.n() - 1),
            chosen: Vec::new(),
            deltas: Vec::new(),
            increment_divergences: 0,
        };
        state.forced_closure()?;
        if state.excess > 0 {
            state.increment_divergences += 1;
        }
        Ok(state)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn excess(&self) -> usize {
        self.excess
    }

    pub fn excess_target(&self) -> usize {
        self.target
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_deg[v.0]
    }

    pub fn undirected_degree(&self, v: VertexId) -> usize {
        self.und_deg[v.0]
    }

    pub fn chosen(&self) -> &[VertexId] {
        &self.chosen
    }

    pub fn deltas(&self) -> &[Weight] {
        &self.deltas
    }

    /// Number of moves whose measured excess change disagreed with the
    /// nominal per-move increment `|und(u)| + |in(u)| - 1` (forced closure
    /// can feed other vertices, so disagreement is a diagnostic, not an
    /// error).
    pub fn increment_divergences(&self) -> usize {
        self.increment_divergences
    }

    pub fn is_complete(&self) -> bool {
        !self.dir.contains(&MixedDir::Free)
    }

    /// Recounts the excess from scratch and checks the incremental value.
    pub fn f_excess(&self) -> usize {
        let recounted: usize = self.in_deg.iter().map(|&d| d.saturating_sub(1)).sum();
        assert_eq!(
            recounted, self.excess,
            "incremental excess out of sync with the in-degree table"
        );
        recounted
    }

    /// Weight of the in-cut `v` would end up with if chosen now: current
    /// in-arcs plus all still-free incident edges.
    pub fn delta_of(&self, v: VertexId) -> Weight {
        self.g
            .incident(v)
            .iter()
            .filter(|&&e| self.dir[e.0] == MixedDir::Free || self.head(e) == Some(v))
            .map(|&e| self.g.weight(e))
            .sum()
    }

    /// Final in-cut weight of a fully decided vertex.
    pub fn in_weight(&self, v: VertexId) -> Weight {
        self.g
            .incident(v)
            .iter()
            .filter(|&&e| self.head(e) == Some(v))
            .map(|&e| self.g.weight(e))
            .sum()
    }

    /// Cheapest in-cut already locked in by a fully directed non-root
    /// vertex; no completion of this state can beat it.
    pub fn locked_cut_bound(&self) -> Option<Weight> {
        self.g
            .vertices()
            .filter(|&v| v != self.root && self.und_deg[v.0] == 0)
            .map(|v| self.in_weight(v))
            .min()
    }

    pub fn mixed(&self) -> MixedOrientation {
        MixedOrientation {
            root: self.root,
            dir: self.dir.clone(),
        }
    }

    /// Compact encoding of the direction state, for memoization.
    pub fn state_key(&self) -> Vec<u8> {
        self.dir
            .iter()
            .map(|d| match d {
                MixedDir::Free => 0,
                MixedDir::Forward => 1,
                MixedDir::Reverse => 2,
                MixedDir::Loop => 3,
            })
            .collect()
    }

    pub fn to_orientation(&self) -> Result<Orientation> {
        self.mixed().to_orientation(self.g)
    }

    fn head(&self, e: EdgeId) -> Option<VertexId> {
        let (u, v) = self.g.endpoints(e);
        match self.dir[e.0] {
            MixedDir::Forward => Some(v),
            MixedDir::Reverse => Some(u),
            MixedDir::Free | MixedDir::Loop => None,
        }
    }

    fn tail(&self, e: EdgeId) -> Option<VertexId> {
        let (u, v) = self.g.endpoints(e);
        match self.dir[e.0] {
            MixedDir::Forward => Some(u),
            MixedDir::Reverse => Some(v),
            MixedDir::Free | MixedDir::Loop => None,
        }
    }

    /// Directed path from `from` to `to`?
    fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.g.n()];
        seen[from.0] = true;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &e in self.g.incident(v) {
                if self.tail(e) == Some(v) {
                    let h = self.head(e).expect("directed edge has a head");
                    if h == to {
                        return true;
                    }
                    if !seen[h.0] {
                        seen[h.0] = true;
                        stack.push(h);
                    }
                }
            }
        }
        false
    }

    /// Could `tail -> head` still appear in a completion? Checks the root,
    /// acyclicity, and (at the excess target) the in-degree budget.
    fn direction_allowed(&self, tail: VertexId, head: VertexId) -> bool {
        if head == self.root {
            return false;
        }
        if self.excess == self.target && self.in_deg[head.0] >= 1 {
            return false;
        }
        !self.reaches(head, tail)
    }

    fn orient(&mut self, e: EdgeId, tail: VertexId, head: VertexId) -> Result<()> {
        debug_assert_eq!(self.dir[e.0], MixedDir::Free);
        if !self.direction_allowed(tail, head) {
            return Err(Error::ForcedContradiction(format!(
                "edge {} cannot point from {} to {}",
                self.g.edge(e).name,
                self.g.name(tail),
                self.g.name(head)
            )));
        }
        let (u, _) = self.g.endpoints(e);
        self.dir[e.0] = if tail == u {
            MixedDir::Forward
        } else {
            MixedDir::Reverse
        };
        self.und_deg[tail.0] -= 1;
        self.und_deg[head.0] -= 1;
        if self.in_deg[head.0] >= 1 {
            self.excess += 1;
        }
        self.in_deg[head.0] += 1;
        debug_assert!(self.excess <= self.target);
        Ok(())
    }

    /// Applies every forced direction until none is left. Errors when some
    /// free edge has no legal direction, or when the orientation can no
    /// longer be completed within the excess budget.
    pub fn forced_closure(&mut self) -> Result<()> {
        loop {
            let mut acted = false;
            for v in self.g.vertices() {
                if v == self.root || self.in_deg[v.0] > 0 {
                    continue;
                }
                if self.und_deg[v.0] == 0 {
                    return Err(Error::ForcedContradiction(format!(
                        "vertex {} can no longer receive an arc",
                        self.g.name(v)
                    )));
                }
                if self.und_deg[v.0] != 1 {
                    continue;
                }
                let e = self
                    .g
                    .incident(v)
                    .iter()
                    .copied()
                    .find(|&e| self.dir[e.0] == MixedDir::Free)
                    .expect("counted free edge exists");
                let other = self.g.other_end(e, v);
                self.orient(e, other, v).map_err(|_| {
                    Error::ForcedContradiction(format!(
                        "vertex {} has no remaining way to receive an arc",
                        self.g.name(v)
                    ))
                })?;
                acted = true;
            }
            for e in self.g.edge_ids() {
                if self.dir[e.0] != MixedDir::Free {
                    continue;
                }
                let (a, b) = self.g.endpoints(e);
                let ab = self.direction_allowed(a, b);
                let ba = self.direction_allowed(b, a);
                match (ab, ba) {
                    (false, false) => {
                        return Err(Error::ForcedContradiction(format!(
                            "edge {} has no legal direction",
                            self.g.edge(e).name
                        )));
                    }
                    (true, false) => {
                        self.orient(e, a, b)?;
                        acted = true;
                    }
                    (false, true) => {
                        self.orient(e, b, a)?;
                        acted = true;
                    }
                    (true, true) => {}
                }
            }
            if !acted {
                break;
            }
        }
        if self.excess == self.target && !self.is_complete() {
            return Err(Error::ForcedContradiction(
                "free edges remain but the in-degree budget is spent".into(),
            ));
        }
        Ok(())
    }

    /// Directs every free edge at `u` into `u`, closes under forcing, and
    /// returns the in-cut weight this locks in for `u`.
    pub fn orient_sink(&mut self, u: VertexId) -> Result<Weight> {
        if u == self.root {
            return Err(Error::InvalidInput(
                "the root cannot be chosen as a sink".into(),
            ));
        }
        if self.und_deg[u.0] == 0 {
            return Err(Error::InvalidInput(format!(
                "vertex {} is already fully directed",
                self.g.name(u)
            )));
        }
        let delta = self.delta_of(u);
        let nominal = self.und_deg[u.0] + self.in_deg[u.0] - 1;
        let before = self.excess;
        let free: Vec<EdgeId> = self
            .g
            .incident(u)
            .iter()
            .copied()
            .filter(|&e| self.dir[e.0] == MixedDir::Free)
            .collect();
        for e in free {
            let other = self.g.other_end(e, u);
            self.orient(e, other, u)?;
        }
        self.forced_closure()?;
        if self.excess - before != nominal {
            self.increment_divergences += 1;
        }
        self.chosen.push(u);
        self.deltas.push(delta.clone());
        Ok(delta)
    }
}
