//! Exact routing-value computation: a closed form for circuits, a
//! sink-choice search for 2-connected blocks with chords, and the pipeline
//! that simplifies the input, solves each block, and lifts everything back.

use std::collections::HashSet;

use crate::digraph::{is_r_acyclic_orientation, min_trivial_r_cut, ArcDir, Orientation};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::outerplanar::recognize;
use crate::packing::{pack_arborescences, ArborescencePacking};
use crate::partial::PartialState;
use crate::reductions::{
    block_plan, compose_block_results, lift_orientation, lift_packing, simplify,
};
use crate::weight::Weight;
use crate::{Error, Result};

/// Cut certificate for one solved block: the sinks chosen in order, the
/// in-cut each choice locked, and, as the last entry of `deltas`, the
/// cheapest final in-cut among the block's remaining non-root vertices.
/// The block's value is the minimum over `deltas`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockCertificate {
    /// The vertex the block was solved from, in whole-graph ids.
    pub root: VertexId,
    pub deltas: Vec<Weight>,
    /// Chosen sinks in choice order, in whole-graph ids.
    pub sinks: Vec<VertexId>,
}

/// A solved instance: the routing value, an orientation achieving it, an
/// arborescence packing of the same total weight, and one certificate per
/// block. The value is `min` over every certificate entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    pub root: VertexId,
    pub k: Weight,
    pub orientation: Orientation,
    pub packing: ArborescencePacking,
    pub certificates: Vec<BlockCertificate>,
}

/// Per-block result in block-local ids.
struct BlockOutcome {
    k: Weight,
    orientation: Orientation,
    deltas: Vec<Weight>,
    sinks: Vec<VertexId>,
}

/// Vertices and edges of a circuit in cycle order, starting at vertex 0 and
/// moving toward its smaller neighbor; `edges[i]` joins `cycle[i]` and
/// `cycle[(i + 1) % n]`.
fn circuit_order(g: &WeightedGraph) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
    if g.n() < 3 {
        return Err(Error::NotACircuit("fewer than 3 vertices"));
    }
    if !g.is_simple() {
        return Err(Error::NotACircuit("the graph has loops or parallel edges"));
    }
    if !g.is_connected() {
        return Err(Error::NotACircuit("the graph is not connected"));
    }
    for v in g.vertices() {
        if g.degree(v) != 2 {
            return Err(Error::NotACircuit("a vertex does not have degree 2"));
        }
    }
    let start = VertexId(0);
    let (mut cur, mut via) = g
        .incident(start)
        .iter()
        .map(|&e| (g.other_end(e, start), e))
        .min()
        .expect("degree 2");
    let mut cycle = vec![start];
    let mut edges = Vec::with_capacity(g.n());
    loop {
        edges.push(via);
        if cur == start {
            break;
        }
        cycle.push(cur);
        via = g
            .incident(cur)
            .iter()
            .copied()
            .find(|&e| e != via)
            .expect("degree 2");
        cur = g.other_end(via, cur);
    }
    debug_assert_eq!(cycle.len(), g.n());
    Ok((cycle, edges))
}

/// Closed form on a circuit. Choosing sink `s` forces every other non-root
/// vertex to take exactly the cycle edge entering it, so the achievable
/// value is `val(s) = min(sum of the two edges at s, cheapest edge not at
/// s)`, independent of the root. The best sink decides everything.
fn solve_circuit_core(g: &WeightedGraph, forced_root: Option<VertexId>) -> Result<BlockOutcome> {
    let (cycle, cedges) = circuit_order(g)?;
    let n = cycle.len();
    let mut ranked: Vec<EdgeId> = g.edge_ids().collect();
    ranked.sort_by(|a, b| g.weight(*a).cmp(g.weight(*b)).then(a.cmp(b)));
    let cheapest = &ranked[..3];
    let val = |i: usize| -> Weight {
        let s = cycle[i];
        let twosum = g.weight(cedges[(i + n - 1) % n]) + g.weight(cedges[i]);
        let elsewhere = cheapest
            .iter()
            .copied()
            .find(|&e| {
                let (u, v) = g.endpoints(e);
                u != s && v != s
            })
            .expect("three cheapest edges cannot all touch one vertex");
        twosum.min(g.weight(elsewhere).clone())
    };
    let root = match forced_root {
        Some(r) => r,
        None => {
            // Mirror the root-by-root scan: the smallest root that still
            // has a best sink available.
            let best = (0..n).map(&val).max().expect("nonempty cycle");
            let mut maximizers: Vec<VertexId> =
                (0..n).filter(|&i| val(i) == best).map(|i| cycle[i]).collect();
            maximizers.sort();
            if maximizers == [VertexId(0)] {
                VertexId(1)
            } else {
                VertexId(0)
            }
        }
    };
    let (sp, k) = (0..n)
        .filter(|&i| cycle[i] != root)
        .map(|i| (i, val(i)))
        .fold(None::<(usize, Weight)>, |acc, (i, v)| match acc {
            Some((bi, bv)) if bv > v || (bv == v && cycle[bi] < cycle[i]) => Some((bi, bv)),
            _ => Some((i, v)),
        })
        .expect("a circuit has a sink choice for every root");
    let rp = cycle.iter().position(|&v| v == root).ok_or_else(|| {
        Error::UnknownVertex(format!("{root}"))
    })?;

    // Two directed paths from the root to the sink.
    let mut heads: Vec<Option<VertexId>> = vec![None; g.m()];
    let mut j = rp;
    while j != sp {
        heads[cedges[j].0] = Some(cycle[(j + 1) % n]);
        j = (j + 1) % n;
    }
    j = rp;
    while j != sp {
        let prev = (j + n - 1) % n;
        heads[cedges[prev].0] = Some(cycle[prev]);
        j = prev;
    }
    let dir = g
        .edge_ids()
        .map(|e| {
            let h = heads[e.0].expect("both paths together cover the cycle");
            let (_, v) = g.endpoints(e);
            if h == v {
                ArcDir::Forward
            } else {
                ArcDir::Reverse
            }
        })
        .collect();
    let orientation = Orientation::from_dirs(g, root, dir)?;
    let (check, _) = min_trivial_r_cut(g, &orientation)?;
    if check != k {
        return Err(Error::InvariantViolation(format!(
            "circuit orientation scores {check}, expected {k}"
        )));
    }
    let twosum = g.weight(cedges[(sp + n - 1) % n]) + g.weight(cedges[sp]);
    let closing = cheapest
        .iter()
        .copied()
        .find(|&e| {
            let (u, v) = g.endpoints(e);
            u != cycle[sp] && v != cycle[sp]
        })
        .expect("checked above");
    Ok(BlockOutcome {
        k,
        orientation,
        deltas: vec![twosum, g.weight(closing).clone()],
        sinks: vec![cycle[sp]],
    })
}

/// Depth-first search over sink choices with forced closure, for blocks
/// that are not plain circuits. States are memoized by their direction
/// vector; a branch is cut when an already locked in-cut (or the candidate's
/// own locked cut) cannot beat the best completion found so far.
struct Search<'g> {
    g: &'g WeightedGraph,
    best: Option<BlockOutcome>,
    memo: HashSet<Vec<u8>>,
}

impl<'g> Search<'g> {
    fn run(&mut self, state: &PartialState<'g>) -> Result<()> {
        if state.is_complete() {
            let o = state.to_orientation()?;
            if !is_r_acyclic_orientation(self.g, &o) {
                return Err(Error::InvariantViolation(
                    "completed search state is not a rooted acyclic orientation".into(),
                ));
            }
            let (k, _) = min_trivial_r_cut(self.g, &o)?;
            if self.best.as_ref().is_none_or(|b| b.k < k) {
                let chosen: HashSet<VertexId> = state.chosen().iter().copied().collect();
                let mut deltas = state.deltas().to_vec();
                let closing = self
                    .g
                    .vertices()
                    .filter(|&v| v != state.root() && !chosen.contains(&v))
                    .map(|v| state.in_weight(v))
                    .min();
                deltas.extend(closing);
                let witnessed = deltas.iter().min().expect("a non-root vertex exists");
                if *witnessed != k {
                    return Err(Error::InvariantViolation(format!(
                        "certificate minimum {witnessed} disagrees with the cut value {k}"
                    )));
                }
                self.best = Some(BlockOutcome {
                    k,
                    orientation: o,
                    deltas,
                    sinks: state.chosen().to_vec(),
                });
            }
            return Ok(());
        }
        if !self.memo.insert(state.state_key()) {
            return Ok(());
        }
        if let (Some(bound), Some(best)) = (state.locked_cut_bound(), &self.best) {
            if bound <= best.k {
                return Ok(());
            }
        }
        let mut candidates: Vec<(Weight, VertexId)> = self
            .g
            .vertices()
            .filter(|&v| v != state.root() && state.undirected_degree(v) > 0)
            .map(|v| (state.delta_of(v), v))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (delta, v) in candidates {
            // The chosen sink's cut is exactly delta, so a completion below
            // can only win if delta does.
            if self.best.as_ref().is_some_and(|b| delta <= b.k) {
                break;
            }
            let mut next = state.clone();
            match next.orient_sink(v) {
                Ok(_) => self.run(&next)?,
                Err(Error::ForcedContradiction(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }
}

fn search_block(g: &WeightedGraph, root: VertexId) -> Result<BlockOutcome> {
    let init = PartialState::init(g, root)?;
    let mut search = Search {
        g,
        best: None,
        memo: HashSet::new(),
    };
    search.run(&init)?;
    search.best.ok_or_else(|| {
        Error::InvariantViolation("sink search found no completion on a connected block".into())
    })
}

/// Solves one block of a simple graph: a lone bridge completes by closure,
/// a chordless cycle takes the closed form, anything else is searched after
/// outerplanarity recognition.
fn block_outcome(g: &WeightedGraph, root: VertexId) -> Result<BlockOutcome> {
    if g.m() == 1 {
        return search_block(g, root);
    }
    let embedding = recognize(g)?;
    if embedding.chords.is_empty() {
        solve_circuit_core(g, Some(root))
    } else {
        search_block(g, root)
    }
}

fn assemble(
    g: &WeightedGraph,
    root: VertexId,
    k: Weight,
    orientation: Orientation,
    packing: ArborescencePacking,
    certificates: Vec<BlockCertificate>,
) -> Result<Solution> {
    let (cut, _) = min_trivial_r_cut(g, &orientation)?;
    if cut != k {
        return Err(Error::InvariantViolation(format!(
            "witness orientation scores {cut}, expected {k}"
        )));
    }
    if packing.value != k {
        return Err(Error::InvariantViolation(format!(
            "packing totals {}, expected {k}",
            packing.value
        )));
    }
    Ok(Solution {
        root,
        k,
        orientation,
        packing,
        certificates,
    })
}

/// Routing value of a circuit, with the root chosen freely when `root` is
/// `None` (ties resolved toward the smallest vertex id, matching a
/// root-by-root scan). Input must be a chordless cycle.
pub fn solve_circuit(g: &WeightedGraph, root: Option<VertexId>) -> Result<Solution> {
    if let Some(r) = root {
        if r.0 >= g.n() {
            return Err(Error::UnknownVertex(format!("{r}")));
        }
    }
    let outcome = solve_circuit_core(g, root)?;
    let packing = pack_arborescences(g, &outcome.orientation)?;
    let chosen_root = outcome.orientation.root();
    assemble(
        g,
        chosen_root,
        outcome.k,
        outcome.orientation,
        packing,
        vec![BlockCertificate {
            root: chosen_root,
            deltas: outcome.deltas,
            sinks: outcome.sinks,
        }],
    )
}

/// Routing value of a connected outerplanar multigraph from a fixed root.
/// Parallel edges are merged, loops dropped, each block of the block-cut
/// tree is solved from the cut vertex facing the root, and the witnesses
/// are lifted back to the original edges.
pub fn solve_rbrp(g: &WeightedGraph, root: VertexId) -> Result<Solution> {
    if root.0 >= g.n() {
        return Err(Error::UnknownVertex(format!("{root}")));
    }
    if g.n() == 1 {
        return Err(Error::SingleVertex);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (simple, map) = simplify(g);
    let plan = block_plan(&simple, root)?;
    let mut results = Vec::with_capacity(plan.entries.len());
    let mut certificates = Vec::with_capacity(plan.entries.len());
    for entry in &plan.entries {
        let outcome = block_outcome(&entry.block.graph, entry.root_local)?;
        certificates.push(BlockCertificate {
            root: entry.root_parent,
            deltas: outcome.deltas,
            sinks: outcome
                .sinks
                .iter()
                .map(|&v| entry.block.to_parent_vertex(v))
                .collect(),
        });
        results.push((outcome.k, outcome.orientation));
    }
    let (k, simple_orientation) = compose_block_results(&simple, &plan, &results)?;
    let orientation = lift_orientation(g, &simple, &map, &simple_orientation)?;
    let packing = lift_packing(g, &map, &pack_arborescences(&simple, &simple_orientation)?)?;
    assemble(g, root, k, orientation, packing, certificates)
}

/// Routing value of a connected outerplanar multigraph with a free root:
/// the best `solve_rbrp` over all roots, ties toward the smallest id.
pub fn solve_brp(g: &WeightedGraph) -> Result<Solution> {
    let mut best: Option<Solution> = None;
    for r in g.vertices() {
        let sol = solve_rbrp(g, r)?;
        if best.as_ref().is_none_or(|b| b.k < sol.k) {
            best = Some(sol);
        }
    }
    best.ok_or(Error::EmptyGraph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_k, verify_packing, DEFAULT_BOUND};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: u64) -> Weight {
        Weight::from_integer(n)
    }

    fn cycle(weights: &[u64]) -> WeightedGraph {
        let n = weights.len();
        let edges: Vec<(usize, usize, Weight)> = weights
            .iter()
            .enumerate()
            .map(|(i, &x)| (i, (i + 1) % n, w(x)))
            .collect();
        WeightedGraph::from_indexed(n, &edges)
    }

    #[test]
    fn single_edge_block_solves_at_its_weight() {
        let g = WeightedGraph::from_indexed(2, &[(0, 1, w(7))]);
        let sol = solve_rbrp(&g, VertexId(0)).unwrap();
        assert_eq!(sol.k, w(7));
        assert_eq!(sol.orientation.head(&g, EdgeId(0)), Some(VertexId(1)));
        assert_eq!(sol.certificates.len(), 1);
        assert_eq!(sol.certificates[0].deltas, vec![w(7)]);
        assert!(sol.certificates[0].sinks.is_empty());
        assert!(verify_packing(&g, &sol.orientation, &sol.packing).is_ok());
    }

    #[test]
    fn heavy_pair_circuit_needs_the_global_view() {
        // The two heavy edges meet at vertex 1; every other sink choice is
        // capped by a zero edge somewhere else on the cycle.
        let g = cycle(&[0, 18, 8, 9, 18]);
        let sol = solve_circuit(&g, Some(VertexId(0))).unwrap();
        assert_eq!(sol.k, w(8));
        assert_eq!(sol.certificates[0].sinks, vec![VertexId(1)]);
        assert_eq!(sol.certificates[0].deltas, vec![w(18), w(8)]);
        let searched = search_block(&g, VertexId(0)).unwrap();
        assert_eq!(searched.k, w(8));
    }

    #[test]
    fn tied_circuit_prefers_the_smallest_sink() {
        let g = cycle(&[0, 9, 4, 5, 9]);
        let sol = solve_circuit(&g, Some(VertexId(0))).unwrap();
        assert_eq!(sol.k, w(4));
        assert_eq!(sol.certificates[0].sinks, vec![VertexId(1)]);
        assert_eq!(search_block(&g, VertexId(0)).unwrap().k, w(4));
    }

    #[test]
    fn chord_search_feeds_two_vertices_twice_when_it_pays() {
        // Square 0-1-2-3 with chord 0-2; both zero edges sit at the root, so
        // the only way to protect vertices 1 and 2 is to give each a second
        // in-arc.
        let g = WeightedGraph::from_indexed(
            4,
            &[
                (0, 1, w(0)),
                (1, 2, w(5)),
                (2, 3, w(5)),
                (3, 0, w(5)),
                (0, 2, w(0)),
            ],
        );
        let sol = solve_rbrp(&g, VertexId(0)).unwrap();
        assert_eq!(sol.k, w(5));
        assert_eq!(sol.certificates[0].sinks, vec![VertexId(1), VertexId(2)]);
        assert_eq!(sol.certificates[0].deltas, vec![w(5), w(5), w(5)]);
        assert!(verify_packing(&g, &sol.orientation, &sol.packing).is_ok());
        assert_eq!(oracle_k(&g, VertexId(0), DEFAULT_BOUND).unwrap(), w(5));
    }

    #[test]
    fn square_routes_one_unit_from_every_root() {
        let g = cycle(&[2, 1, 2, 1]);
        for r in g.vertices() {
            assert_eq!(solve_rbrp(&g, r).unwrap().k, w(1));
        }
        let free = solve_brp(&g).unwrap();
        assert_eq!(free.root, VertexId(0));
        assert_eq!(free.k, w(1));
    }

    #[test]
    fn random_circuits_agree_between_closed_form_and_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=7 {
            for _ in 0..3 {
                let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=10)).collect();
                let g = cycle(&weights);
                for r in g.vertices() {
                    let closed = solve_circuit(&g, Some(r)).unwrap();
                    let searched = search_block(&g, r).unwrap();
                    assert_eq!(closed.k, searched.k, "weights {weights:?} root {r}");
                }
            }
        }
    }

    #[test]
    fn fan_matches_the_oracle_from_every_root() {
        let g = WeightedGraph::from_indexed(
            6,
            &[
                (0, 1, w(1)),
                (1, 2, w(2)),
                (2, 3, w(1)),
                (3, 4, w(3)),
                (4, 5, w(1)),
                (5, 0, w(2)),
                (0, 2, w(1)),
                (0, 3, w(2)),
                (0, 4, w(1)),
            ],
        );
        for r in g.vertices() {
            let sol = solve_rbrp(&g, r).unwrap();
            assert_eq!(sol.k, oracle_k(&g, r, DEFAULT_BOUND).unwrap(), "root {r}");
            assert!(verify_packing(&g, &sol.orientation, &sol.packing).is_ok());
            let cert_min = sol
                .certificates
                .iter()
                .flat_map(|c| c.deltas.iter())
                .min()
                .unwrap();
            assert_eq!(*cert_min, sol.k);
        }
    }

    #[test]
    fn block_chain_takes_the_weakest_block() {
        // Triangle (5s), bridge (1), triangle (4s).
        let g = WeightedGraph::from_indexed(
            6,
            &[
                (0, 1, w(5)),
                (1, 2, w(5)),
                (2, 0, w(5)),
                (2, 3, w(1)),
                (3, 4, w(4)),
                (4, 5, w(4)),
                (5, 3, w(4)),
            ],
        );
        let sol = solve_rbrp(&g, VertexId(1)).unwrap();
        assert_eq!(sol.k, w(1));
        assert_eq!(sol.certificates.len(), 3);
        assert_eq!(sol.certificates[0].root, VertexId(1));
        assert_eq!(sol.certificates[1].root, VertexId(2));
        assert_eq!(sol.certificates[2].root, VertexId(3));
        let cert_min = sol
            .certificates
            .iter()
            .flat_map(|c| c.deltas.iter())
            .min()
            .unwrap();
        assert_eq!(*cert_min, w(1));
        assert!(verify_packing(&g, &sol.orientation, &sol.packing).is_ok());
    }

    #[test]
    fn multigraph_pipeline_lifts_orientation_and_packing() {
        let g = WeightedGraph::from_indexed(
            3,
            &[(0, 1, w(2)), (1, 0, w(3)), (1, 2, w(4)), (2, 2, w(9))],
        );
        let sol = solve_rbrp(&g, VertexId(0)).unwrap();
        assert_eq!(sol.k, w(4));
        assert_eq!(sol.orientation.head(&g, EdgeId(0)), Some(VertexId(1)));
        assert_eq!(sol.orientation.head(&g, EdgeId(1)), Some(VertexId(1)));
        assert_eq!(sol.orientation.dir(EdgeId(3)), ArcDir::Loop);
        assert_eq!(sol.certificates.len(), 2);
        assert!(verify_packing(&g, &sol.orientation, &sol.packing).is_ok());
    }

    #[test]
    fn tree_value_is_the_lightest_edge_from_any_root() {
        let g = WeightedGraph::from_indexed(4, &[(0, 1, w(3)), (0, 2, w(1)), (0, 3, w(2))]);
        for r in g.vertices() {
            assert_eq!(solve_rbrp(&g, r).unwrap().k, w(1));
        }
        assert_eq!(solve_brp(&g).unwrap().root, VertexId(0));
    }

    #[test]
    fn free_root_circuit_matches_the_rooted_scan() {
        // val peaks strictly at vertex 0, so the scan settles on root 1.
        let g = cycle(&[2, 9, 2]);
        let closed = solve_circuit(&g, None).unwrap();
        let scanned = solve_brp(&g).unwrap();
        assert_eq!(closed.root, VertexId(1));
        assert_eq!(closed.k, w(4));
        assert_eq!(scanned.root, closed.root);
        assert_eq!(scanned.k, closed.k);

        let uniform = cycle(&[1, 1, 1, 1]);
        let closed = solve_circuit(&uniform, None).unwrap();
        let scanned = solve_brp(&uniform).unwrap();
        assert_eq!(closed.root, VertexId(0));
        assert_eq!(closed.k, w(1));
        assert_eq!(scanned.root, closed.root);
        assert_eq!(scanned.k, closed.k);
    }

    #[test]
    fn rejects_bad_roots_and_bad_shapes() {
        let square = cycle(&[1, 1, 1, 1]);
        assert!(matches!(
            solve_rbrp(&square, VertexId(9)),
            Err(Error::UnknownVertex(_))
        ));
        let lonely = WeightedGraph::build(vec!["v".into()], vec![]).unwrap();
        assert!(matches!(
            solve_rbrp(&lonely, VertexId(0)),
            Err(Error::SingleVertex)
        ));
        let split = WeightedGraph::from_indexed(4, &[(0, 1, w(1)), (2, 3, w(1))]);
        assert!(matches!(
            solve_rbrp(&split, VertexId(0)),
            Err(Error::Disconnected)
        ));
        let k4 = WeightedGraph::from_indexed(
            4,
            &[
                (0, 1, w(1)),
                (0, 2, w(1)),
                (0, 3, w(1)),
                (1, 2, w(1)),
                (1, 3, w(1)),
                (2, 3, w(1)),
            ],
        );
        assert!(matches!(
            solve_rbrp(&k4, VertexId(0)),
            Err(Error::NotOuterplanar { .. })
        ));
        let path = WeightedGraph::from_indexed(3, &[(0, 1, w(1)), (1, 2, w(1))]);
        assert!(matches!(
            solve_circuit(&path, None),
            Err(Error::NotACircuit(_))
        ));
    }

    #[test]
    fn solution_reports_the_requested_root() {
        let g = cycle(&[2, 1, 2, 1]);
        let sol = solve_rbrp(&g, VertexId(2)).unwrap();
        assert_eq!(sol.root, VertexId(2));
        assert_eq!(sol.orientation.root(), VertexId(2));
    }
}
