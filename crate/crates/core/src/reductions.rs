//! Instance reductions: multigraph simplification, block decomposition
//! planning, and lifting results back to the original graph.

use std::collections::{BTreeSet, HashMap};

use crate::digraph::{is_r_acyclic_orientation, ArcDir, Orientation};
use crate::graph::{biconnected_components, EdgeId, Subgraph, VertexId, WeightedGraph};
use crate::packing::{ArborescencePacking, PackingItem};
use crate::weight::Weight;
use crate::{Error, Result};

/// Records how `simplify` folded the original edge set: one class per kept
/// edge (original members in declaration order) plus the dropped loops.
#[derive(Clone, Debug)]
pub struct EdgeMergeMap {
    /// Simplified edge index -> original parallel class.
    pub classes: Vec<Vec<EdgeId>>,
    pub dropped_loops: Vec<EdgeId>,
    class_of: Vec<Option<usize>>,
}

impl EdgeMergeMap {
    /// Class index of an original non-loop edge.
    pub fn class_of(&self, e: EdgeId) -> Option<usize> {
        self.class_of[e.0]
    }
}

/// Collapses parallel edges into one edge carrying the summed weight (named
/// after the first member) and drops loops. Vertices and their order are
/// untouched; classes appear in first-occurrence order.
pub fn simplify(g: &WeightedGraph) -> (WeightedGraph, EdgeMergeMap) {
    let mut classes: Vec<Vec<EdgeId>> = Vec::new();
    let mut class_weights: Vec<Weight> = Vec::new();
    let mut dropped_loops = Vec::new();
    let mut class_of = vec![None; g.m()];
    let mut by_pair: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for e in g.edge_ids() {
        if g.is_loop(e) {
            dropped_loops.push(e);
            continue;
        }
        let (u, v) = g.endpoints(e);
        let key = (u.min(v), u.max(v));
        let idx = *by_pair.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            class_weights.push(Weight::zero());
            classes.len() - 1
        });
        classes[idx].push(e);
        class_weights[idx] += g.weight(e);
        class_of[e.0] = Some(idx);
    }
    let names = g.vertices().map(|v| g.name(v).to_string()).collect();
    let edges = classes
        .iter()
        .zip(&class_weights)
        .map(|(members, w)| {
            let rep = g.edge(members[0]);
            (
                rep.name.clone(),
                g.name(rep.u).to_string(),
                g.name(rep.v).to_string(),
                w.clone(),
            )
        })
        .collect();
    let simple = WeightedGraph::build(names, edges).expect("simplified parts are consistent");
    (
        simple,
        EdgeMergeMap {
            classes,
            dropped_loops,
            class_of,
        },
    )
}

/// One block scheduled for solving: the block subgraph, its local root, and
/// the plan entry it hangs off (None for blocks containing the global root).
#[derive(Clone, Debug)]
pub struct BlockPlanEntry {
    pub block: Subgraph,
    /// Root of this block in parent-graph vertex ids.
    pub root_parent: VertexId,
    /// The same root as a local index into `block.graph`.
    pub root_local: VertexId,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct BlockPlan {
    pub entries: Vec<BlockPlanEntry>,
    pub root: VertexId,
    pub cut_vertices: BTreeSet<VertexId>,
}

/// Orders the blocks of a connected graph outward from `root` along the
/// block-cut tree; each block is rooted at the cut vertex through which the
/// global root reaches it.
pub fn block_plan(g: &WeightedGraph, root: VertexId) -> Result<BlockPlan> {
    if root.0 >= g.n() {
        return Err(Error::UnknownVertex(format!("{root}")));
    }
    let (blocks, cut_vertices) = biconnected_components(g)?;
    let mut vertex_blocks: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            vertex_blocks[v.0].push(i);
        }
    }
    let mut visited = vec![false; blocks.len()];
    let mut entries: Vec<BlockPlanEntry> = Vec::new();
    let mut queue: std::collections::VecDeque<(usize, VertexId, Option<usize>)> =
        std::collections::VecDeque::new();
    for &b in &vertex_blocks[root.0] {
        visited[b] = true;
        queue.push_back((b, root, None));
    }
    let mut blocks: Vec<Option<Subgraph>> = blocks.into_iter().map(Some).collect();
    while let Some((b, root_parent, parent)) = queue.pop_front() {
        let block = blocks[b].take().expect("block scheduled once");
        let root_local = block
            .to_local_vertex(root_parent)
            .expect("block contains its root");
        let entry_index = entries.len();
        for &v in &block.vertices {
            if v == root_parent || !cut_vertices.contains(&v) {
                continue;
            }
            for &nb in &vertex_blocks[v.0] {
                if !visited[nb] {
                    visited[nb] = true;
                    queue.push_back((nb, v, Some(entry_index)));
                }
            }
        }
        entries.push(BlockPlanEntry {
            block,
            root_parent,
            root_local,
            parent,
        });
    }
    if !visited.iter().all(|&v| v) {
        return Err(Error::InvariantViolation(
            "block-cut tree traversal missed a block".into(),
        ));
    }
    Ok(BlockPlan {
        entries,
        root,
        cut_vertices,
    })
}

/// Merges per-block routing results into the whole graph: the composed
/// orientation directs each block as its local result says, and the value
/// is the minimum over blocks. `results[i]` must be rooted at
/// `entries[i].root_local`.
pub fn compose_block_results(
    g: &WeightedGraph,
    plan: &BlockPlan,
    results: &[(Weight, Orientation)],
) -> Result<(Weight, Orientation)> {
    if results.len() != plan.entries.len() {
        return Err(Error::InvalidInput(format!(
            "{} block results for {} planned blocks",
            results.len(),
            plan.entries.len()
        )));
    }
    if plan.entries.is_empty() {
        return Err(Error::SingleVertex);
    }
    let mut dir: Vec<Option<ArcDir>> = vec![None; g.m()];
    for e in g.edge_ids() {
        if g.is_loop(e) {
            dir[e.0] = Some(ArcDir::Loop);
        }
    }
    let mut k: Option<Weight> = None;
    for (entry, (block_k, block_o)) in plan.entries.iter().zip(results) {
        if block_o.root() != entry.root_local {
            return Err(Error::InvalidInput(format!(
                "block result rooted at {} instead of {}",
                block_o.root(),
                entry.root_local
            )));
        }
        for local in entry.block.graph.edge_ids() {
            let parent = entry.block.to_parent_edge(local);
            let tail = block_o
                .tail(&entry.block.graph, local)
                .map(|t| entry.block.to_parent_vertex(t));
            let (pu, _pv) = g.endpoints(parent);
            let d = match tail {
                Some(t) if t == pu => ArcDir::Forward,
                Some(_) => ArcDir::Reverse,
                None => ArcDir::Loop,
            };
            if dir[parent.0].replace(d).is_some() {
                return Err(Error::InvariantViolation(format!(
                    "edge {} oriented by two blocks",
                    g.edge(parent).name
                )));
            }
        }
        if k.as_ref().is_none_or(|cur| block_k < cur) {
            k = Some(block_k.clone());
        }
    }
    let dir = dir
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            d.ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "edge {} not covered by any block",
                    g.edge(EdgeId(i)).name
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let o = Orientation::from_dirs(g, plan.root, dir)?;
    if !is_r_acyclic_orientation(g, &o) {
        return Err(Error::InvariantViolation(
            "composed orientation is not rooted acyclic".into(),
        ));
    }
    Ok((k.expect("at least one block"), o))
}

/// Transfers an orientation of the simplified graph back to the original
/// multigraph: every member of a parallel class follows its class arc,
/// loops stay undirected.
pub fn lift_orientation(
    g: &WeightedGraph,
    simple: &WeightedGraph,
    map: &EdgeMergeMap,
    o: &Orientation,
) -> Result<Orientation> {
    let dir = g
        .edge_ids()
        .map(|e| {
            if g.is_loop(e) {
                return Ok(ArcDir::Loop);
            }
            let class = map.class_of(e).ok_or_else(|| {
                Error::InvariantViolation(format!("edge {} missing from merge map", e))
            })?;
            let tail = o
                .tail(simple, EdgeId(class))
                .expect("simplified graph has no loops");
            let (u, _) = g.endpoints(e);
            Ok(if tail == u {
                ArcDir::Forward
            } else {
                ArcDir::Reverse
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Orientation::from_dirs(g, o.root(), dir)
}

/// Re-expresses a packing over simplified edges as a packing over the
/// original edges, splitting each class's flow across its members in
/// declaration order. Capacity feasibility on the simplified graph
/// guarantees the split never runs dry.
pub fn lift_packing(
    g: &WeightedGraph,
    map: &EdgeMergeMap,
    packing: &ArborescencePacking,
) -> Result<ArborescencePacking> {
    let mut residual: Vec<Weight> = g.edge_ids().map(|e| g.weight(e).clone()).collect();
    let mut items = Vec::new();
    for item in &packing.items {
        let mut remaining = item.coefficient.clone();
        while !remaining.is_zero() {
            let mut arcs = Vec::with_capacity(item.arcs.len());
            let mut portion = remaining.clone();
            for &class_edge in &item.arcs {
                let members = map.classes.get(class_edge.0).ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "packing references unknown simplified edge {class_edge}"
                    ))
                })?;
                let carrier = members
                    .iter()
                    .copied()
                    .find(|&e| !residual[e.0].is_zero())
                    .ok_or_else(|| {
                        Error::InvariantViolation(format!(
                            "parallel class of {} exhausted while lifting",
                            g.edge(members[0]).name
                        ))
                    })?;
                if residual[carrier.0] < portion {
                    portion = residual[carrier.0].clone();
                }
                arcs.push(carrier);
            }
            for &e in &arcs {
                residual[e.0] = residual[e.0].checked_sub(&portion)?;
            }
            arcs.sort();
            remaining = remaining.checked_sub(&portion)?;
            items.push(PackingItem {
                coefficient: portion,
                arcs,
            });
        }
    }
    Ok(ArborescencePacking {
        items,
        value: packing.value.clone(),
    })
}
