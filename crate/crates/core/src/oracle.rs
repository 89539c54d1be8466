//! Brute-force reference implementation: orientation enumeration, global
//! min-cut, packing verification. Everything here accepts arbitrary
//! connected multigraphs (not just outerplanar ones) and is exponential by
//! design; the `bound` parameters keep it honest about instance size.

use std::collections::HashSet;
use std::fmt;

use crate::digraph::{is_r_acyclic_orientation, min_trivial_r_cut, ArcDir, Orientation};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::packing::ArborescencePacking;
use crate::weight::Weight;
use crate::{Error, Result};

/// Largest vertex count the enumeration routines accept by default.
pub const DEFAULT_BOUND: usize = 9;

fn heap_permutations<F: FnMut(&[usize])>(k: usize, items: &mut [usize], f: &mut F) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, items, f);
        if i < k - 1 {
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
}

/// Enumerates every acyclic orientation of `g` whose unique source is `r`,
/// deduplicated, in a deterministic order. Works on multigraphs: parallel
/// edges orient independently of each other only in name (a vertex order
/// directs them identically), loops stay undirected.
pub fn enumerate_r_acyclic(
    g: &WeightedGraph,
    r: VertexId,
    bound: usize,
) -> Result<Vec<Orientation>> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if r.0 >= g.n() {
        return Err(Error::UnknownVertex(format!("{r}")));
    }
    if g.n() > bound {
        return Err(Error::OracleBound { n: g.n(), bound });
    }
    if g.m() > 128 {
        return Err(Error::InvalidInput(
            "enumeration key supports at most 128 edges".into(),
        ));
    }
    let mut others: Vec<usize> = (0..g.n()).filter(|&v| v != r.0).collect();
    let k = others.len();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    let mut pos = vec![0usize; g.n()];
    heap_permutations(k, &mut others, &mut |perm| {
        pos[r.0] = 0;
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut key = 0u128;
        let mut dirs = Vec::with_capacity(g.m());
        let mut in_deg = vec![0usize; g.n()];
        for e in g.edge_ids() {
            let (u, v) = g.endpoints(e);
            let d = if u == v {
                ArcDir::Loop
            } else if pos[u.0] < pos[v.0] {
                key |= 1u128 << e.0;
                in_deg[v.0] += 1;
                ArcDir::Forward
            } else {
                in_deg[u.0] += 1;
                ArcDir::Reverse
            };
            dirs.push(d);
        }
        if seen.insert(key) {
            let single_source = (0..g.n()).all(|v| (in_deg[v] == 0) == (v == r.0));
            if single_source {
                let o = Orientation::from_dirs(g, r, dirs)
                    .expect("enumerated directions are consistent");
                out.push(o);
            }
        }
    });
    Ok(out)
}

/// Exhaustive routing value: the best minimum trivial cut over every
/// enumerated orientation.
pub fn oracle_k(g: &WeightedGraph, r: VertexId, bound: usize) -> Result<Weight> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() == 1 {
        return Err(Error::SingleVertex);
    }
    let mut best: Option<Weight> = None;
    for o in enumerate_r_acyclic(g, r, bound)? {
        let (cut, _) = min_trivial_r_cut(g, &o)?;
        if best.as_ref().is_none_or(|b| cut > *b) {
            best = Some(cut);
        }
    }
    best.ok_or_else(|| {
        Error::InvariantViolation("connected graph admits no rooted acyclic orientation".into())
    })
}

/// Minimum weight of arcs entering `U` over all nonempty `U` not containing
/// the root, with the first optimal `U` (in subset-mask order) as witness.
pub fn min_global_r_cut(
    g: &WeightedGraph,
    o: &Orientation,
) -> Result<(Weight, Vec<VertexId>)> {
    let r = o.root();
    let others: Vec<VertexId> = g.vertices().filter(|&v| v != r).collect();
    if others.is_empty() {
        return Err(Error::SingleVertex);
    }
    if others.len() > 24 {
        return Err(Error::OracleBound {
            n: g.n(),
            bound: 25,
        });
    }
    let arcs: Vec<(EdgeId, VertexId, VertexId)> = o.arcs(g).collect();
    let mut best: Option<(Weight, Vec<VertexId>)> = None;
    for mask in 1u32..(1u32 << others.len()) {
        let mut inside = vec![false; g.n()];
        for (i, &v) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inside[v.0] = true;
            }
        }
        let w: Weight = arcs
            .iter()
            .filter(|(_, t, h)| !inside[t.0] && inside[h.0])
            .map(|(e, _, _)| g.weight(*e))
            .sum();
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            let subset = others
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (mask & (1 << i) != 0).then_some(v))
                .collect();
            best = Some((w, subset));
        }
    }
    Ok(best.expect("nonempty subset range"))
}

/// Number of (root, orientation) pairs: acyclic orientations with a unique
/// source, summed over every choice of that source.
pub fn count_rooted_acyclic(g: &WeightedGraph, bound: usize) -> Result<u64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut total = 0u64;
    for r in g.vertices() {
        total += enumerate_r_acyclic(g, r, bound)?.len() as u64;
    }
    Ok(total)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PackingFault {
    OrientationInvalid,
    NonPositiveCoefficient { item: usize },
    NotSpanningArborescence { item: usize, reason: String },
    CapacityExceeded { edge: EdgeId, used: Weight, capacity: Weight },
    ValueMismatch { declared: Weight, total: Weight },
    NotOptimal { value: Weight, min_cut: Weight },
}

impl fmt::Display for PackingFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingFault::OrientationInvalid => {
                write!(f, "orientation is not acyclic with the root as unique source")
            }
            PackingFault::NonPositiveCoefficient { item } => {
                write!(f, "item {item} has a zero coefficient")
            }
            PackingFault::NotSpanningArborescence { item, reason } => {
                write!(f, "item {item} is not a spanning arborescence: {reason}")
            }
            PackingFault::CapacityExceeded { edge, used, capacity } => {
                write!(f, "edge {edge} carries {used} over capacity {capacity}")
            }
            PackingFault::ValueMismatch { declared, total } => {
                write!(f, "declared value {declared} != coefficient total {total}")
            }
            PackingFault::NotOptimal { value, min_cut } => {
                write!(f, "packing value {value} below the minimum trivial cut {min_cut}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct PackingReport {
    pub faults: Vec<PackingFault>,
}

impl PackingReport {
    pub fn is_ok(&self) -> bool {
        self.faults.is_empty()
    }
}

impl fmt::Display for PackingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "packing verified");
        }
        writeln!(f, "packing has {} fault(s):", self.faults.len())?;
        for fault in &self.faults {
            writeln!(f, "  - {fault}")?;
        }
        Ok(())
    }
}

/// Independently re-checks a packing against the graph and orientation:
/// every item a spanning arborescence consistent with `o`, capacities
/// respected, declared value correct and equal to the minimum trivial cut.
pub fn verify_packing(
    g: &WeightedGraph,
    o: &Orientation,
    packing: &ArborescencePacking,
) -> PackingReport {
    let mut report = PackingReport::default();
    if !is_r_acyclic_orientation(g, o) {
        report.faults.push(PackingFault::OrientationInvalid);
        return report;
    }
    let root = o.root();
    for (i, item) in packing.items.iter().enumerate() {
        if item.coefficient.is_zero() {
            report
                .faults
                .push(PackingFault::NonPositiveCoefficient { item: i });
        }
        let mut in_count = vec![0usize; g.n()];
        let mut seen_edges = HashSet::new();
        let mut item_ok = true;
        for &e in &item.arcs {
            if e.0 >= g.m() {
                report.faults.push(PackingFault::NotSpanningArborescence {
                    item: i,
                    reason: format!("unknown edge {e}"),
                });
                item_ok = false;
                break;
            }
            if !seen_edges.insert(e) {
                report.faults.push(PackingFault::NotSpanningArborescence {
                    item: i,
                    reason: format!("edge {} repeated", g.edge(e).name),
                });
                item_ok = false;
                break;
            }
            match o.head(g, e) {
                Some(h) => in_count[h.0] += 1,
                None => {
                    report.faults.push(PackingFault::NotSpanningArborescence {
                        item: i,
                        reason: format!("loop {} cannot carry flow", g.edge(e).name),
                    });
                    item_ok = false;
                    break;
                }
            }
        }
        if !item_ok {
            continue;
        }
        // One in-arc per non-root vertex inside an acyclic orientation is
        // automatically connected to the root, so the profile check is the
        // whole arborescence check.
        for v in g.vertices() {
            let expect = usize::from(v != root);
            if in_count[v.0] != expect {
                report.faults.push(PackingFault::NotSpanningArborescence {
                    item: i,
                    reason: format!(
                        "vertex {} has {} in-arcs, expected {}",
                        g.name(v),
                        in_count[v.0],
                        expect
                    ),
                });
                break;
            }
        }
    }
    let used = packing.edge_usage(g.m());
    for e in g.edge_ids() {
        if used[e.0] > *g.weight(e) {
            report.faults.push(PackingFault::CapacityExceeded {
                edge: e,
                used: used[e.0].clone(),
                capacity: g.weight(e).clone(),
            });
        }
    }
    let total: Weight = packing.items.iter().map(|i| &i.coefficient).sum();
    if total != packing.value {
        report.faults.push(PackingFault::ValueMismatch {
            declared: packing.value.clone(),
            total,
        });
    }
    if let Ok((min_cut, _)) = min_trivial_r_cut(g, o) {
        if packing.value != min_cut {
            report.faults.push(PackingFault::NotOptimal {
                value: packing.value.clone(),
                min_cut,
            });
        }
    }
    report
}
