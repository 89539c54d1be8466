//! Fractional packing of spanning arborescences into an acyclic rooted
//! orientation.

use crate::digraph::{is_r_acyclic_orientation, Orientation};
use crate::graph::{EdgeId, WeightedGraph};
use crate::weight::Weight;
use crate::{Error, Result};

/// One arborescence carrying `coefficient` units of flow. `arcs` holds one
/// in-arc per non-root vertex, sorted by edge index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PackingItem {
    pub coefficient: Weight,
    pub arcs: Vec<EdgeId>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArborescencePacking {
    pub items: Vec<PackingItem>,
    pub value: Weight,
}

impl ArborescencePacking {
    pub fn empty() -> Self {
        ArborescencePacking {
            items: Vec::new(),
            value: Weight::zero(),
        }
    }

    /// Total weight routed through each edge.
    pub fn edge_usage(&self, m: usize) -> Vec<Weight> {
        let mut used = vec![Weight::zero(); m];
        for item in &self.items {
            for &e in &item.arcs {
                used[e.0] += &item.coefficient;
            }
        }
        used
    }
}

/// Greedily packs spanning arborescences rooted at `o.root()` into the
/// orientation, never exceeding edge weights. Each round picks the globally
/// cheapest arc with positive remaining weight (ties by edge index), routes
/// that amount through it for its head, and gives every other non-root
/// vertex its lowest-index in-arc with positive remaining weight; in an
/// acyclic single-source digraph any such selection is a spanning
/// arborescence. Every round lowers every non-root vertex's remaining
/// in-weight by the same amount, so the final value equals the minimum
/// trivial cut of the orientation exactly.
pub fn pack_arborescences(
    g: &WeightedGraph,
    o: &Orientation,
) -> Result<ArborescencePacking> {
    if !is_r_acyclic_orientation(g, o) {
        return Err(Error::InvalidInput(
            "packing requires an acyclic orientation whose unique source is the root".into(),
        ));
    }
    let root = o.root();
    let mut residual: Vec<Weight> = g.edge_ids().map(|e| g.weight(e).clone()).collect();
    for e in g.edge_ids() {
        if g.is_loop(e) {
            residual[e.0] = Weight::zero();
        }
    }
    let mut packing = ArborescencePacking::empty();
    loop {
        let Some(cheapest) = g
            .edge_ids()
            .filter(|e| !residual[e.0].is_zero())
            .min_by(|a, b| residual[a.0].cmp(&residual[b.0]).then(a.cmp(b)))
        else {
            break;
        };
        let lambda = residual[cheapest.0].clone();
        let carrier = o.head(g, cheapest).expect("positive residual is not a loop");
        let mut arcs = Vec::with_capacity(g.n() - 1);
        let mut stuck = false;
        for v in g.vertices() {
            if v == root {
                continue;
            }
            if v == carrier {
                arcs.push(cheapest);
                continue;
            }
            let in_arc = g
                .incident(v)
                .iter()
                .copied()
                .filter(|&e| o.head(g, e) == Some(v) && !residual[e.0].is_zero())
                .min();
            match in_arc {
                Some(e) => arcs.push(e),
                None => {
                    stuck = true;
                    break;
                }
            }
        }
        if stuck {
            break;
        }
        for &e in &arcs {
            residual[e.0] = residual[e.0].checked_sub(&lambda)?;
        }
        arcs.sort();
        packing.value += &lambda;
        packing.items.push(PackingItem {
            coefficient: lambda,
            arcs,
        });
    }
    Ok(packing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::min_trivial_r_cut;
    use crate::graph::VertexId;

    fn w(n: u64) -> Weight {
        Weight::from_integer(n)
    }

    fn fan(weights: [u64; 3]) -> (WeightedGraph, Orientation) {
        // r -> a, r -> b, a -> b.
        let g = WeightedGraph::build(
            vec!["r".into(), "a".into(), "b".into()],
            vec![
                ("ra".into(), "r".into(), "a".into(), w(weights[0])),
                ("rb".into(), "r".into(), "b".into(), w(weights[1])),
                ("ab".into(), "a".into(), "b".into(), w(weights[2])),
            ],
        )
        .unwrap();
        let o = Orientation::from_topological_order(
            &g,
            &[VertexId(0), VertexId(1), VertexId(2)],
        )
        .unwrap();
        (g, o)
    }

    #[test]
    fn packs_the_worked_triangle_exactly() {
        let (g, o) = fan([2, 3, 1]);
        let p = pack_arborescences(&g, &o).unwrap();
        assert_eq!(p.value, w(2));
        assert_eq!(p.items.len(), 2);
        assert_eq!(p.items[0].coefficient, w(1));
        assert_eq!(p.items[0].arcs, vec![EdgeId(0), EdgeId(2)]);
        assert_eq!(p.items[1].coefficient, w(1));
        assert_eq!(p.items[1].arcs, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(p.value, min_trivial_r_cut(&g, &o).unwrap().0);
    }

    #[test]
    fn packing_skips_exhausted_zero_arcs() {
        // A zero-weight arc must not stall the packing below the cut value.
        let (g, o) = fan([5, 3, 0]);
        let p = pack_arborescences(&g, &o).unwrap();
        assert_eq!(p.value, w(3));
        assert_eq!(p.items.len(), 1);
        assert_eq!(p.items[0].coefficient, w(3));
        assert_eq!(p.items[0].arcs, vec![EdgeId(0), EdgeId(1)]);
    }

    #[test]
    fn all_zero_weights_pack_to_empty() {
        let (g, o) = fan([0, 0, 0]);
        let p = pack_arborescences(&g, &o).unwrap();
        assert!(p.items.is_empty());
        assert_eq!(p.value, Weight::zero());
    }

    #[test]
    fn fractional_weights_pack_exactly() {
        let g = WeightedGraph::build(
            vec!["r".into(), "a".into(), "b".into()],
            vec![
                ("ra".into(), "r".into(), "a".into(), "1/2".parse().unwrap()),
                ("rb".into(), "r".into(), "b".into(), "1/3".parse().unwrap()),
                ("ab".into(), "a".into(), "b".into(), "1/6".parse().unwrap()),
            ],
        )
        .unwrap();
        let o = Orientation::from_topological_order(
            &g,
            &[VertexId(0), VertexId(1), VertexId(2)],
        )
        .unwrap();
        let p = pack_arborescences(&g, &o).unwrap();
        assert_eq!(p.value, min_trivial_r_cut(&g, &o).unwrap().0);
        assert_eq!(p.value, "1/2".parse().unwrap());
        let used = p.edge_usage(g.m());
        for e in g.edge_ids() {
            assert!(used[e.0] <= *g.weight(e));
        }
    }

    #[test]
    fn rejects_cyclic_orientation() {
        let g = WeightedGraph::from_indexed(3, &[(0, 1, w(1)), (1, 2, w(1)), (2, 0, w(1))]);
        let o = Orientation::from_dirs(
            &g,
            VertexId(0),
            vec![
                crate::digraph::ArcDir::Forward,
                crate::digraph::ArcDir::Forward,
                crate::digraph::ArcDir::Forward,
            ],
        )
        .unwrap();
        assert!(pack_arborescences(&g, &o).is_err());
    }
}
