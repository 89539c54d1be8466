//! JSON instance files: named vertices and named weighted edges, with
//! weights written as exact integer, decimal, or fraction literals.

use serde::{Deserialize, Serialize};

use brp_core::{Result, Weight, WeightedGraph};

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub u: String,
    pub v: String,
    pub w: String,
}

impl InstanceFile {
    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let weight: Weight = e.w.parse()?;
                Ok((e.id.clone(), e.u.clone(), e.v.clone(), weight))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedGraph::build(self.vertices.clone(), edges)
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        InstanceFile {
            vertices: g.vertices().map(|v| g.name(v).to_string()).collect(),
            edges: g
                .edge_ids()
                .map(|e| {
                    let (u, v) = g.endpoints(e);
                    EdgeFile {
                        id: g.edge(e).name.clone(),
                        u: g.name(u).to_string(),
                        v: g.name(v).to_string(),
                        w: g.weight(e).to_string(),
                    }
                })
                .collect(),
        }
    }
}
