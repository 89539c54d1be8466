//! Graphviz DOT export of a witness orientation. Loops carry no direction
//! and are left out of the drawing.

use std::fmt::Write;

use brp_core::solver::Solution;
use brp_core::WeightedGraph;

fn quoted(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(g: &WeightedGraph, sol: &Solution) -> String {
    let mut out = String::new();
    writeln!(out, "digraph brp {{").unwrap();
    writeln!(
        out,
        "  label=\"k = {} from root {}\";",
        sol.k,
        g.name(sol.root)
    )
    .unwrap();
    writeln!(out, "  {} [shape=doublecircle];", quoted(g.name(sol.root))).unwrap();
    for e in g.edge_ids() {
        let (Some(tail), Some(head)) = (sol.orientation.tail(g, e), sol.orientation.head(g, e))
        else {
            continue;
        };
        writeln!(
            out,
            "  {} -> {} [label=\"{}\", id={}];",
            quoted(g.name(tail)),
            quoted(g.name(head)),
            g.weight(e),
            quoted(&g.edge(e).name)
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
