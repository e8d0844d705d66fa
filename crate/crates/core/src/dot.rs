//! Graphviz output. Positions come from [`Graph::layout_position`] when the
//! graph provides them, so `neato -n` reproduces the coordinate layout.

use std::fmt::Write;

use crate::graph::{Graph, VertexId};
use crate::tree::SpanningTree;

fn header<G: Graph + ?Sized>(g: &G, out: &mut String) {
    out.push_str("graph G {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..g.vertex_count() {
        let id = VertexId(v);
        let _ = write!(out, "  {v} [label=\"{}\"", g.vertex_label(id));
        if let Some((x, y)) = g.layout_position(id) {
            let _ = write!(out, ", pos=\"{x},{y}!\"");
        }
        out.push_str("];\n");
    }
}

pub fn graph_to_dot<G: Graph + ?Sized>(g: &G) -> String {
    let mut out = String::new();
    header(g, &mut out);
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.lo(), e.hi());
    }
    out.push_str("}\n");
    out
}

/// Tree edges solid, cotree edges dotted and grey.
pub fn tree_to_dot<G: Graph + ?Sized>(g: &G, t: &SpanningTree) -> String {
    let mut out = String::new();
    header(g, &mut out);
    for e in g.edges() {
        if t.contains_edge(e) {
            let _ = writeln!(out, "  {} -- {} [penwidth=2];", e.lo(), e.hi());
        } else {
            let _ = writeln!(out, "  {} -- {} [style=dotted, color=gray];", e.lo(), e.hi());
        }
    }
    out.push_str("}\n");
    out
}
