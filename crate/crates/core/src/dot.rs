//! Graphviz rendering: ztype vertices as stars, other vertices as dots,
//! trivial edges dashed, overlays colored.

use std::fmt::Write;

use crate::graph::{GraphOfGroups, VertexKind};
use crate::subgraph::Subgraph;

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders the graph with each overlay drawn in its own color. An element in
/// several overlays takes the color of the first.
pub fn export_dot(g: &GraphOfGroups, overlays: &[(String, Subgraph)]) -> String {
    let color = |hit: &dyn Fn(&Subgraph) -> bool| {
        overlays.iter().position(|(_, s)| hit(s)).map(|i| PALETTE[i % PALETTE.len()])
    };
    let mut out = String::from("graph splitting {\n  node [label=\"\"];\n");
    for (v, d) in g.vertices().iter().enumerate() {
        let shape = if g.is_ztype(v) { "star" } else { "point" };
        let mut attrs = format!("shape={shape}, xlabel={}", quote(&d.id));
        if d.kind == VertexKind::Base {
            attrs.push_str(", peripheries=2");
        }
        if let Some(c) = color(&|s| s.vertices.contains(&v)) {
            let _ = write!(attrs, ", color={c}, fillcolor={c}, style=filled");
        }
        let _ = writeln!(out, "  {} [{attrs}];", quote(&d.id));
    }
    for (e, d) in g.edges().iter().enumerate() {
        let mut attrs = format!("label={}", quote(&d.id));
        if d.is_trivial() {
            attrs.push_str(", style=dashed");
        }
        if let Some(c) = color(&|s| s.edges.contains(&e)) {
            let _ = write!(attrs, ", color={c}, penwidth=2");
        }
        let _ = writeln!(out, "  {} -- {} [{attrs}];", quote(&g.vertex(d.origin).id), quote(&g.vertex(d.terminus).id));
    }
    if !overlays.is_empty() {
        out.push_str("  subgraph cluster_legend {\n    label=\"overlays\";\n");
        for (i, (name, _)) in overlays.iter().enumerate() {
            let _ = writeln!(
                out,
                "    {} [shape=box, label={}, color={}];",
                quote(&format!("legend_{i}")),
                quote(name),
                PALETTE[i % PALETTE.len()]
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
