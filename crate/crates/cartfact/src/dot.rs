//! Graphviz export; edges can be coloured by class.

use std::fmt::Write;

use cartfact_core::{EquivalenceClasses, WeightedGraph};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &WeightedGraph, classes: Option<&EquivalenceClasses>) -> String {
    let mut out = String::from("graph G {\n");
    for label in g.labels() {
        let _ = writeln!(out, "  {};", quote(label));
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let _ = write!(
            out,
            "  {} -- {} [label=\"{}\"",
            quote(g.label(edge.u)),
            quote(g.label(edge.v)),
            edge.w
        );
        if let Some(c) = classes {
            let k = c.class_of(e);
            let _ = write!(out, ", color=\"{}\", class=\"{k}\"", PALETTE[k % PALETTE.len()]);
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}
