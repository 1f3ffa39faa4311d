//! Witness chains: why each edge sits in its class.
//!
//! Each class is searched breadth-first in its relation graph from its
//! smallest edge; every other member names the edge it was reached from and
//! the relation linking the two.

use std::collections::VecDeque;

use cartfact_core::{EdgeRelationGraph, EquivalenceClasses, WeightedGraph};
use serde_json::{json, Value};

pub fn explain(g: &WeightedGraph, rg: &EdgeRelationGraph, classes: &EquivalenceClasses) -> Value {
    let m = g.edge_count();
    let mut via = vec![None; m];
    let mut seen = vec![false; m];
    let mut out = Vec::with_capacity(classes.len());
    for (k, members) in classes.classes().iter().enumerate() {
        let root = members[0];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, p) in rg.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, p));
                    queue.push_back(y);
                }
            }
        }
        let edges: Vec<Value> = members
            .iter()
            .map(|&e| {
                let edge = g.edge(e);
                let mut v = json!({"id": e, "u": g.label(edge.u), "v": g.label(edge.v), "w": edge.w});
                match via[e] {
                    Some((from, p)) => {
                        v["via"] = json!(from);
                        v["relation"] = json!(p.as_str());
                    }
                    None => v["via"] = Value::Null,
                }
                v
            })
            .collect();
        out.push(json!({"class": k, "root": root, "edges": edges}));
    }
    Value::Array(out)
}
