//! Graph, decomposition and embedding JSON.
//!
//! Graphs look like `{"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "w": 3}]}`.
//! Weights may be positive integers, decimals (`1.5`, `"0.25"`) or fractions
//! (`"3/4"`). Non-integer inputs are scaled by the least common multiple of
//! the denominators, which is reported as `scale`. Output objects have sorted
//! keys; arrays keep input order.

use std::collections::{BTreeMap, HashMap};

use cartfact_core::{Decomposition, HammingEmbedding, Mode, VertexMap, WeightedGraph};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// A graph read from JSON with integer weights `original * scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: WeightedGraph,
    pub scale: u64,
}

fn field(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{path}: {msg}"))
}

/// Positive rational as reduced `(numerator, denominator)`.
fn parse_weight(v: &Value, path: &str) -> Result<(u128, u128), CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(field(path, "weight must be a number or a string")),
    };
    let (num, den) = if let Some((p, q)) = text.split_once('/') {
        let p: u128 = p.trim().parse().map_err(|_| field(path, format!("bad fraction {text:?}")))?;
        let q: u128 = q.trim().parse().map_err(|_| field(path, format!("bad fraction {text:?}")))?;
        if q == 0 {
            return Err(field(path, "zero denominator"));
        }
        (p, q)
    } else if let Some((int, frac)) = text.split_once('.') {
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(field(path, format!("unsupported decimal {text:?}")));
        }
        let den = 10u128.pow(frac.len() as u32);
        let int: u128 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| field(path, format!("bad decimal {text:?}")))?
        };
        let frac_val: u128 = if frac.is_empty() { 0 } else { frac.parse().unwrap_or(0) };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac_val))
            .ok_or_else(|| field(path, "weight too large"))?;
        (num, den)
    } else {
        let p: u128 = text
            .parse()
            .map_err(|_| field(path, format!("weight must be a positive number, got {text:?}")))?;
        (p, 1)
    };
    if num == 0 {
        return Err(field(path, "weight must be positive"));
    }
    let g = gcd(num, den);
    Ok((num / g, den / g))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u128, b: u128) -> Option<u128> {
    (a / gcd(a, b)).checked_mul(b)
}

fn label_of(v: &Value, path: &str) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        _ => Err(field(path, "vertex labels must be strings or integers")),
    }
}

pub fn graph_from_value(root: &Value) -> Result<ParsedGraph, CliError> {
    let obj = root
        .as_object()
        .ok_or_else(|| field("$", "expected an object with \"vertices\" and \"edges\""))?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| field("vertices", "missing or not an array"))?;
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| field("edges", "missing or not an array"))?;

    let mut labels = Vec::with_capacity(vertices.len());
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        let path = format!("vertices[{i}]");
        let label = label_of(v, &path)?;
        if index.insert(label.clone(), i).is_some() {
            return Err(field(&path, format!("duplicate vertex {label:?}")));
        }
        labels.push(label);
    }

    let mut raw = Vec::with_capacity(edges.len());
    let mut scale: u128 = 1;
    for (i, e) in edges.iter().enumerate() {
        let path = format!("edges[{i}]");
        let eo = e.as_object().ok_or_else(|| field(&path, "edge must be an object"))?;
        let end = |key: &str| -> Result<usize, CliError> {
            let p = format!("{path}.{key}");
            let v = eo.get(key).ok_or_else(|| field(&p, "missing"))?;
            let label = label_of(v, &p)?;
            index
                .get(&label)
                .copied()
                .ok_or_else(|| field(&p, format!("unknown vertex {label:?}")))
        };
        let (u, v) = (end("u")?, end("v")?);
        let wp = format!("{path}.w");
        let w = parse_weight(eo.get("w").ok_or_else(|| field(&wp, "missing"))?, &wp)?;
        scale = lcm(scale, w.1).ok_or_else(|| field(&wp, "denominators overflow the scale"))?;
        raw.push((u, v, w, i));
    }
    let mut triples = Vec::with_capacity(raw.len());
    for (u, v, (num, den), i) in raw {
        let w = num
            .checked_mul(scale / den)
            .and_then(|x| u64::try_from(x).ok())
            .ok_or_else(|| field(&format!("edges[{i}].w"), "scaled weight exceeds 64 bits"))?;
        triples.push((u, v, w));
    }
    let graph = WeightedGraph::new(labels, triples).map_err(|e| field("edges", e))?;
    let scale = u64::try_from(scale).map_err(|_| field("edges", "scale exceeds 64 bits"))?;
    Ok(ParsedGraph { graph, scale })
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("JSON: {e}")))?;
    graph_from_value(&root)
}

pub fn graph_to_value(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"u": g.label(e.u), "v": g.label(e.v), "w": e.w}))
        .collect();
    json!({"vertices": g.labels(), "edges": edges})
}

pub fn graph_document(g: &WeightedGraph, scale: u64) -> Value {
    let mut v = graph_to_value(g);
    if scale != 1 {
        v["scale"] = json!(scale);
    }
    v
}

pub fn decomposition_to_value(g: &WeightedGraph, dec: &Decomposition) -> Value {
    let mut map = Map::new();
    for v in 0..g.vertex_count() {
        map.insert(g.label(v).to_string(), json!(dec.image(v)));
    }
    json!({
        "mode": dec.mode.as_str(),
        "factors": dec.factors.iter().map(graph_to_value).collect::<Vec<_>>(),
        "map": Value::Object(map),
        "scale": dec.scale,
    })
}

/// A decomposition as read back from JSON, still keyed by vertex label.
#[derive(Debug, Clone)]
pub struct ParsedDecomposition {
    pub mode: Mode,
    pub factors: Vec<WeightedGraph>,
    pub map: BTreeMap<String, Vec<usize>>,
    pub scale: u64,
}

pub fn parse_decomposition(text: &str) -> Result<ParsedDecomposition, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| field("$", "expected an object"))?;
    let mode = match obj.get("mode").and_then(Value::as_str) {
        Some("factorization") => Mode::Factorization,
        Some("pseudofactorization") => Mode::Pseudofactorization,
        _ => return Err(field("mode", "expected \"factorization\" or \"pseudofactorization\"")),
    };
    let factors = obj
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| field("factors", "missing or not an array"))?
        .iter()
        .enumerate()
        .map(|(i, f)| {
            graph_from_value(f)
                .map(|p| p.graph)
                .map_err(|e| CliError::Parse(format!("factors[{i}].{e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut map = BTreeMap::new();
    for (label, tuple) in obj
        .get("map")
        .and_then(Value::as_object)
        .ok_or_else(|| field("map", "missing or not an object"))?
    {
        let path = format!("map[{label:?}]");
        let coords = tuple
            .as_array()
            .ok_or_else(|| field(&path, "expected an array of component ids"))?
            .iter()
            .map(|c| c.as_u64().map(|x| x as usize).ok_or_else(|| field(&path, "component ids are non-negative integers")))
            .collect::<Result<Vec<_>, _>>()?;
        map.insert(label.clone(), coords);
    }
    let scale = match obj.get("scale") {
        None => 1,
        Some(s) => s
            .as_u64()
            .filter(|&s| s > 0)
            .ok_or_else(|| field("scale", "expected a positive integer"))?,
    };
    Ok(ParsedDecomposition {
        mode,
        factors,
        map,
        scale,
    })
}

impl ParsedDecomposition {
    /// Attaches the map to `g`'s vertices. Every vertex needs a tuple with one
    /// coordinate per factor.
    pub fn resolve(self, g: &WeightedGraph) -> Result<Decomposition, CliError> {
        let k = self.factors.len();
        if self.map.len() != g.vertex_count() {
            return Err(CliError::Contract(cartfact_core::Error::ArityMismatch {
                expected: g.vertex_count(),
                found: self.map.len(),
            }));
        }
        let mut tuples = Vec::with_capacity(g.vertex_count());
        for label in g.labels() {
            let t = self.map.get(label).ok_or_else(|| field("map", format!("no tuple for vertex {label:?}")))?;
            if t.len() != k {
                return Err(CliError::Contract(cartfact_core::Error::ArityMismatch {
                    expected: k,
                    found: t.len(),
                }));
            }
            tuples.push(t.clone());
        }
        let map = VertexMap::from_tuples(k, &tuples).map_err(CliError::Contract)?;
        let m = g.edge_count();
        Ok(Decomposition {
            mode: self.mode,
            factors: self.factors,
            map,
            classes: cartfact_core::EquivalenceClasses::from_labels(&vec![0; m]),
            scale: self.scale,
        })
    }
}

pub fn embedding_to_value(g: &WeightedGraph, e: Option<&HammingEmbedding>) -> Value {
    match e {
        None => json!({"embeddable": false}),
        Some(e) => {
            let mut strings = Map::new();
            for v in 0..g.vertex_count() {
                let s: String = if e.sigma() <= 10 {
                    e.string(v).iter().map(|d| char::from_digit(*d, 10).unwrap()).collect()
                } else {
                    e.string(v).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                };
                strings.insert(g.label(v).to_string(), Value::String(s));
            }
            json!({
                "embeddable": true,
                "dimension": e.dim(),
                "alphabet": e.sigma(),
                "strings": Value::Object(strings),
            })
        }
    }
}

/// Pretty-printed with a trailing newline; keys come out sorted.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
