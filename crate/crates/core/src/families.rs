//! Small named graphs used by tests, examples and the benchmark.

use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{Weight, WeightedGraph};
use crate::product::cartesian_product;

/// Path on `weights.len() + 1` vertices.
pub fn path(weights: &[Weight]) -> Result<WeightedGraph> {
    WeightedGraph::unlabeled(
        weights.len() + 1,
        weights.iter().enumerate().map(|(i, &w)| (i, i + 1, w)),
    )
}

/// Cycle `0-1-...-(k-1)-0` with `weights[i]` on edge `i -> i+1`.
pub fn cycle(weights: &[Weight]) -> Result<WeightedGraph> {
    let n = weights.len();
    WeightedGraph::unlabeled(n, weights.iter().enumerate().map(|(i, &w)| (i, (i + 1) % n, w)))
}

pub fn complete(n: usize, w: Weight) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, w));
        }
    }
    WeightedGraph::unlabeled(n, edges)
}

/// Star with centre 0 and one leaf per weight.
pub fn star(weights: &[Weight]) -> Result<WeightedGraph> {
    WeightedGraph::unlabeled(
        weights.len() + 1,
        weights.iter().enumerate().map(|(i, &w)| (0, i + 1, w)),
    )
}

/// Product of two weighted paths.
pub fn grid(rows: &[Weight], cols: &[Weight]) -> Result<WeightedGraph> {
    cartesian_product(&[path(rows)?, path(cols)?])
}
