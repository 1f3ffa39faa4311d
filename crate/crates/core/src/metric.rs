//! Exact shortest-path metric and minimal graphs.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};

/// Marker stored for unreachable pairs.
pub const UNREACHABLE: i64 = i64::MAX;

/// Largest finite distance accepted. Theta-differences combine four distances,
/// so keeping every distance below `i64::MAX / 4` rules out overflow there.
pub const DISTANCE_LIMIT: i64 = i64::MAX / 4;

/// All-pairs shortest-path distances of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<i64>,
    connected: bool,
}

impl DistanceMatrix {
    /// Assembles a matrix from per-source rows, as produced by [`single_source`].
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        let connected = data.iter().all(|&x| x != UNREACHABLE);
        Ok(Self { n, data, connected })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Raw entry; [`UNREACHABLE`] for pairs in different components.
    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> i64 {
        self.data[u * self.n + v]
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<i64> {
        let d = self.get(u, v);
        (d != UNREACHABLE).then_some(d)
    }

    pub fn row(&self, u: VertexId) -> &[i64] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// Dijkstra from `source` with a binary heap.
pub fn single_source(g: &WeightedGraph, source: VertexId) -> Result<Vec<i64>> {
    let n = g.vertex_count();
    if source >= n {
        return Err(Error::VertexOutOfRange(source));
    }
    let mut dist = vec![UNREACHABLE; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0i64, source)));
    while let Some(Reverse((du, u))) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        for &(v, e) in g.neighbors(u) {
            let w = i64::try_from(g.edge(e).w).map_err(|_| Error::Overflow)?;
            let cand = du.checked_add(w).ok_or(Error::Overflow)?;
            if cand > DISTANCE_LIMIT {
                return Err(Error::Overflow);
            }
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(Reverse((cand, v)));
            }
        }
    }
    Ok(dist)
}

/// Exact all-pairs shortest paths. Disconnected graphs are reported through
/// [`DistanceMatrix::is_connected`], not as an error.
pub fn apsp(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let rows = (0..g.vertex_count())
        .map(|s| single_source(g, s))
        .collect::<Result<Vec<_>>>()?;
    DistanceMatrix::from_rows(rows)
}

/// First edge whose weight exceeds the distance between its endpoints.
pub fn first_non_minimal_edge(g: &WeightedGraph, d: &DistanceMatrix) -> Option<EdgeId> {
    g.edges()
        .iter()
        .position(|e| i64::try_from(e.w).map_or(true, |w| w != d.get(e.u, e.v)))
}

/// Every edge is a shortest path between its endpoints.
pub fn is_minimal(g: &WeightedGraph, d: &DistanceMatrix) -> bool {
    first_non_minimal_edge(g, d).is_none()
}

/// Like [`is_minimal`] but names the offending edge.
pub fn check_minimal(g: &WeightedGraph, d: &DistanceMatrix) -> Result<()> {
    match first_non_minimal_edge(g, d) {
        None => Ok(()),
        Some(edge) => Err(Error::NotMinimal {
            edge,
            weight: g.edge(edge).w,
            distance: d.get(g.edge(edge).u, g.edge(edge).v),
        }),
    }
}

/// Drops every edge that is strictly longer than the distance between its
/// endpoints. The path metric is unchanged.
pub fn minimalize(g: &WeightedGraph) -> Result<WeightedGraph> {
    let d = apsp(g)?;
    minimalize_with(g, &d)
}

pub fn minimalize_with(g: &WeightedGraph, d: &DistanceMatrix) -> Result<WeightedGraph> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g.filter_edges(|_, e| i64::try_from(e.w).is_ok_and(|w| w <= d.get(e.u, e.v))))
}
