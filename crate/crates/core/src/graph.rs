//! Undirected, simple, positively weighted graphs.
//!
//! Vertex ids are dense `0..n`, edge ids dense `0..m` in insertion order. Every
//! edge keeps the orientation it was given; the orientation matters only for the
//! sign of theta-differences, never for adjacency.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Weight = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

impl Edge {
    pub fn has_endpoint(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    /// The single endpoint shared with `other`; `None` if they share zero or two.
    pub fn shared_endpoint(&self, other: &Edge) -> Option<VertexId> {
        let a = other.has_endpoint(self.u);
        let b = other.has_endpoint(self.v);
        match (a, b) {
            (true, false) => Some(self.u),
            (false, true) => Some(self.v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    // sorted by neighbor id
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl WeightedGraph {
    /// Builds a graph from labels and `(u, v, w)` triples.
    ///
    /// Repeated unordered pairs with equal weight collapse into the first
    /// occurrence; repeated pairs with different weights are rejected.
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Weight)>,
    {
        let n = labels.len();
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        let mut kept: Vec<Edge> = Vec::new();
        for (u, v, w) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if w == 0 {
                return Err(Error::NonPositiveWeight { u, v });
            }
            match adj[u].binary_search_by_key(&v, |&(x, _)| x) {
                Ok(pos) => {
                    let first = kept[adj[u][pos].1].w;
                    if first != w {
                        return Err(Error::ConflictingEdge {
                            u,
                            v,
                            first,
                            second: w,
                        });
                    }
                }
                Err(pos) => {
                    let id = kept.len();
                    kept.push(Edge { u, v, w });
                    adj[u].insert(pos, (v, id));
                    let pos_v = adj[v].binary_search_by_key(&u, |&(x, _)| x).unwrap_err();
                    adj[v].insert(pos_v, (u, id));
                }
            }
        }
        Ok(Self {
            labels,
            edges: kept,
            adj,
        })
    }

    /// A graph on `n` vertices labeled `"0"`, `"1"`, ...
    pub fn unlabeled<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Weight)>,
    {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|pos| list[pos].1)
    }

    pub fn weight_between(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        self.edge_between(u, v).map(|e| self.edges[e].w)
    }

    pub fn total_weight(&self) -> Option<Weight> {
        self.edges.iter().try_fold(0u64, |acc, e| acc.checked_add(e.w))
    }

    /// True for the empty graph and for K1.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        self.bfs_order(0).len() == n
    }

    /// Vertices reachable from `start`, in breadth-first order.
    pub fn bfs_order(&self, start: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        order
    }

    /// Keeps only the edges for which `keep` returns true. Labels and vertex
    /// ids are preserved; edge ids are renumbered densely in the old order.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId, &Edge) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, e)| keep(*id, e))
            .map(|(_, e)| (e.u, e.v, e.w));
        Self::new(self.labels.clone(), edges).expect("subgraph of a valid graph is valid")
    }

    /// Relabels vertex `v` as `perm[v]`; the label travels with the vertex.
    pub fn permute_vertices(&self, perm: &[VertexId]) -> Result<Self> {
        let n = self.vertex_count();
        if perm.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut labels = vec![String::new(); n];
        let mut seen = vec![false; n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::VertexOutOfRange(p));
            }
            seen[p] = true;
            labels[p] = self.labels[v].clone();
        }
        Self::new(
            labels,
            self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.w)),
        )
    }

    /// Same graph with edges inserted in the order `order` (a permutation of edge ids).
    pub fn reorder_edges(&self, order: &[EdgeId]) -> Result<Self> {
        if order.len() != self.edge_count() {
            return Err(Error::ArityMismatch {
                expected: self.edge_count(),
                found: order.len(),
            });
        }
        let mut seen = vec![false; self.edge_count()];
        for &e in order {
            if e >= self.edge_count() || seen[e] {
                return Err(Error::EdgeOutOfRange(e));
            }
            seen[e] = true;
        }
        Self::new(
            self.labels.clone(),
            order.iter().map(|&e| {
                let x = self.edges[e];
                (x.u, x.v, x.w)
            }),
        )
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, m={}):", self.vertex_count(), self.edge_count())?;
        for e in &self.edges {
            write!(f, " {}-{}:{}", self.labels[e.u], self.labels[e.v], e.w)?;
        }
        Ok(())
    }
}

/// Per-vertex image tuples, one coordinate per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    arity: usize,
    coords: Vec<usize>,
}

impl VertexMap {
    pub fn new(arity: usize, coords: Vec<usize>) -> Result<Self> {
        if arity == 0 && !coords.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 0,
                found: coords.len(),
            });
        }
        if arity > 0 && !coords.len().is_multiple_of(arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: coords.len() % arity,
            });
        }
        Ok(Self { arity, coords })
    }

    pub fn from_tuples<T: AsRef<[usize]>>(arity: usize, tuples: &[T]) -> Result<Self> {
        let mut coords = Vec::with_capacity(arity * tuples.len());
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: t.len(),
                });
            }
            coords.extend_from_slice(t);
        }
        Ok(Self { arity, coords })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of source vertices. Zero-arity maps carry no coordinates, so
    /// their length is tracked by the caller.
    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.arity).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn image(&self, v: VertexId) -> &[usize] {
        &self.coords[v * self.arity..(v + 1) * self.arity]
    }

    pub fn image_mut(&mut self, v: VertexId) -> &mut [usize] {
        &mut self.coords[v * self.arity..(v + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.coords.chunks(self.arity.max(1))
    }
}
