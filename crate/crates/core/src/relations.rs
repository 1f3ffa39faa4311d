//! Edge relations on a weighted graph and their equivalence classes.
//!
//! All tests are exact integer tests on the distance matrix. Two edges are
//! theta-related when their theta-difference is nonzero; tau relates adjacent
//! edges that do not bound a suitable square. Relation graphs have one node per
//! edge id, and their connected components are the classes of the transitive
//! closure.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, VertexId, WeightedGraph};
use crate::metric::DistanceMatrix;

/// `[d(u,a) - d(u,b)] - [d(v,a) - d(v,b)]` for `e = uv`, `f = ab`.
///
/// The sign follows the stored edge orientation; whether it is zero does not.
#[inline]
pub fn theta_difference(d: &DistanceMatrix, e: &Edge, f: &Edge) -> i64 {
    (d.get(e.u, f.u) - d.get(e.u, f.v)) - (d.get(e.v, f.u) - d.get(e.v, f.v))
}

#[inline]
pub fn theta_related(d: &DistanceMatrix, e: &Edge, f: &Edge) -> bool {
    theta_difference(d, e, f) != 0
}

/// Edges `e = uv` and `f = uv'` sharing the endpoint `u` satisfy the square
/// property when some `x` closes a four-cycle `u v x v'` whose opposite sides
/// have equal weights and are theta-related.
pub fn satisfies_square_property(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    e: EdgeId,
    f: EdgeId,
) -> Result<bool> {
    let (ee, fe) = (edge_checked(g, e)?, edge_checked(g, f)?);
    let u = ee.shared_endpoint(fe).ok_or(Error::NoSharedEndpoint(e, f))?;
    let v = ee.other(u).expect("u is an endpoint of e");
    let v2 = fe.other(u).expect("u is an endpoint of f");

    // Common neighbours of v and v' by merging the sorted adjacency lists.
    let (a, b) = (g.neighbors(v), g.neighbors(v2));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                let x = a[i].0;
                if x != u {
                    let xv = g.edge(a[i].1);
                    let xv2 = g.edge(b[j].1);
                    if ee.w == xv2.w
                        && fe.w == xv.w
                        && theta_related(d, ee, xv2)
                        && theta_related(d, fe, xv)
                    {
                        return Ok(true);
                    }
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(false)
}

/// Adjacent edges failing the square property. Edges without a common
/// endpoint (and an edge paired with itself) are never tau-related.
pub fn tau_related(g: &WeightedGraph, d: &DistanceMatrix, e: EdgeId, f: EdgeId) -> bool {
    if e == f || e >= g.edge_count() || f >= g.edge_count() {
        return false;
    }
    if g.edge(e).shared_endpoint(g.edge(f)).is_none() {
        return false;
    }
    !satisfies_square_property(g, d, e, f).expect("edges share exactly one endpoint")
}

fn edge_checked(g: &WeightedGraph, e: EdgeId) -> Result<&Edge> {
    g.edges().get(e).ok_or(Error::EdgeOutOfRange(e))
}

/// A validated spanning tree, stored as a membership mask over edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
    edges: Vec<EdgeId>,
}

impl SpanningTree {
    pub fn new(g: &WeightedGraph, edges: &[EdgeId]) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::NotSpanningTree("graph has no vertices"));
        }
        if edges.len() != n - 1 {
            return Err(Error::NotSpanningTree("edge count is not n - 1"));
        }
        let mut in_tree = vec![false; g.edge_count()];
        let mut uf = UnionFind::new(n);
        for &e in edges {
            let edge = edge_checked(g, e)?;
            if in_tree[e] {
                return Err(Error::NotSpanningTree("repeated edge"));
            }
            in_tree[e] = true;
            if !uf.union(edge.u, edge.v) {
                return Err(Error::NotSpanningTree("edges contain a cycle"));
            }
        }
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        Ok(Self {
            in_tree,
            edges: sorted,
        })
    }

    /// Breadth-first spanning tree from vertex 0, neighbours in ascending order.
    pub fn bfs(g: &WeightedGraph) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::NotSpanningTree("graph has no vertices"));
        }
        let mut seen = vec![false; n];
        let mut edges = Vec::with_capacity(n - 1);
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    edges.push(e);
                    queue.push_back(y);
                }
            }
        }
        if edges.len() != n - 1 {
            return Err(Error::Disconnected);
        }
        Self::new(g, &edges)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree.get(e).copied().unwrap_or(false)
    }

    /// Tree edge ids in ascending order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }
}

/// Theta-related with at least one of the two edges in the tree.
pub fn theta_t_related(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    tree: &SpanningTree,
    e: EdgeId,
    f: EdgeId,
) -> bool {
    (tree.contains(e) || tree.contains(f)) && theta_related(d, g.edge(e), g.edge(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Theta,
    Tau,
    ThetaTree,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Theta => "theta",
            Provenance::Tau => "tau",
            Provenance::ThetaTree => "theta_T",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum RelationKind<'a> {
    Theta,
    ThetaUnionTau,
    ThetaTree(&'a SpanningTree),
}

/// Unweighted graph on edge ids. Adjacency is symmetric and carries the
/// relation that produced it; self-relations are implicit and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRelationGraph {
    adj: Vec<Vec<(EdgeId, Provenance)>>,
}

impl EdgeRelationGraph {
    pub fn empty(m: usize) -> Self {
        Self {
            adj: vec![Vec::new(); m],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, e: EdgeId) -> &[(EdgeId, Provenance)] {
        &self.adj[e]
    }

    pub fn adjacency_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_adjacency(&self, e: EdgeId, f: EdgeId) -> bool {
        self.adj[e].iter().any(|&(x, _)| x == f)
    }

    /// Each unordered adjacency once, as `(smaller, larger, provenance)`.
    pub fn adjacencies(&self) -> impl Iterator<Item = (EdgeId, EdgeId, Provenance)> + '_ {
        self.adj.iter().enumerate().flat_map(|(e, list)| {
            list.iter()
                .filter(move |&&(f, _)| e < f)
                .map(move |&(f, p)| (e, f, p))
        })
    }

    pub fn add(&mut self, e: EdgeId, f: EdgeId, p: Provenance) {
        self.adj[e].push((f, p));
        self.adj[f].push((e, p));
    }
}

/// Builds the relation graph of `kind`.
///
/// For `ThetaUnionTau` the theta adjacencies are computed over all pairs; tau
/// adjacencies come from scanning theta-related equal-weight disjoint pairs for
/// completing squares (which marks adjacent pairs as not tau-related), then
/// relating every remaining adjacent pair.
pub fn build_relation_graph(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    kind: RelationKind<'_>,
) -> EdgeRelationGraph {
    let m = g.edge_count();
    let edges = g.edges();
    let mut rg = EdgeRelationGraph::empty(m);
    match kind {
        RelationKind::Theta | RelationKind::ThetaUnionTau => {
            for i in 0..m {
                for j in i + 1..m {
                    if theta_related(d, &edges[i], &edges[j]) {
                        rg.add(i, j, Provenance::Theta);
                    }
                }
            }
            if let RelationKind::ThetaUnionTau = kind {
                add_tau_adjacencies(g, d, &mut rg);
            }
        }
        RelationKind::ThetaTree(tree) => {
            for &t in tree.edges() {
                for f in 0..m {
                    if f == t || (tree.contains(f) && f < t) {
                        continue;
                    }
                    if theta_related(d, &edges[t], &edges[f]) {
                        rg.add(t, f, Provenance::ThetaTree);
                    }
                }
            }
        }
    }
    rg
}

fn ordered(e: EdgeId, f: EdgeId) -> (EdgeId, EdgeId) {
    if e < f {
        (e, f)
    } else {
        (f, e)
    }
}

fn add_tau_adjacencies(g: &WeightedGraph, d: &DistanceMatrix, rg: &mut EdgeRelationGraph) {
    let edges = g.edges();
    let mut not_tau: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
    let theta_pairs: Vec<(EdgeId, EdgeId)> = rg
        .adjacencies()
        .filter(|&(_, _, p)| p == Provenance::Theta)
        .map(|(e, f, _)| (e, f))
        .collect();
    for (i, j) in theta_pairs {
        let (ab, cd) = (&edges[i], &edges[j]);
        if ab.w != cd.w {
            continue;
        }
        let (a, b, c, x) = (ab.u, ab.v, cd.u, cd.v);
        if a == c || a == x || b == c || b == x {
            continue;
        }
        // The square closes either as a-c, b-x or as a-x, b-c.
        for (p, q) in [(c, x), (x, c)] {
            let (Some(ap), Some(bq)) = (g.edge_between(a, p), g.edge_between(b, q)) else {
                continue;
            };
            if edges[ap].w == edges[bq].w && theta_related(d, &edges[ap], &edges[bq]) {
                for pair in [(i, ap), (i, bq), (j, ap), (j, bq)] {
                    not_tau.insert(ordered(pair.0, pair.1));
                }
            }
        }
    }
    for v in 0..g.vertex_count() {
        let inc = g.neighbors(v);
        for s in 0..inc.len() {
            for t in s + 1..inc.len() {
                let pair = ordered(inc[s].1, inc[t].1);
                if !not_tau.contains(&pair) {
                    rg.add(pair.0, pair.1, Provenance::Tau);
                }
            }
        }
    }
}

/// Partition of edge ids into classes: classes sorted by smallest member,
/// members sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquivalenceClasses {
    class_of: Vec<usize>,
    classes: Vec<Vec<EdgeId>>,
}

impl EquivalenceClasses {
    /// Canonicalises an arbitrary labelling `labels[e]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: Vec<Option<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<EdgeId>> = Vec::new();
        for (e, &l) in labels.iter().enumerate() {
            if l >= remap.len() {
                remap.resize(l + 1, None);
            }
            let id = *remap[l].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of.push(id);
            classes[id].push(e);
        }
        Self { class_of, classes }
    }

    /// Checks that `classes` is a partition of `0..m` and canonicalises it.
    pub fn from_partition(m: usize, classes: &[Vec<EdgeId>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; m];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::NotAPartition);
            }
            for &e in class {
                if e >= m || labels[e] != usize::MAX {
                    return Err(Error::NotAPartition);
                }
                labels[e] = k;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::NotAPartition);
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, e: EdgeId) -> usize {
        self.class_of[e]
    }

    pub fn members(&self, k: usize) -> &[EdgeId] {
        &self.classes[k]
    }

    pub fn classes(&self) -> &[Vec<EdgeId>] {
        &self.classes
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }
}

/// Connected components of the relation graph, by breadth-first search.
pub fn equivalence_classes(rg: &EdgeRelationGraph) -> EquivalenceClasses {
    let m = rg.node_count();
    let mut label = vec![usize::MAX; m];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for s in 0..m {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in rg.neighbors(x) {
                if label[y] == usize::MAX {
                    label[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    EquivalenceClasses::from_labels(&label)
}

/// Classes of the transitive closure of theta.
pub fn theta_classes(g: &WeightedGraph, d: &DistanceMatrix) -> EquivalenceClasses {
    equivalence_classes(&build_relation_graph(g, d, RelationKind::Theta))
}

/// Classes of the transitive closure of theta united with tau.
pub fn factor_classes(g: &WeightedGraph, d: &DistanceMatrix) -> EquivalenceClasses {
    equivalence_classes(&build_relation_graph(g, d, RelationKind::ThetaUnionTau))
}

/// Sum over the walk's edges in class `k` of
/// `[d(u,p_i) - d(u,p_{i+1})] - [d(v,p_i) - d(v,p_{i+1})]`, where `u` and `v`
/// are the first and last vertex of the walk.
///
/// The value depends only on `u`, `v` and `k`, not on the walk chosen.
pub fn class_path_sum(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    classes: &EquivalenceClasses,
    walk: &[VertexId],
    k: usize,
) -> Result<i64> {
    let (Some(&u), Some(&v)) = (walk.first(), walk.last()) else {
        return Ok(0);
    };
    if let Some(&bad) = walk.iter().find(|&&x| x >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange(bad));
    }
    let mut total = 0i64;
    for step in walk.windows(2) {
        let (p, q) = (step[0], step[1]);
        let e = g.edge_between(p, q).ok_or(Error::NotAdjacent(p, q))?;
        if classes.class_of(e) == k {
            let term = (d.get(u, p) - d.get(u, q)) - (d.get(v, p) - d.get(v, q));
            total = total.checked_add(term).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}
