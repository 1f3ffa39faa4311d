//! Theta classes in `O(nm)` after APSP, through a spanning tree whose
//! restricted relation has the same transitive closure as theta.
//!
//! The restricted relation `theta_T` only links theta-related pairs with at
//! least one edge in the tree `T`, so its relation graph has `O(nm)`
//! adjacencies. Starting from a breadth-first tree, classes are discovered one
//! at a time; whenever a discovered non-tree edge `ab` has an undiscovered
//! edge `uv` on its tree path, `ab` is swapped into the tree in place of `uv`
//! and the search continues from `ab`. Discovered edges never leave the tree,
//! so at most `n - 1` swaps happen.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::metric::{check_minimal, DistanceMatrix};
use crate::relations::{
    equivalence_classes, theta_classes, theta_related, EdgeRelationGraph, EquivalenceClasses,
    Provenance, SpanningTree,
};

/// Mutable state of the tree search.
///
/// Adjacency lists only grow. A stored pair is live while at least one of its
/// edges is in the tree; pairs whose tree edge was swapped out are skipped on
/// traversal instead of being deleted.
#[derive(Debug, Clone)]
pub struct TreeState<'a> {
    g: &'a WeightedGraph,
    d: &'a DistanceMatrix,
    in_tree: Vec<bool>,
    tree_adj: Vec<Vec<(VertexId, EdgeId)>>,
    parent: Vec<Option<(VertexId, EdgeId)>>,
    depth: Vec<usize>,
    dirty: bool,
    rel: Vec<Vec<EdgeId>>,
    mark: Vec<Option<usize>>,
    swaps: usize,
}

impl<'a> TreeState<'a> {
    /// State for the breadth-first tree from vertex 0.
    pub fn new(g: &'a WeightedGraph, d: &'a DistanceMatrix) -> Result<Self> {
        let tree = SpanningTree::bfs(g)?;
        Self::with_tree(g, d, &tree)
    }

    pub fn with_tree(g: &'a WeightedGraph, d: &'a DistanceMatrix, tree: &SpanningTree) -> Result<Self> {
        let n = g.vertex_count();
        let m = g.edge_count();
        if d.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: d.len(),
            });
        }
        let mut in_tree = vec![false; m];
        let mut tree_adj = vec![Vec::new(); n];
        for &t in tree.edges() {
            if t >= m {
                return Err(Error::EdgeOutOfRange(t));
            }
            in_tree[t] = true;
            let e = g.edge(t);
            tree_adj[e.u].push((e.v, t));
            tree_adj[e.v].push((e.u, t));
        }
        let mut rel = vec![Vec::new(); m];
        let edges = g.edges();
        for &t in tree.edges() {
            for f in 0..m {
                if f == t || (in_tree[f] && f < t) {
                    continue;
                }
                if theta_related(d, &edges[t], &edges[f]) {
                    rel[t].push(f);
                    rel[f].push(t);
                }
            }
        }
        let mut state = Self {
            g,
            d,
            in_tree,
            tree_adj,
            parent: vec![None; n],
            depth: vec![0; n],
            dirty: true,
            rel,
            mark: vec![None; m],
            swaps: 0,
        };
        state.reroot();
        Ok(state)
    }

    pub fn in_tree(&self, e: EdgeId) -> bool {
        self.in_tree[e]
    }

    /// Current tree edges in ascending order.
    pub fn tree_edges(&self) -> Vec<EdgeId> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    pub fn mark(&self, e: EdgeId) -> Option<usize> {
        self.mark[e]
    }

    pub fn swaps(&self) -> usize {
        self.swaps
    }

    fn live(&self, e: EdgeId, f: EdgeId) -> bool {
        self.in_tree[e] || self.in_tree[f]
    }

    /// The current restricted relation graph.
    pub fn relation_graph(&self) -> EdgeRelationGraph {
        let m = self.rel.len();
        let mut rg = EdgeRelationGraph::empty(m);
        let mut seen = vec![false; m];
        for e in 0..m {
            for &f in &self.rel[e] {
                if e < f && self.live(e, f) && !seen[f] {
                    seen[f] = true;
                    rg.add(e, f, Provenance::ThetaTree);
                }
            }
            for &f in &self.rel[e] {
                seen[f] = false;
            }
        }
        rg
    }

    fn reroot(&mut self) {
        let n = self.g.vertex_count();
        self.parent.iter_mut().for_each(|p| *p = None);
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        self.depth[0] = 0;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.tree_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    self.parent[y] = Some((x, e));
                    self.depth[y] = self.depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        self.dirty = false;
    }

    /// Edge ids of the unique tree path from `a` to `b`, in walking order.
    pub fn tree_path(&mut self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        if self.dirty {
            self.reroot();
        }
        let (mut x, mut y) = (a, b);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[x] > self.depth[y] {
            let (p, e) = self.parent[x].expect("non-root vertex has a parent");
            front.push(e);
            x = p;
        }
        while self.depth[y] > self.depth[x] {
            let (p, e) = self.parent[y].expect("non-root vertex has a parent");
            back.push(e);
            y = p;
        }
        while x != y {
            let (px, ex) = self.parent[x].expect("non-root vertex has a parent");
            let (py, ey) = self.parent[y].expect("non-root vertex has a parent");
            front.push(ex);
            back.push(ey);
            x = px;
            y = py;
        }
        front.extend(back.into_iter().rev());
        front
    }

    /// Puts `add` into the tree in place of `remove`, which must be an
    /// undiscovered tree edge on the tree path between `add`'s endpoints.
    pub fn swap_edge(&mut self, add: EdgeId, remove: EdgeId) -> Result<()> {
        let m = self.in_tree.len();
        if add >= m || remove >= m {
            return Err(Error::EdgeOutOfRange(add.max(remove)));
        }
        if self.in_tree[add] || !self.in_tree[remove] {
            return Err(Error::Invariant("swap must add a non-tree edge and remove a tree edge"));
        }
        if self.mark[remove].is_some() {
            return Err(Error::Invariant("discovered edges never leave the tree"));
        }
        let ae = *self.g.edge(add);
        if !self.tree_path(ae.u, ae.v).contains(&remove) {
            return Err(Error::Invariant("removed edge is not on the fundamental cycle"));
        }

        let re = *self.g.edge(remove);
        self.tree_adj[re.u].retain(|&(_, e)| e != remove);
        self.tree_adj[re.v].retain(|&(_, e)| e != remove);
        self.tree_adj[ae.u].push((ae.v, add));
        self.tree_adj[ae.v].push((ae.u, add));
        self.in_tree[remove] = false;
        self.in_tree[add] = true;
        self.dirty = true;
        self.swaps += 1;

        // `add` already links to every tree edge it is related to; link it to
        // the non-tree edges now. Pairs of `remove` with non-tree edges die
        // with its tree membership.
        let edges = self.g.edges();
        for f in 0..m {
            if f != add && !self.in_tree[f] && theta_related(self.d, &edges[add], &edges[f]) {
                self.rel[add].push(f);
                self.rel[f].push(add);
            }
        }
        Ok(())
    }

    /// Marks everything reachable from the queued edges with class `c`,
    /// appending each newly marked edge to `reach`.
    fn drain(&mut self, queue: &mut VecDeque<EdgeId>, reach: &mut VecDeque<EdgeId>, c: usize) {
        while let Some(x) = queue.pop_front() {
            reach.push_back(x);
            for i in 0..self.rel[x].len() {
                let y = self.rel[x][i];
                if self.mark[y].is_none() && self.live(x, y) {
                    self.mark[y] = Some(c);
                    queue.push_back(y);
                }
            }
        }
    }

    /// Runs the search to completion and returns the classes of the final
    /// restricted relation.
    pub fn run(&mut self, check_invariant: bool) -> Result<EquivalenceClasses> {
        let n = self.g.vertex_count();
        let m = self.in_tree.len();
        let reference = check_invariant.then(|| theta_classes(self.g, self.d));
        let mut class = 0;
        let mut queue = VecDeque::new();
        let mut reach = VecDeque::new();
        for xy in 0..m {
            if self.mark[xy].is_some() {
                continue;
            }
            if let Some(r) = &reference {
                self.check_marked(r)?;
            }
            self.mark[xy] = Some(class);
            queue.push_back(xy);
            self.drain(&mut queue, &mut reach, class);

            while let Some(ab) = reach.pop_front() {
                if self.in_tree[ab] {
                    continue;
                }
                let e = *self.g.edge(ab);
                let path = self.tree_path(e.u, e.v);
                let Some(&uv) = path.iter().find(|&&p| self.mark[p].is_none()) else {
                    continue;
                };
                if self.swaps + 1 > n.saturating_sub(1) {
                    return Err(Error::Invariant("more than n - 1 tree swaps"));
                }
                self.swap_edge(ab, uv)?;
                // Rescan ab for edges that became reachable through it.
                for i in 0..self.rel[ab].len() {
                    let y = self.rel[ab][i];
                    if self.mark[y].is_none() && self.live(ab, y) {
                        self.mark[y] = Some(class);
                        queue.push_back(y);
                    }
                }
                self.drain(&mut queue, &mut reach, class);
            }
            class += 1;
        }
        if let Some(r) = &reference {
            self.check_marked(r)?;
        }
        let labels: Vec<usize> = self.mark.iter().map(|c| c.expect("every edge is marked")).collect();
        Ok(EquivalenceClasses::from_labels(&labels))
    }

    /// Every discovered edge has the same class under the closure of the
    /// current restricted relation as under the closure of theta.
    fn check_marked(&self, reference: &EquivalenceClasses) -> Result<()> {
        let restricted = equivalence_classes(&self.relation_graph());
        let m = self.in_tree.len();
        for e in (0..m).filter(|&e| self.mark[e].is_some()) {
            let (rt, rf) = (restricted.class_of(e), reference.class_of(e));
            let same = (0..m).all(|f| (restricted.class_of(f) == rt) == (reference.class_of(f) == rf));
            if !same {
                return Err(Error::Invariant("discovered class differs from its theta class"));
            }
        }
        Ok(())
    }
}

/// A spanning tree `T*` and the classes of the closure of `theta_T*`, which
/// equal the theta classes of `g`.
pub fn find_theta_tree(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    check_invariant: bool,
) -> Result<(SpanningTree, EquivalenceClasses)> {
    let tree = start_tree(g, d)?;
    find_theta_tree_from(g, d, &tree, check_invariant)
}

/// Like [`find_theta_tree`], starting from a caller-chosen spanning tree.
pub fn find_theta_tree_from(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    initial: &SpanningTree,
    check_invariant: bool,
) -> Result<(SpanningTree, EquivalenceClasses)> {
    start_tree(g, d)?;
    let mut state = TreeState::with_tree(g, d, initial)?;
    let classes = state.run(check_invariant)?;
    let tree = SpanningTree::new(g, &state.tree_edges())?;
    Ok((tree, classes))
}

fn start_tree(g: &WeightedGraph, d: &DistanceMatrix) -> Result<SpanningTree> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    check_minimal(g, d)?;
    SpanningTree::bfs(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::apsp;

    fn g(n: usize, es: &[(usize, usize, u64)]) -> WeightedGraph {
        WeightedGraph::unlabeled(n, es.iter().copied()).unwrap()
    }

    #[test]
    fn tree_input_gives_singletons() {
        let t = g(5, &[(0, 1, 2), (1, 2, 1), (1, 3, 3), (3, 4, 1)]);
        let d = apsp(&t).unwrap();
        let (tree, classes) = find_theta_tree(&t, &d, true).unwrap();
        assert_eq!(tree.edges(), &[0, 1, 2, 3]);
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn c4_for_every_initial_tree() {
        let c4 = g(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        let d = apsp(&c4).unwrap();
        for skip in 0..4 {
            let edges: Vec<EdgeId> = (0..4).filter(|&e| e != skip).collect();
            let tree = SpanningTree::new(&c4, &edges).unwrap();
            let (_, classes) = find_theta_tree_from(&c4, &d, &tree, true).unwrap();
            assert_eq!(classes.classes(), &[vec![0, 2], vec![1, 3]]);
        }
    }

    #[test]
    fn tree_paths() {
        let p4 = g(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let d = apsp(&p4).unwrap();
        let mut s = TreeState::new(&p4, &d).unwrap();
        assert!(s.tree_path(2, 2).is_empty());
        assert_eq!(s.tree_path(1, 2), [1]);
        assert_eq!(s.tree_path(0, 3), [0, 1, 2]);
        assert_eq!(s.tree_path(3, 0), [2, 1, 0]);
    }

    #[test]
    fn swaps_keep_a_spanning_tree() {
        let c4 = g(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        let d = apsp(&c4).unwrap();
        let mut s = TreeState::new(&c4, &d).unwrap();
        let missing = (0..4).find(|&e| !s.in_tree(e)).unwrap();
        let e = *c4.edge(missing);
        let on_path = s.tree_path(e.u, e.v)[0];
        s.swap_edge(missing, on_path).unwrap();
        assert_eq!(s.tree_edges().len(), 3);
        assert!(SpanningTree::new(&c4, &s.tree_edges()).is_ok());
        assert!(s.relation_graph().adjacencies().all(|(a, b, _)| s.in_tree(a) || s.in_tree(b)));
        assert!(s.swap_edge(missing, on_path).is_err());
    }

    #[test]
    fn rejects_non_minimal() {
        let tri = g(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]);
        let d = apsp(&tri).unwrap();
        assert!(matches!(find_theta_tree(&tri, &d, false), Err(Error::NotMinimal { .. })));
    }
}
