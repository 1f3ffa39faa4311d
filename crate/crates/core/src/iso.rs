//! Verification oracles: weighted isomorphism and isometric subgraph checks.
//!
//! Both are desk-scale tools. The isomorphism search is plain backtracking over
//! a joint colour refinement seeded with degree, incident-weight multiset and
//! sorted distance row; it is never used inside the decomposition algorithms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{VertexId, Weight, WeightedGraph};
use crate::metric::{apsp, DistanceMatrix};

/// A weight- and adjacency-preserving bijection `g -> h`, if one exists.
pub fn graphs_isomorphic(g: &WeightedGraph, h: &WeightedGraph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut wg: Vec<Weight> = g.edges().iter().map(|e| e.w).collect();
    let mut wh: Vec<Weight> = h.edges().iter().map(|e| e.w).collect();
    wg.sort_unstable();
    wh.sort_unstable();
    if wg != wh {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }

    let (cg, ch) = refine(g, h)?;
    Matcher::new(g, h, &cg, &ch).run()
}

type Signature = (Vec<i64>, Vec<(usize, Weight)>);

fn initial_signature(g: &WeightedGraph, d: &DistanceMatrix, v: VertexId) -> Signature {
    let mut row: Vec<i64> = d.row(v).to_vec();
    row.sort_unstable();
    let mut inc: Vec<(usize, Weight)> = g
        .neighbors(v)
        .iter()
        .map(|&(_, e)| (0, g.edge(e).w))
        .collect();
    inc.sort_unstable();
    (row, inc)
}

/// Joint colour refinement; `None` as soon as colour histograms differ.
fn refine(g: &WeightedGraph, h: &WeightedGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let dg = apsp(g).ok()?;
    let dh = apsp(h).ok()?;
    let n = g.vertex_count();

    let sg: Vec<Signature> = (0..n).map(|v| initial_signature(g, &dg, v)).collect();
    let sh: Vec<Signature> = (0..n).map(|v| initial_signature(h, &dh, v)).collect();
    let (mut cg, mut ch, mut classes) = relabel(&sg, &sh)?;

    loop {
        let step = |graph: &WeightedGraph, colour: &[usize]| -> Vec<Signature> {
            (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, Weight)> = graph
                        .neighbors(v)
                        .iter()
                        .map(|&(x, e)| (colour[x], graph.edge(e).w))
                        .collect();
                    nb.sort_unstable();
                    (vec![colour[v] as i64], nb)
                })
                .collect()
        };
        let ng = step(g, &cg);
        let nh = step(h, &ch);
        let (rg, rh, count) = relabel(&ng, &nh)?;
        cg = rg;
        ch = rh;
        if count == classes {
            return Some((cg, ch));
        }
        classes = count;
    }
}

fn relabel(sg: &[Signature], sh: &[Signature]) -> Option<(Vec<usize>, Vec<usize>, usize)> {
    let mut ids: BTreeMap<&Signature, (usize, isize)> = BTreeMap::new();
    for s in sg {
        ids.entry(s).or_insert((0, 0)).1 += 1;
    }
    for s in sh {
        ids.entry(s).or_insert((0, 0)).1 -= 1;
    }
    if ids.values().any(|&(_, balance)| balance != 0) {
        return None;
    }
    for (i, v) in ids.values_mut().enumerate() {
        v.0 = i;
    }
    let cg = sg.iter().map(|s| ids[s].0).collect();
    let ch = sh.iter().map(|s| ids[s].0).collect();
    Some((cg, ch, ids.len()))
}

struct Matcher<'a> {
    g: &'a WeightedGraph,
    h: &'a WeightedGraph,
    cg: &'a [usize],
    ch: &'a [usize],
    order: Vec<VertexId>,
    fwd: Vec<Option<VertexId>>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a WeightedGraph, h: &'a WeightedGraph, cg: &'a [usize], ch: &'a [usize]) -> Self {
        let n = g.vertex_count();
        let mut class_size = vec![0usize; n.max(1) * 2 + 1];
        for &c in cg {
            if c >= class_size.len() {
                class_size.resize(c + 1, 0);
            }
            class_size[c] += 1;
        }
        // Greedy order: rarest colour first, then the vertex with most
        // already-ordered neighbours.
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| (core::cmp::Reverse(links[v]), class_size[cg[v]], v))
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
            for &(x, _) in g.neighbors(next) {
                links[x] += 1;
            }
        }
        Self {
            g,
            h,
            cg,
            ch,
            order,
            fwd: vec![None; n],
            used: vec![false; n],
        }
    }

    fn run(mut self) -> Option<Vec<VertexId>> {
        if self.extend(0) {
            Some(self.fwd.into_iter().map(|x| x.expect("complete map")).collect())
        } else {
            None
        }
    }

    fn feasible(&self, v: VertexId, t: VertexId) -> bool {
        if self.used[t] || self.cg[v] != self.ch[t] {
            return false;
        }
        let mut mapped_nbrs = 0;
        for &(x, e) in self.g.neighbors(v) {
            if let Some(tx) = self.fwd[x] {
                mapped_nbrs += 1;
                if self.h.weight_between(t, tx) != Some(self.g.edge(e).w) {
                    return false;
                }
            }
        }
        let image_nbrs = self
            .h
            .neighbors(t)
            .iter()
            .filter(|&&(y, _)| self.used[y])
            .count();
        mapped_nbrs == image_nbrs
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        // Candidates come from the image of an already mapped neighbour when
        // there is one.
        let anchor = self
            .g
            .neighbors(v)
            .iter()
            .find_map(|&(x, _)| self.fwd[x]);
        let candidates: Vec<VertexId> = match anchor {
            Some(a) => self.h.neighbors(a).iter().map(|&(y, _)| y).collect(),
            None => (0..self.h.vertex_count()).collect(),
        };
        for t in candidates {
            if self.feasible(v, t) {
                self.fwd[v] = Some(t);
                self.used[t] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.fwd[v] = None;
                self.used[t] = false;
            }
        }
        false
    }
}

/// Abstract target of an embedding check: edge weights and distances between
/// host vertices of type `V`.
pub(crate) trait MetricHost {
    type Vertex: Ord + ?Sized;
    fn edge_weight(&self, a: &Self::Vertex, b: &Self::Vertex) -> Option<Weight>;
    fn distance(&self, a: &Self::Vertex, b: &Self::Vertex) -> Option<i64>;
}

pub(crate) struct GraphHost<'a> {
    pub graph: &'a WeightedGraph,
    pub dist: &'a DistanceMatrix,
}

impl MetricHost for GraphHost<'_> {
    type Vertex = VertexId;
    fn edge_weight(&self, a: &VertexId, b: &VertexId) -> Option<Weight> {
        self.graph.weight_between(*a, *b)
    }
    fn distance(&self, a: &VertexId, b: &VertexId) -> Option<i64> {
        self.dist.distance(*a, *b)
    }
}

/// Injective, edge-and-weight preserving, and distance preserving.
pub(crate) fn isometric_into<H: MetricHost>(
    g: &WeightedGraph,
    dg: &DistanceMatrix,
    host: &H,
    images: &[&H::Vertex],
) -> bool {
    let n = g.vertex_count();
    if images.len() != n {
        return false;
    }
    let mut sorted: Vec<&H::Vertex> = images.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for e in g.edges() {
        if host.edge_weight(images[e.u], images[e.v]) != Some(e.w) {
            return false;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if dg.distance(u, v) != host.distance(images[u], images[v]) {
                return false;
            }
        }
    }
    true
}

/// Whether `map` sends `g` onto an isometric subgraph of `host`, preserving
/// edges and their weights.
pub fn is_isometric_subgraph(
    g: &WeightedGraph,
    host: &WeightedGraph,
    map: &[VertexId],
) -> Result<bool> {
    if map.len() != g.vertex_count() {
        return Err(Error::ArityMismatch {
            expected: g.vertex_count(),
            found: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&x| x >= host.vertex_count()) {
        return Err(Error::VertexOutOfRange(bad));
    }
    let dg = apsp(g)?;
    let dh = apsp(host)?;
    let images: Vec<&VertexId> = map.iter().collect();
    Ok(isometric_into(
        g,
        &dg,
        &GraphHost {
            graph: host,
            dist: &dh,
        },
        &images,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(ws: &[u64]) -> WeightedGraph {
        let n = ws.len();
        WeightedGraph::unlabeled(n, ws.iter().enumerate().map(|(i, &w)| (i, (i + 1) % n, w)))
            .unwrap()
    }

    #[test]
    fn map_is_checked() {
        let c4 = cycle(&[1, 1, 1, 1]);
        let map = graphs_isomorphic(&c4, &c4).unwrap();
        for e in c4.edges() {
            assert_eq!(c4.weight_between(map[e.u], map[e.v]), Some(e.w));
        }
    }

    #[test]
    fn out_of_range_map_is_an_error() {
        let k2 = WeightedGraph::unlabeled(2, [(0, 1, 1)]).unwrap();
        assert_eq!(
            is_isometric_subgraph(&k2, &k2, &[0, 5]),
            Err(Error::VertexOutOfRange(5))
        );
        assert!(matches!(
            is_isometric_subgraph(&k2, &k2, &[0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn non_injective_map_fails() {
        let p3 = WeightedGraph::unlabeled(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let c4 = cycle(&[1, 1, 1, 1]);
        assert!(!is_isometric_subgraph(&p3, &c4, &[0, 1, 0]).unwrap());
    }
}
