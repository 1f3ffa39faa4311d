#![allow(dead_code)]

use cartfact_core::{minimalize, WeightedGraph};
use proptest::prelude::*;
use proptest::sample::Index;

/// Connected graph on `1..=max_n` vertices: a random tree plus random extra
/// edges, weights in `1..=max_w`.
pub fn arb_graph(max_n: usize, max_w: u64) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            Just(n),
            prop::collection::vec((any::<Index>(), 1..=max_w), n.saturating_sub(1)),
            prop::collection::vec(prop::option::weighted(0.35, 1..=max_w), pairs),
        )
    })
    .prop_map(|(n, tree, extra)| {
        let mut edges = Vec::new();
        for (i, (p, w)) in tree.into_iter().enumerate() {
            let v = i + 1;
            edges.push((p.index(v), v, w));
        }
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if let Some(w) = extra[k] {
                    if !edges.iter().any(|&(a, b, _)| (a, b) == (u, v) || (a, b) == (v, u)) {
                        edges.push((u, v, w));
                    }
                }
                k += 1;
            }
        }
        WeightedGraph::unlabeled(n, edges).unwrap()
    })
}

pub fn arb_minimal(max_n: usize, max_w: u64) -> impl Strategy<Value = WeightedGraph> {
    arb_graph(max_n, max_w).prop_map(|g| minimalize(&g).unwrap())
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Bellman-Ford from every source; `None` for unreachable pairs.
pub fn bellman_ford(g: &WeightedGraph) -> Vec<Vec<Option<i64>>> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0i64);
            for _ in 0..n {
                for e in g.edges() {
                    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                        if let Some(da) = d[a] {
                            let c = da + e.w as i64;
                            if d[b].is_none_or(|db| c < db) {
                                d[b] = Some(c);
                            }
                        }
                    }
                }
            }
            d
        })
        .collect()
}

pub fn oracle_dist(g: &WeightedGraph) -> Vec<Vec<i64>> {
    bellman_ford(g)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.expect("connected")).collect())
        .collect()
}

pub fn oracle_theta(g: &WeightedGraph, d: &[Vec<i64>], e: usize, f: usize) -> bool {
    let (x, y) = (g.edge(e), g.edge(f));
    (d[x.u][y.u] - d[x.u][y.v]) - (d[x.v][y.u] - d[x.v][y.v]) != 0
}

/// Reflexive-transitive closure of a relation on `0..m` by Warshall.
pub fn closure(m: usize, rel: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            r[i][j] = i == j || rel(i, j) || rel(j, i);
        }
    }
    for k in 0..m {
        for i in 0..m {
            if r[i][k] {
                for j in 0..m {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

pub fn same_partition(labels: &[usize], closure: &[Vec<bool>]) -> bool {
    let m = labels.len();
    (0..m).all(|i| (0..m).all(|j| (labels[i] == labels[j]) == closure[i][j]))
}

/// Every simple path from `u` to `v`, as vertex lists.
pub fn simple_paths(g: &WeightedGraph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn go(g: &WeightedGraph, x: usize, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == v {
            out.push(path.clone());
            return;
        }
        for &(y, _) in g.neighbors(x) {
            if !path.contains(&y) {
                path.push(y);
                go(g, y, v, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, u, v, &mut vec![u], &mut out);
    out
}
