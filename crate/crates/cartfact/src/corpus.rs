//! Test corpora: every small minimal graph up to isomorphism, seeded samples
//! of slightly larger ones, and random minimalized graphs.

use std::collections::BTreeSet;

use cartfact_core::{apsp, is_minimal, minimalize, Weight, WeightedGraph};
use rand::Rng;

use crate::gen::{self, Rand};

/// Cap on the size of [`sweep`].
pub const SWEEP_CAP: usize = 5000;

pub const SWEEP_WEIGHTS: [Weight; 3] = [1, 2, 3];

type Key = Vec<(usize, usize, Weight)>;

/// Smallest sorted edge list over all vertex relabelings.
pub fn canonical_key(g: &WeightedGraph) -> Key {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Key> = None;
    loop {
        let mut key: Key = g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.u], perm[e.v]);
                (a.min(b), a.max(b), e.w)
            })
            .collect();
        key.sort_unstable();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn connected_minimal(g: &WeightedGraph) -> bool {
    g.is_connected() && apsp(g).map(|d| is_minimal(g, &d)).unwrap_or(false)
}

/// Every connected minimal graph on `n` vertices with weights from
/// `weights`, one per isomorphism class.
pub fn exhaustive(n: usize, weights: &[Weight]) -> Vec<WeightedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let base = weights.len() + 1;
    let total = base.pow(pairs.len() as u32);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut edges = Vec::new();
        for &(u, v) in &pairs {
            let digit = c % base;
            c /= base;
            if digit > 0 {
                edges.push((u, v, weights[digit - 1]));
            }
        }
        let g = WeightedGraph::unlabeled(n, edges).expect("simple edges");
        if connected_minimal(&g) && seen.insert(canonical_key(&g)) {
            out.push(g);
        }
    }
    out
}

/// Up to `count` distinct connected minimal graphs on `n` vertices, each pair
/// present with probability one half.
pub fn sample(rng: &mut Rand, n: usize, weights: &[Weight], count: usize, seen: &mut BTreeSet<Key>) -> Vec<WeightedGraph> {
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.5) {
                    edges.push((u, v, weights[rng.random_range(0..weights.len())]));
                }
            }
        }
        let g = WeightedGraph::unlabeled(n, edges).expect("simple edges");
        if connected_minimal(&g) && seen.insert(canonical_key(&g)) {
            out.push(g);
        }
    }
    out
}

/// All connected minimal graphs with at most 4 vertices and weights 1..=3 up
/// to isomorphism, then seeded samples on 5 and 6 vertices, at most
/// [`SWEEP_CAP`] graphs in total.
pub fn sweep(seed: u64) -> Vec<WeightedGraph> {
    let mut out: Vec<WeightedGraph> = (1..=4).flat_map(|n| exhaustive(n, &SWEEP_WEIGHTS)).collect();
    let mut rng = gen::rng(seed);
    let mut seen = BTreeSet::new();
    let left = SWEEP_CAP.saturating_sub(out.len());
    for (n, share) in [(5, left / 2), (6, left - left / 2)] {
        out.extend(sample(&mut rng, n, &SWEEP_WEIGHTS, share, &mut seen));
    }
    out
}

/// `count` random connected graphs on `2..=max_n` vertices, minimalized.
pub fn random_minimalized(seed: u64, count: usize, max_n: usize) -> Vec<WeightedGraph> {
    let mut rng = gen::rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_n);
            let p = rng.random_range(0.05..0.7);
            let g = gen::random_connected(&mut rng, n, p, 3);
            minimalize(&g).expect("connected by construction")
        })
        .collect()
}
