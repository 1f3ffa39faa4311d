//! Seeded random graph families.

use cartfact_core::{families, is_prime, minimalize, cartesian_product, Weight, WeightedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(rng: &mut Rand, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Uniform random recursive tree on `n` vertices with shuffled ids.
pub fn random_tree(rng: &mut Rand, n: usize, max_w: Weight) -> WeightedGraph {
    let perm = random_permutation(rng, n);
    let edges: Vec<_> = (1..n)
        .map(|v| {
            let p = rng.random_range(0..v);
            (perm[p], perm[v], rng.random_range(1..=max_w))
        })
        .collect();
    WeightedGraph::unlabeled(n, edges).expect("tree edges are valid")
}

/// A random tree plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut Rand, n: usize, p: f64, max_w: Weight) -> WeightedGraph {
    let tree = random_tree(rng, n, max_w);
    let mut edges: Vec<_> = tree.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if tree.edge_between(u, v).is_none() && rng.random_bool(p) {
                edges.push((u, v, rng.random_range(1..=max_w)));
            }
        }
    }
    WeightedGraph::unlabeled(n, edges).expect("simple edges are valid")
}

pub fn random_minimal(rng: &mut Rand, n: usize, p: f64, max_w: Weight) -> WeightedGraph {
    minimalize(&random_connected(rng, n, p, max_w)).expect("connected by construction")
}

fn random_weights(rng: &mut Rand, k: usize, max_w: Weight) -> Vec<Weight> {
    (0..k).map(|_| rng.random_range(1..=max_w)).collect()
}

/// `k x k` grid: product of two paths with random weights.
pub fn grid(rng: &mut Rand, k: usize, max_w: Weight) -> WeightedGraph {
    let rows = random_weights(rng, k.saturating_sub(1), max_w);
    let cols = random_weights(rng, k.saturating_sub(1), max_w);
    families::grid(&rows, &cols).expect("paths are valid")
}

/// Product of two random trees with about `n` vertices in total.
pub fn tree_product(rng: &mut Rand, n: usize, max_w: Weight) -> WeightedGraph {
    let a = (n as f64).sqrt().round().max(1.0) as usize;
    let b = n.div_ceil(a).max(1);
    let ta = random_tree(rng, a, max_w);
    let tb = random_tree(rng, b, max_w);
    cartesian_product(&[ta, tb]).expect("factors are nonempty")
}

/// A random prime graph with at least one edge and `2..=max_n` vertices.
pub fn random_prime(rng: &mut Rand, max_n: usize, max_w: Weight) -> WeightedGraph {
    loop {
        let n = rng.random_range(2..=max_n);
        let p = rng.random_range(0.0..0.8);
        let g = random_connected(rng, n, p, max_w);
        if is_prime(&g).expect("connected by construction") {
            return g;
        }
    }
}
