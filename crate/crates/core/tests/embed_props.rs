mod common;

use std::collections::BTreeSet;

use cartfact_core::embed::{
    canonical_partition, compose_from_pseudofactors, count_per_factor, embeddings_equivalent,
    BruteForce,
};
use cartfact_core::{apsp, pseudofactorize, theta_classes, WeightedGraph};
use common::*;
use proptest::prelude::*;

/// Every binary embedding with vertex 0 at the zero string, by enumerating
/// all strings of each length up to `max_dim`, as sorted column sets.
fn oracle_embeddings(g: &WeightedGraph, max_dim: usize) -> BTreeSet<Vec<Vec<bool>>> {
    let d = oracle_dist(g);
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for t in 0..=max_dim {
        let bits = t * (n - 1);
        if bits > 20 {
            break;
        }
        for code in 0u64..(1 << bits) {
            let s = |v: usize, j: usize| v > 0 && (code >> ((v - 1) * t + j)) & 1 == 1;
            let ok = (0..n).all(|u| {
                (0..n).all(|v| (0..t).filter(|&j| s(u, j) != s(v, j)).count() as i64 == d[u][v])
            }) && (0..t).all(|j| (1..n).any(|v| s(v, j)));
            if ok {
                let mut cols: Vec<Vec<bool>> = (0..t).map(|j| (0..n).map(|v| s(v, j)).collect()).collect();
                cols.sort();
                out.insert(cols);
            }
        }
    }
    out
}

fn tree_weight(g: &WeightedGraph) -> usize {
    let d = oracle_dist(g);
    // Prim on the metric restricted to edges.
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut total = 0;
    for _ in 1..n {
        let (w, v) = g
            .edges()
            .iter()
            .filter(|e| inside[e.u] != inside[e.v])
            .map(|e| (d[e.u][e.v], if inside[e.u] { e.v } else { e.u }))
            .min()
            .unwrap();
        inside[v] = true;
        total += w as usize;
    }
    total
}

#[test]
fn fixed_graphs_with_several_embeddings() {
    let k = |n: usize, w: u64| cartfact_core::families::complete(n, w).unwrap();
    let cases = [
        (k(4, 2), 2),
        (k(3, 2), 1),
        (cartfact_core::families::cycle(&[2, 2, 2, 2]).unwrap(), 1),
        (cartfact_core::families::cycle(&[1, 1, 1, 1, 1, 1]).unwrap(), 1),
        (cartfact_core::families::star(&[2, 2, 2]).unwrap(), 1),
    ];
    for (g, expect) in cases {
        let d = apsp(&g).unwrap();
        let oracle = oracle_embeddings(&g, tree_weight(&g));
        let count = BruteForce::default().count(&g, &d).unwrap();
        assert_eq!(count as usize, oracle.len(), "{g}");
        assert_eq!(count, expect, "{g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn search_matches_string_enumeration(g in arb_minimal(4, 2)) {
        let d = apsp(&g).unwrap();
        let expect = oracle_embeddings(&g, tree_weight(&g));
        let found = BruteForce::default().all(&g, &d).unwrap();
        prop_assert_eq!(found.len(), expect.len());
        for e in &found {
            prop_assert!(e.is_valid(&g, &d));
        }
        for (i, a) in found.iter().enumerate() {
            for b in &found[i + 1..] {
                prop_assert!(!embeddings_equivalent(a, b));
            }
        }
    }

    #[test]
    fn count_is_the_product_over_pseudofactors(g in arb_minimal(6, 2)) {
        let d = apsp(&g).unwrap();
        let direct = BruteForce::default().count(&g, &d).unwrap();
        let product: u64 = count_per_factor(&g, &BruteForce::default()).unwrap().into_iter().product();
        prop_assert_eq!(direct, product);
    }

    #[test]
    fn embeddable_iff_every_pseudofactor_is(g in arb_minimal(7, 3)) {
        let d = apsp(&g).unwrap();
        let dec = pseudofactorize(&g).unwrap();
        let whole = BruteForce::default().embeddable(&g, &d).unwrap();
        let parts = dec.factors.iter().all(|f| BruteForce::default().embeddable(f, &apsp(f).unwrap()).unwrap());
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn canonical_partition_matches_theta_classes(g in arb_minimal(6, 2)) {
        let d = apsp(&g).unwrap();
        let classes = theta_classes(&g, &d);
        for emb in BruteForce::default().all(&g, &d).unwrap() {
            let part = canonical_partition(&g, &emb).unwrap();
            prop_assert_eq!(part.len(), classes.len());
            let mut group_of_class = vec![None; classes.len()];
            for (e, edge) in g.edges().iter().enumerate() {
                let (a, b) = (emb.string(edge.u), emb.string(edge.v));
                for j in (0..emb.dim()).filter(|&j| a[j] != b[j]) {
                    let slot = &mut group_of_class[classes.class_of(e)];
                    prop_assert_eq!(*slot.get_or_insert(part.group_of(j)), part.group_of(j));
                }
            }
        }
    }

    #[test]
    fn composition_agrees_with_direct_search(g in arb_minimal(6, 2)) {
        let d = apsp(&g).unwrap();
        let dec = pseudofactorize(&g).unwrap();
        let bf = BruteForce::default();
        let parts: Option<Vec<_>> = dec.factors.iter().map(|f| bf.embed(f, &apsp(f).unwrap()).unwrap()).collect();
        let direct = bf.embed(&g, &d).unwrap();
        match (parts, direct) {
            (None, None) => {}
            (Some(parts), Some(direct)) => {
                let composed = compose_from_pseudofactors(&g, &dec, &parts).unwrap();
                prop_assert!(composed.is_valid(&g, &d));
                prop_assert_eq!(composed.dim(), direct.dim());
                let all = bf.all(&g, &d).unwrap();
                prop_assert!(all.iter().any(|e| embeddings_equivalent(e, &composed)));
            }
            (p, q) => prop_assert!(false, "factor search {:?} vs direct {:?}", p.is_some(), q.is_some()),
        }
    }
}
