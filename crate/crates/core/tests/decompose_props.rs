mod common;

use cartfact_core::{
    apsp, cartesian_product, factorize, graphs_isomorphic, is_irreducible, is_prime,
    pseudofactorize, pseudofactorize_with, theta_classes, verify_decomposition, Algorithm,
    Decomposition, Options, Verify, WeightedGraph,
};
use common::*;
use proptest::prelude::*;

/// Factor multisets agree up to isomorphism.
fn same_factors(a: &Decomposition, b: &Decomposition) -> bool {
    if a.factors.len() != b.factors.len() {
        return false;
    }
    let mut used = vec![false; b.factors.len()];
    a.factors.iter().all(|f| {
        (0..b.factors.len()).any(|j| {
            if !used[j] && graphs_isomorphic(f, &b.factors[j]).is_some() {
                used[j] = true;
                true
            } else {
                false
            }
        })
    })
}

fn prime_graph() -> impl Strategy<Value = WeightedGraph> {
    arb_graph(4, 3).prop_filter("prime with an edge", |g| g.edge_count() > 0 && is_prime(g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pseudofactorization_verifies_and_is_irreducible(g in arb_minimal(9, 3)) {
        let dec = pseudofactorize_with(&g, &Options { verify: Verify::Never, ..Options::default() }).unwrap();
        prop_assert!(verify_decomposition(&g, &dec));
        for f in &dec.factors {
            prop_assert!(is_irreducible(f).unwrap());
        }
        let fast = pseudofactorize_with(&g, &Options { algorithm: Algorithm::FederTree, ..Options::default() }).unwrap();
        prop_assert_eq!(&fast, &dec);
        // no K1 factors unless the input is K1
        if g.vertex_count() > 1 {
            prop_assert!(dec.factors.iter().all(|f| f.vertex_count() > 1));
        }
    }

    #[test]
    fn edges_map_to_product_edges_in_their_own_factor(g in arb_minimal(8, 3)) {
        let dec = pseudofactorize(&g).unwrap();
        let d = apsp(&g).unwrap();
        let classes = theta_classes(&g, &d);
        for (e, edge) in g.edges().iter().enumerate() {
            let (a, b) = (dec.image(edge.u), dec.image(edge.v));
            let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
            prop_assert_eq!(diff.len(), 1);
            // The parent edge lies in the factor of the edge's class.
            prop_assert_eq!(diff[0], classes.class_of(e));
            prop_assert_eq!(dec.factors[diff[0]].weight_between(a[diff[0]], b[diff[0]]), Some(edge.w));
        }
    }

    #[test]
    fn factorization_verifies_and_is_prime(g in arb_graph(8, 3)) {
        let dec = factorize(&g).unwrap();
        prop_assert!(verify_decomposition(&g, &dec));
        let product = cartesian_product(&dec.factors).unwrap();
        prop_assert!(graphs_isomorphic(&g, &product).is_some());
        for f in &dec.factors {
            prop_assert!(is_prime(f).unwrap());
        }
    }

    #[test]
    fn unique_under_relabeling(
        (g, perm) in arb_minimal(8, 3).prop_flat_map(|g| { let n = g.vertex_count(); (Just(g), arb_permutation(n)) })
    ) {
        let h = g.permute_vertices(&perm).unwrap();
        prop_assert!(same_factors(&pseudofactorize(&g).unwrap(), &pseudofactorize(&h).unwrap()));
        prop_assert!(same_factors(&factorize(&g).unwrap(), &factorize(&h).unwrap()));
    }

    #[test]
    fn product_of_primes_round_trips(a in prime_graph(), b in prime_graph()) {
        let p = cartesian_product(&[a.clone(), b.clone()]).unwrap();
        let dec = factorize(&p).unwrap();
        prop_assert_eq!(dec.factors.len(), 2);
        let ok = (graphs_isomorphic(&dec.factors[0], &a).is_some() && graphs_isomorphic(&dec.factors[1], &b).is_some())
            || (graphs_isomorphic(&dec.factors[0], &b).is_some() && graphs_isomorphic(&dec.factors[1], &a).is_some());
        prop_assert!(ok);
    }
}
