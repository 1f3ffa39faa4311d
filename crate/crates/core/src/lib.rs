//! Prime factorization and irreducible pseudofactorization of connected,
//! positively weighted graphs under the Cartesian product.
//!
//! The crate is `no_std` and only needs `alloc`. Distances are exact `i64`
//! values; every relation test is an exact integer comparison.
//!
//! ```
//! use cartfact_core::{factorize, WeightedGraph};
//!
//! // unit 4-cycle = K2 x K2
//! let c4 = WeightedGraph::unlabeled(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
//! let dec = factorize(&c4).unwrap();
//! assert_eq!(dec.factors.len(), 2);
//! ```

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod decompose;
pub mod embed;
pub mod error;
pub mod families;
pub mod graph;
pub mod iso;
pub mod metric;
pub mod product;
pub mod relations;
pub mod treefast;

pub use decompose::{
    decompose_over, factorize, factorize_given, factorize_with, is_irreducible, is_prime, pseudofactorize,
    pseudofactorize_given, pseudofactorize_with, verify_decomposition, Algorithm, Decomposition, Mode, Options,
    QuotientPiece, Verify,
};
pub use embed::{
    canonical_partition, compose_from_pseudofactors, count_hypercube_embeddings, count_per_factor,
    embeddings_equivalent, hamming_embed_from_factors, hypercube_embed_bruteforce,
    is_hypercube_embeddable, BruteForce, CanonicalPartition, HammingEmbedding,
};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, VertexId, VertexMap, Weight, WeightedGraph};
pub use iso::{graphs_isomorphic, is_isometric_subgraph};
pub use metric::{apsp, is_minimal, minimalize, DistanceMatrix};
pub use product::{cartesian_product, parent_edge, ProductIndex};
pub use relations::{
    build_relation_graph, class_path_sum, equivalence_classes, factor_classes, theta_classes, satisfies_square_property,
    tau_related, theta_difference, theta_related, theta_t_related, EdgeRelationGraph,
    EquivalenceClasses, Provenance, RelationKind, SpanningTree,
};
pub use treefast::{find_theta_tree, find_theta_tree_from, TreeState};
