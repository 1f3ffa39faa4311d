//! Decomposition pipelines with per-phase timings, and parallel APSP.

use std::time::{Duration, Instant};

use cartfact_core::metric::{check_minimal, single_source};
use cartfact_core::relations::RelationKind;
use cartfact_core::{
    build_relation_graph, decompose_over, equivalence_classes, verify_decomposition, Algorithm,
    Decomposition, DistanceMatrix, EdgeRelationGraph, Error, EquivalenceClasses, Mode, Result,
    TreeState, WeightedGraph,
};
use rayon::prelude::*;

/// All-pairs distances with one Dijkstra per source, sources in parallel.
pub fn apsp_parallel(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let rows = (0..g.vertex_count())
        .into_par_iter()
        .map(|s| single_source(g, s))
        .collect::<Result<Vec<_>>>()?;
    DistanceMatrix::from_rows(rows)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Timings {
    pub apsp: Duration,
    pub relation: Duration,
    pub components: Duration,
    pub quotients: Duration,
    pub verify: Duration,
}

impl Timings {
    pub fn phases(&self) -> [(&'static str, Duration); 5] {
        [
            ("apsp", self.apsp),
            ("relation", self.relation),
            ("components", self.components),
            ("quotients", self.quotients),
            ("verify", self.verify),
        ]
    }
}

pub struct Outcome {
    pub decomposition: Decomposition,
    /// Relation graph whose components are the classes, for explanations.
    pub relation_graph: EdgeRelationGraph,
    pub timings: Timings,
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Pseudofactor(Algorithm),
    Factor,
}

pub struct Request {
    pub kind: Kind,
    pub verify: bool,
    pub check_invariant: bool,
}

/// Runs one decomposition, timing each phase. The graph must be connected;
/// pseudofactorization also needs it minimal.
pub fn run(g: &WeightedGraph, req: &Request) -> Result<Outcome> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut t = Timings::default();
    let start = Instant::now();
    let d = apsp_parallel(g)?;
    t.apsp = start.elapsed();
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }

    let (mode, rg, classes) = match req.kind {
        Kind::Pseudofactor(algo) => {
            check_minimal(g, &d)?;
            let (rg, classes) = match algo {
                Algorithm::Gw => staged(g, &d, RelationKind::Theta, &mut t),
                Algorithm::FederTree => {
                    let start = Instant::now();
                    let mut state = TreeState::new(g, &d)?;
                    let classes = state.run(req.check_invariant)?;
                    t.relation = start.elapsed();
                    (state.relation_graph(), classes)
                }
            };
            (Mode::Pseudofactorization, rg, classes)
        }
        Kind::Factor => {
            let (rg, classes) = staged(g, &d, RelationKind::ThetaUnionTau, &mut t);
            (Mode::Factorization, rg, classes)
        }
    };

    let start = Instant::now();
    let dec = Decomposition::from_classes(mode, g, classes)?;
    t.quotients = start.elapsed();

    let verified = req.verify.then(|| {
        let start = Instant::now();
        let ok = verify_decomposition(g, &dec);
        t.verify = start.elapsed();
        ok
    });
    Ok(Outcome {
        decomposition: dec,
        relation_graph: rg,
        timings: t,
        verified,
    })
}

fn staged(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    kind: RelationKind<'_>,
    t: &mut Timings,
) -> (EdgeRelationGraph, EquivalenceClasses) {
    let start = Instant::now();
    let rg = build_relation_graph(g, d, kind);
    t.relation = start.elapsed();
    let start = Instant::now();
    let classes = equivalence_classes(&rg);
    t.components = start.elapsed();
    (rg, classes)
}

/// Theta classes by either route, without quotients, for benchmarking.
pub fn theta_classes_by(g: &WeightedGraph, d: &DistanceMatrix, algo: Algorithm) -> Result<EquivalenceClasses> {
    match algo {
        Algorithm::Gw => Ok(equivalence_classes(&build_relation_graph(g, d, RelationKind::Theta))),
        Algorithm::FederTree => TreeState::new(g, d)?.run(false),
    }
}

/// Quotients only, for benchmarking.
pub fn quotients(g: &WeightedGraph, classes: &EquivalenceClasses) -> Result<usize> {
    decompose_over(g, classes).map(|p| p.len())
}
