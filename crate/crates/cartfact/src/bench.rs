//! Timing harness for the two pseudofactorization routes.

use std::fmt::Write;
use std::time::{Duration, Instant};

use cartfact_core::relations::RelationKind;
use cartfact_core::{
    build_relation_graph, decompose_over, equivalence_classes, Algorithm, DistanceMatrix,
    EquivalenceClasses, Result, TreeState, WeightedGraph,
};

use crate::gen::{self, Rand};
use crate::pipeline::apsp_parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `size x size` product of two weighted paths.
    Grid,
    /// Random graph on `size` vertices with expected degree about 4, minimalized.
    RandomMinimal,
    /// Product of two random trees with about `size` vertices in total.
    TreeProduct,
}

pub fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Gw => "gw",
        Algorithm::FederTree => "feder-tree",
    }
}

pub fn instance(family: Family, size: usize, rng: &mut Rand) -> WeightedGraph {
    let size = size.max(1);
    match family {
        Family::Grid => gen::grid(rng, size, 3),
        Family::RandomMinimal => {
            let p = if size <= 5 { 0.5 } else { 4.0 / (size - 1) as f64 };
            gen::random_minimal(rng, size, p, 3)
        }
        Family::TreeProduct => gen::tree_product(rng, size, 3),
    }
}

/// Phase times for one algorithm on one graph. `relation` covers building
/// the relation (for the tree route, the whole tree search); `components`
/// is zero for the tree route, which yields its classes directly.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Sample {
    pub relation: Duration,
    pub components: Duration,
    pub quotients: Duration,
}

impl Sample {
    pub fn total(&self) -> Duration {
        self.relation + self.components + self.quotients
    }

    fn min(self, o: Sample) -> Sample {
        Sample {
            relation: self.relation.min(o.relation),
            components: self.components.min(o.components),
            quotients: self.quotients.min(o.quotients),
        }
    }
}

/// Runs `algo` once on `g`, timing each phase after APSP.
pub fn measure_once(g: &WeightedGraph, d: &DistanceMatrix, algo: Algorithm) -> Result<(Sample, EquivalenceClasses)> {
    let mut s = Sample::default();
    let classes = match algo {
        Algorithm::Gw => {
            let t = Instant::now();
            let rg = build_relation_graph(g, d, RelationKind::Theta);
            s.relation = t.elapsed();
            let t = Instant::now();
            let c = equivalence_classes(&rg);
            s.components = t.elapsed();
            c
        }
        Algorithm::FederTree => {
            let t = Instant::now();
            let c = TreeState::new(g, d)?.run(false)?;
            s.relation = t.elapsed();
            c
        }
    };
    let t = Instant::now();
    decompose_over(g, &classes)?;
    s.quotients = t.elapsed();
    Ok((s, classes))
}

/// Best of `repeat` runs, phase by phase.
pub fn measure(g: &WeightedGraph, d: &DistanceMatrix, algo: Algorithm, repeat: usize) -> Result<(Sample, EquivalenceClasses)> {
    let (mut best, classes) = measure_once(g, d, algo)?;
    for _ in 1..repeat {
        best = best.min(measure_once(g, d, algo)?.0);
    }
    Ok((best, classes))
}

pub const CSV_HEADER: &str = "n,m,algo,phase,millis";

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub struct BenchResult {
    pub csv: String,
    /// Every instance gave the same classes under every algorithm.
    pub agree: bool,
}

/// One CSV row per (instance, algorithm, phase). `total` excludes APSP,
/// which both routes share and which is reported once per instance with
/// `algo` set to `shared`; `total+apsp` adds it back.
pub fn run(family: Family, sizes: &[usize], algos: &[Algorithm], seed: u64, repeat: usize) -> Result<BenchResult> {
    let mut rng = gen::rng(seed);
    let mut csv = format!("{CSV_HEADER}\n");
    let mut agree = true;
    for &size in sizes {
        let g = instance(family, size, &mut rng);
        let (n, m) = (g.vertex_count(), g.edge_count());
        let t = Instant::now();
        let d = apsp_parallel(&g)?;
        let apsp = t.elapsed();
        let _ = writeln!(csv, "{n},{m},shared,apsp,{:.3}", millis(apsp));
        let mut reference: Option<EquivalenceClasses> = None;
        for &algo in algos {
            let (s, classes) = measure(&g, &d, algo, repeat.max(1))?;
            let name = algorithm_name(algo);
            for (phase, t) in [
                ("relation", s.relation),
                ("components", s.components),
                ("quotients", s.quotients),
                ("total", s.total()),
                ("total+apsp", s.total() + apsp),
            ] {
                let _ = writeln!(csv, "{n},{m},{name},{phase},{:.3}", millis(t));
            }
            match &reference {
                None => reference = Some(classes),
                Some(r) => agree &= *r == classes,
            }
        }
    }
    Ok(BenchResult { csv, agree })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = (1..8).map(|i| (i as f64, 3.0 * (i as f64).powf(2.5))).collect();
        assert!((loglog_slope(&pts) - 2.5).abs() < 1e-9);
    }

    #[test]
    fn trivial_size_keeps_header() {
        let r = run(Family::Grid, &[1], &[Algorithm::Gw, Algorithm::FederTree], 1, 1).unwrap();
        let lines: Vec<_> = r.csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 1 + 2 * 5);
        assert!(lines[1].starts_with("1,0,shared,apsp,"));
        assert!(r.agree);
    }

    #[test]
    fn grid_routes_agree() {
        let r = run(Family::Grid, &[10], &[Algorithm::Gw, Algorithm::FederTree], 3, 1).unwrap();
        assert!(r.agree);
        assert!(r.csv.contains("100,180,feder-tree,relation,"));
    }
}
