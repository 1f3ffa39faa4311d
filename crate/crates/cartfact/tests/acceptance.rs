//! Acceptance run: one PASS/FAIL line per criterion; exits nonzero if any
//! fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use cartfact::bench::{loglog_slope, measure};
use cartfact::cli::{decompose_parsed, Global};
use cartfact::json::{self, ParsedGraph};
use cartfact::pipeline::Kind;
use cartfact::{corpus, gen};
use cartfact_core::metric::single_source;
use cartfact_core::treefast::find_theta_tree;
use cartfact_core::{
    apsp, cartesian_product, class_path_sum, count_hypercube_embeddings, families, factorize,
    graphs_isomorphic, is_hypercube_embeddable, is_irreducible, is_prime, pseudofactorize_with,
    theta_classes, verify_decomposition, Algorithm, Decomposition, Options, Verify, WeightedGraph,
};
use rand::Rng;

const SEED: u64 = 0x5eed_cafe;
const RANDOM_COUNT: usize = 1000;
const RANDOM_MAX_N: usize = 12;
const RELABEL_RUNS: usize = 200;
const PRIME_PAIRS: usize = 100;
const PRIME_MAX_N: usize = 5;
const WALK_TRIPLES: usize = 1000;
const EMBED_MAX_N: usize = 7;
const GRID_SIDES: [usize; 6] = [10, 20, 30, 40, 50, 60];
const GRID_REPEAT: usize = 3;
const FEDER_SLOPE_MAX: f64 = 2.4;
const GW_SLOPE_MIN: f64 = 2.6;
const CLI_SAMPLE: usize = 40;

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
    secs: f64,
}

fn check(id: &'static str, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (pass, detail) = f();
    Line {
        id,
        pass,
        detail,
        secs: t.elapsed().as_secs_f64(),
    }
}

fn unverified() -> Options {
    Options {
        verify: Verify::Never,
        ..Options::default()
    }
}

fn same_factors(a: &[WeightedGraph], b: &[WeightedGraph]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|f| {
        (0..b.len()).any(|j| {
            let hit = !used[j] && graphs_isomorphic(f, &b[j]).is_some();
            used[j] |= hit;
            hit
        })
    })
}

fn corpus() -> Vec<WeightedGraph> {
    let mut c = corpus::sweep(SEED);
    c.extend(corpus::random_minimalized(SEED ^ 1, RANDOM_COUNT, RANDOM_MAX_N));
    c
}

fn c1(corpus: &[WeightedGraph]) -> (bool, String) {
    let mut bad = 0;
    for g in corpus {
        let d = apsp(g).unwrap();
        let slow = theta_classes(g, &d);
        let (_, fast) = find_theta_tree(g, &d, false).unwrap();
        bad += usize::from(slow != fast);
    }
    (bad == 0, format!("{} graphs, {bad} mismatches", corpus.len()))
}

fn c2(corpus: &[WeightedGraph]) -> (bool, String) {
    let mut bad = 0;
    for g in corpus {
        let p = pseudofactorize_with(g, &unverified()).unwrap();
        let f = cartfact_core::factorize_with(g, Verify::Never).unwrap();
        let product = cartesian_product(&f.factors).unwrap();
        let ok = verify_decomposition(g, &p)
            && verify_decomposition(g, &f)
            && graphs_isomorphic(g, &product).is_some();
        bad += usize::from(!ok);
    }
    (bad == 0, format!("{} graphs, {bad} failures", corpus.len()))
}

fn c3(corpus: &[WeightedGraph]) -> (bool, String) {
    let (mut checked, mut bad) = (0, 0);
    for g in corpus {
        let p = pseudofactorize_with(g, &unverified()).unwrap();
        let f = cartfact_core::factorize_with(g, Verify::Never).unwrap();
        for x in &p.factors {
            checked += 1;
            bad += usize::from(!is_irreducible(x).unwrap());
        }
        for x in &f.factors {
            checked += 1;
            bad += usize::from(!is_prime(x).unwrap());
        }
    }
    (bad == 0, format!("{checked} outputs, {bad} reducible"))
}

fn c4() -> (bool, String) {
    let mut rng = gen::rng(SEED ^ 4);
    let mut bad = 0;
    for _ in 0..RELABEL_RUNS {
        let n = rng.random_range(2..=10);
        let p = rng.random_range(0.1..0.7);
        let g = gen::random_minimal(&mut rng, n, p, 3);
        let perm = gen::random_permutation(&mut rng, n);
        let h = g.permute_vertices(&perm).unwrap();
        let (a, b) = (pseudofactorize_with(&g, &unverified()).unwrap(), pseudofactorize_with(&h, &unverified()).unwrap());
        let (fa, fb) = (factorize(&g).unwrap(), factorize(&h).unwrap());
        bad += usize::from(!same_factors(&a.factors, &b.factors) || !same_factors(&fa.factors, &fb.factors));
    }
    (bad == 0, format!("{RELABEL_RUNS} relabelings, {bad} mismatches"))
}

fn c5() -> (bool, String) {
    let mut rng = gen::rng(SEED ^ 5);
    let mut bad = 0;
    for _ in 0..PRIME_PAIRS {
        let a = gen::random_prime(&mut rng, PRIME_MAX_N, 3);
        let b = gen::random_prime(&mut rng, PRIME_MAX_N, 3);
        let dec: Decomposition = factorize(&cartesian_product(&[a.clone(), b.clone()]).unwrap()).unwrap();
        bad += usize::from(!same_factors(&dec.factors, &[a, b]));
    }
    (bad == 0, format!("{PRIME_PAIRS} pairs, {bad} mismatches"))
}

/// A random walk from `u` of up to `steps` steps, then a shortest path to `v`.
fn walk(g: &WeightedGraph, rng: &mut gen::Rand, u: usize, v: usize, steps: usize) -> Vec<usize> {
    let mut w = vec![u];
    let mut x = u;
    for _ in 0..rng.random_range(0..=steps) {
        let nb = g.neighbors(x);
        x = nb[rng.random_range(0..nb.len())].0;
        w.push(x);
    }
    let dv = single_source(g, v).unwrap();
    while x != v {
        let &(y, e) = g
            .neighbors(x)
            .iter()
            .find(|&&(y, e)| dv[y] + g.edge(e).w as i64 == dv[x])
            .expect("a neighbour on a shortest path");
        let _ = e;
        x = y;
        w.push(x);
    }
    w
}

fn c6() -> (bool, String) {
    let mut rng = gen::rng(SEED ^ 6);
    let mut bad = 0;
    for _ in 0..WALK_TRIPLES {
        let n = rng.random_range(2..=10);
        let p = rng.random_range(0.1..0.7);
        let g = gen::random_minimal(&mut rng, n, p, 3);
        let d = apsp(&g).unwrap();
        let classes = theta_classes(&g, &d);
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let p1 = walk(&g, &mut rng, u, v, 12);
        let p2 = walk(&g, &mut rng, u, v, 12);
        for k in 0..classes.len() {
            let s1 = class_path_sum(&g, &d, &classes, &p1, k).unwrap();
            let s2 = class_path_sum(&g, &d, &classes, &p2, k).unwrap();
            if s1 != s2 {
                bad += 1;
                break;
            }
        }
    }
    (bad == 0, format!("{WALK_TRIPLES} triples, {bad} disagreements"))
}

fn c7(corpus: &[WeightedGraph]) -> (bool, String) {
    let (mut checked, mut embeddable, mut bad) = (0, 0, 0);
    for g in corpus.iter().filter(|g| g.vertex_count() <= EMBED_MAX_N) {
        let dim = g.total_weight().unwrap() as usize;
        let whole = is_hypercube_embeddable(g, &apsp(g).unwrap(), dim).unwrap();
        let dec = pseudofactorize_with(g, &unverified()).unwrap();
        let parts = dec.factors.iter().all(|f| {
            let dim = f.total_weight().unwrap() as usize;
            is_hypercube_embeddable(f, &apsp(f).unwrap(), dim).unwrap()
        });
        checked += 1;
        embeddable += usize::from(whole);
        bad += usize::from(whole != parts);
    }
    (bad == 0, format!("{checked} graphs ({embeddable} embeddable), {bad} disagreements"))
}

fn c8() -> (bool, String) {
    let k2 = count_hypercube_embeddings(&families::complete(4, 2).unwrap(), 64).unwrap();
    let k4 = count_hypercube_embeddings(&families::complete(4, 4).unwrap(), 64).unwrap();
    (k2 == 2 && k4 == 3, format!("2K4 -> {k2}, 4K4 -> {k4}"))
}

fn c9() -> (bool, String) {
    let mut rng = gen::rng(SEED ^ 9);
    let mut pts: BTreeMap<&str, Vec<(f64, f64)>> = BTreeMap::new();
    let mut agree = true;
    for side in GRID_SIDES {
        let g = gen::grid(&mut rng, side, 3);
        let d = apsp(&g).unwrap();
        let n = g.vertex_count() as f64;
        let (gw, cg) = measure(&g, &d, Algorithm::Gw, GRID_REPEAT).unwrap();
        let (ft, cf) = measure(&g, &d, Algorithm::FederTree, GRID_REPEAT).unwrap();
        agree &= cg == cf;
        pts.entry("gw").or_default().push((n, gw.relation.as_secs_f64()));
        pts.entry("feder-tree").or_default().push((n, ft.relation.as_secs_f64()));
    }
    let sg = loglog_slope(&pts["gw"]);
    let sf = loglog_slope(&pts["feder-tree"]);
    let times = |k: &str| {
        pts[k]
            .iter()
            .map(|&(n, t)| format!("{n}:{:.1}ms", t * 1e3))
            .collect::<Vec<_>>()
            .join(" ")
    };
    (
        agree && sf <= FEDER_SLOPE_MAX && sg >= GW_SLOPE_MIN,
        format!(
            "slope feder-tree {sf:.2} (<= {FEDER_SLOPE_MAX}), gw {sg:.2} (>= {GW_SLOPE_MIN}); gw [{}]; feder-tree [{}]",
            times("gw"),
            times("feder-tree")
        ),
    )
}

fn documents(corpus: &[WeightedGraph]) -> Vec<String> {
    let global = Global::default();
    corpus
        .iter()
        .flat_map(|g| {
            let parsed = ParsedGraph { graph: g.clone(), scale: 1 };
            [Kind::Pseudofactor(Algorithm::Gw), Kind::Pseudofactor(Algorithm::FederTree), Kind::Factor]
                .map(|k| decompose_parsed(&parsed, k, &global).unwrap().text)
        })
        .collect()
}

fn c10(first: &[WeightedGraph]) -> (bool, String) {
    let again = corpus();
    let (a, b) = (documents(first), documents(&again));
    let same_lib = a == b;
    let dir = tempfile::TempDir::new().unwrap();
    let mut cli_bad = 0;
    let step = (first.len() / CLI_SAMPLE).max(1);
    for (i, g) in first.iter().step_by(step).take(CLI_SAMPLE).enumerate() {
        let path = dir.path().join(format!("g{i}.json"));
        std::fs::write(&path, json::render(&json::graph_to_value(g))).unwrap();
        let parsed = json::parse_graph(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let lib = decompose_parsed(&parsed, Kind::Pseudofactor(Algorithm::Gw), &Global::default()).unwrap().text;
        let out = Command::new(env!("CARGO_BIN_EXE_cartfact")).arg("pseudofactor").arg(&path).output().unwrap();
        cli_bad += usize::from(out.status.code() != Some(0) || out.stdout != lib.as_bytes());
    }
    (
        same_lib && cli_bad == 0,
        format!("{} documents identical across runs: {same_lib}; CLI vs library mismatches: {cli_bad}/{CLI_SAMPLE}", a.len()),
    )
}

fn main() -> ExitCode {
    let corpus = corpus();
    let lines = [
        check("C1 theta classes: relation graph vs spanning tree", || c1(&corpus)),
        check("C2 self-verification", || c2(&corpus)),
        check("C3 outputs irreducible / prime", || c3(&corpus)),
        check("C4 uniqueness under relabeling", c4),
        check("C5 factorize(A x B) recovers A and B", c5),
        check("C6 class path sums agree between walks", c6),
        check("C7 hypercube embeddability via pseudofactors", || c7(&corpus)),
        check("C8 embedding counts of 2K4 and 4K4", c8),
        check("C9 relation-phase growth on grids", c9),
        check("C10 deterministic JSON", || c10(&corpus)),
    ];
    let mut failed = 0;
    for l in &lines {
        println!("[{}] {} ({:.1}s): {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.secs, l.detail);
        failed += usize::from(!l.pass);
    }
    println!("{} passed, {failed} failed", lines.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
