//! Command-line definitions and dispatch.

use std::fs;
use std::path::{Path, PathBuf};

use cartfact_core::decompose::AUTO_VERIFY_LIMIT;
use cartfact_core::embed::DEFAULT_NODE_BUDGET;
use cartfact_core::metric::{is_minimal, minimalize_with};
use cartfact_core::{
    apsp, count_per_factor, hamming_embed_from_factors, verify_decomposition, Algorithm,
    BruteForce, Decomposition, Error, Mode, WeightedGraph,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bench::{self, Family};
use crate::error::CliError;
use crate::json::{self, ParsedGraph};
use crate::pipeline::{self, Kind, Request, Timings};
use crate::report::RunReport;
use crate::{dot, explain};

#[derive(Debug, Parser)]
#[command(name = "cartfact", version, about = "Cartesian factorization and pseudofactorization of weighted graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Always verify the result (by default only graphs up to 64 vertices).
    #[arg(long, global = true)]
    pub verify: bool,
    /// Attach a witness chain for every class.
    #[arg(long, global = true)]
    pub explain: bool,
    /// Drop edges longer than the distance between their endpoints first.
    #[arg(long, global = true)]
    pub minimalize: bool,
    #[arg(long, global = true, value_enum, default_value_t = AlgorithmArg::Gw)]
    pub algorithm: AlgorithmArg,
    /// Seed for generated graph families.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Check the tree algorithm's loop invariant as it runs.
    #[arg(long, global = true)]
    pub check_invariant: bool,
    /// Write a run report (digest, timings, verdict, payload) to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

impl Default for Global {
    fn default() -> Self {
        Self {
            format: Format::Json,
            verify: false,
            explain: false,
            minimalize: false,
            algorithm: AlgorithmArg::Gw,
            seed: 0,
            check_invariant: false,
            report: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Gw,
    FederTree,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Gw => Algorithm::Gw,
            AlgorithmArg::FederTree => Algorithm::FederTree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Hypercube,
    Hamming,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Grid,
    RandomMinimal,
    TreeProduct,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Grid => Family::Grid,
            FamilyArg::RandomMinimal => Family::RandomMinimal,
            FamilyArg::TreeProduct => Family::TreeProduct,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical irreducible pseudofactorization of a connected minimal graph.
    Pseudofactor { input: PathBuf },
    /// Prime factorization of a connected graph.
    Factor { input: PathBuf },
    /// The minimal graph with the same metric.
    Minimalize { input: PathBuf },
    /// Check a decomposition file against a graph; exit 3 if it does not hold.
    Verify { graph: PathBuf, decomposition: PathBuf },
    /// Embed into a hypercube (brute force) or a Hamming graph (via pseudofactors).
    Embed {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Hypercube)]
        target: Target,
        /// Largest dimension searched per graph; defaults to the total edge weight.
        #[arg(long)]
        max_dim: Option<usize>,
        /// Search nodes allowed before giving up.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Number of non-equivalent hypercube embeddings, per pseudofactor and in total.
    CountEmbeddings {
        input: PathBuf,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Time both pseudofactorization routes on generated graphs; CSV on stdout.
    Bench {
        #[arg(long, value_enum, default_value_t = FamilyArg::Grid)]
        family: FamilyArg,
        #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20, 30])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_enum, default_values_t = [AlgorithmArg::Gw, AlgorithmArg::FederTree])]
        algorithms: Vec<AlgorithmArg>,
        /// Runs per measurement; the fastest is kept.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

/// What a command printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub stdout: String,
    pub exit: i32,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_text(path: &Path) -> Result<(String, String), CliError> {
    let bytes = read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))?;
    Ok((text, digest))
}

fn load_graph(path: &Path) -> Result<(ParsedGraph, String), CliError> {
    let (text, digest) = read_text(path)?;
    let g = json::parse_graph(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok((g, digest))
}

fn minimalized(g: &WeightedGraph) -> Result<WeightedGraph, CliError> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph.into());
    }
    let d = apsp(g)?;
    if !d.is_connected() {
        return Err(Error::Disconnected.into());
    }
    Ok(minimalize_with(g, &d)?)
}

/// Decomposition document for an already parsed graph; `--minimalize`,
/// `--explain` and `--format` are honoured.
pub struct Decomposed {
    pub payload: Value,
    pub text: String,
    pub timings: Timings,
    pub verified: Option<bool>,
}

pub fn decompose_parsed(parsed: &ParsedGraph, kind: Kind, global: &Global) -> Result<Decomposed, CliError> {
    let g = if global.minimalize {
        minimalized(&parsed.graph)?
    } else {
        parsed.graph.clone()
    };
    let req = Request {
        kind,
        verify: global.verify || g.vertex_count() <= AUTO_VERIFY_LIMIT,
        check_invariant: global.check_invariant,
    };
    let out = pipeline::run(&g, &req)?;
    let mut dec: Decomposition = out.decomposition;
    dec.scale = parsed.scale;
    let mut payload = json::decomposition_to_value(&g, &dec);
    if global.explain {
        payload["explain"] = explain::explain(&g, &out.relation_graph, &dec.classes);
    }
    let text = match global.format {
        Format::Json => json::render(&payload),
        Format::Dot => dot::to_dot(&g, Some(&dec.classes)),
    };
    Ok(Decomposed {
        payload,
        text,
        timings: out.timings,
        verified: out.verified,
    })
}

/// Runs a parsed command line. Errors carry their exit code; a failed
/// verification that still has output to show returns exit 3 in [`Run`].
pub fn run(cli: &Cli) -> Result<Run, CliError> {
    let global = &cli.global;
    if global.explain && global.format == Format::Dot {
        return Err(CliError::Usage("--explain needs --format json".into()));
    }
    let (name, report) = match &cli.command {
        Command::Pseudofactor { input } | Command::Factor { input } => {
            let (parsed, digest) = load_graph(input)?;
            let (name, kind, algo) = match cli.command {
                Command::Factor { .. } => ("factor", Kind::Factor, None),
                _ => {
                    let a = Algorithm::from(global.algorithm);
                    ("pseudofactor", Kind::Pseudofactor(a), Some(bench::algorithm_name(a)))
                }
            };
            let out = decompose_parsed(&parsed, kind, global)?;
            let mut r = RunReport::new(name, digest, algo);
            r.timings = out.timings;
            r.verified = out.verified;
            r.payload = out.payload;
            r.output = out.text;
            (name, r)
        }
        Command::Minimalize { input } => {
            let (parsed, digest) = load_graph(input)?;
            let m = minimalized(&parsed.graph)?;
            let mut r = RunReport::new("minimalize", digest, None);
            r.payload = json::graph_document(&m, parsed.scale);
            r.output = match global.format {
                Format::Json => json::render(&r.payload),
                Format::Dot => dot::to_dot(&m, None),
            };
            ("minimalize", r)
        }
        Command::Verify { graph, decomposition } => {
            json_only(global, "verify")?;
            let (parsed, digest) = load_graph(graph)?;
            let (text, _) = read_text(decomposition)?;
            let dec = json::parse_decomposition(&text).map_err(|e| match e {
                CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", decomposition.display())),
                other => other,
            })?;
            let (g, dec) = common_scale(&parsed, dec)?;
            let ok = verify_with_mode(&g, &dec);
            let mut r = RunReport::new("verify", digest, None);
            r.verified = Some(ok);
            r.payload = json!({"mode": dec.mode.as_str(), "verified": ok});
            r.output = json::render(&r.payload);
            ("verify", r)
        }
        Command::Embed {
            input,
            target,
            max_dim,
            budget,
        } => {
            json_only(global, "embed")?;
            let (parsed, digest) = load_graph(input)?;
            let g = &parsed.graph;
            let limits = BruteForce {
                max_dim: *max_dim,
                budget: *budget,
            };
            let emb = match target {
                Target::Hypercube => {
                    if g.vertex_count() == 0 {
                        return Err(Error::EmptyGraph.into());
                    }
                    let d = apsp(g)?;
                    if !d.is_connected() {
                        return Err(Error::Disconnected.into());
                    }
                    limits.embed(g, &d)?
                }
                Target::Hamming => hamming_embed_from_factors(g, &limits)?,
            };
            let mut r = RunReport::new("embed", digest, None);
            r.payload = json::embedding_to_value(g, emb.as_ref());
            r.output = json::render(&r.payload);
            ("embed", r)
        }
        Command::CountEmbeddings { input, max_dim, budget } => {
            json_only(global, "count-embeddings")?;
            let (parsed, digest) = load_graph(input)?;
            let limits = BruteForce {
                max_dim: *max_dim,
                budget: *budget,
            };
            let per = count_per_factor(&parsed.graph, &limits)?;
            let total = per
                .iter()
                .try_fold(1u64, |acc, &c| acc.checked_mul(c))
                .ok_or(Error::Overflow)?;
            let mut r = RunReport::new("count-embeddings", digest, None);
            r.payload = json!({"count": total, "per_factor": per});
            r.output = json::render(&r.payload);
            ("count-embeddings", r)
        }
        Command::Bench {
            family,
            sizes,
            algorithms,
            repeat,
        } => {
            let algos: Vec<Algorithm> = algorithms.iter().map(|&a| a.into()).collect();
            let res = bench::run((*family).into(), sizes, &algos, global.seed, *repeat)?;
            let mut r = RunReport::new("bench", String::new(), None);
            r.verified = Some(res.agree);
            r.payload = Value::String(res.csv.clone());
            r.output = res.csv;
            ("bench", r)
        }
    };
    if let Some(path) = &global.report {
        fs::write(path, json::render(&report.to_value())).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let exit = match report.verified {
        Some(false) => 3,
        _ => 0,
    };
    if exit == 3 && name != "verify" && name != "bench" {
        return Err(CliError::Verification(format!("{name} output does not reproduce the input")));
    }
    Ok(Run {
        stdout: report.output,
        exit,
    })
}

fn json_only(global: &Global, cmd: &str) -> Result<(), CliError> {
    match global.format {
        Format::Json => Ok(()),
        Format::Dot => Err(CliError::Usage(format!("{cmd} only writes JSON"))),
    }
}

fn verify_with_mode(g: &WeightedGraph, dec: &Decomposition) -> bool {
    if dec.mode == Mode::Pseudofactorization && g.vertex_count() > 0 {
        // A pseudofactorization only embeds minimal graphs isometrically.
        match apsp(g) {
            Ok(d) if is_minimal(g, &d) => {}
            _ => return false,
        }
    }
    verify_decomposition(g, dec)
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    (a / x).checked_mul(b)
}

fn scaled(g: &WeightedGraph, k: u64) -> Result<WeightedGraph, CliError> {
    if k == 1 {
        return Ok(g.clone());
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| e.w.checked_mul(k).map(|w| (e.u, e.v, w)).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightedGraph::new(g.labels().to_vec(), edges)?)
}

/// Brings the graph and the decomposition to a common weight scale.
fn common_scale(parsed: &ParsedGraph, dec: json::ParsedDecomposition) -> Result<(WeightedGraph, Decomposition), CliError> {
    let l = lcm(parsed.scale, dec.scale).ok_or(Error::Overflow)?;
    let g = scaled(&parsed.graph, l / parsed.scale)?;
    let k = l / dec.scale;
    let mut dec = dec;
    dec.factors = dec.factors.iter().map(|f| scaled(f, k)).collect::<Result<_, _>>()?;
    dec.scale = l;
    let resolved = dec.resolve(&g)?;
    Ok((g, resolved))
}
