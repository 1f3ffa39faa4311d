//! Breaking a graph up over an edge partition, and the two decompositions
//! built on it.
//!
//! For each class `E_k`, the graph minus `E_k` falls apart into components;
//! the quotient has one vertex per component and one edge per pair of
//! components joined by an `E_k` edge. Each vertex maps to the tuple of its
//! component ids.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, VertexMap, Weight, WeightedGraph};
use crate::iso::{isometric_into, MetricHost};
use crate::metric::{apsp, check_minimal, DistanceMatrix};
use crate::relations::{factor_classes, theta_classes, EquivalenceClasses, UnionFind};
use crate::treefast::find_theta_tree;

/// Above this many vertices, [`Verify::Auto`] skips the self-check.
pub const AUTO_VERIFY_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Factorization,
    Pseudofactorization,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Factorization => "factorization",
            Mode::Pseudofactorization => "pseudofactorization",
        }
    }
}

/// How the theta classes are computed for pseudofactorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    /// All-pairs relation graph, `O(m^2)` after APSP.
    #[default]
    Gw,
    /// Spanning-tree restricted relation, `O(nm)` after APSP.
    FederTree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Verify {
    /// Verify graphs with at most [`AUTO_VERIFY_LIMIT`] vertices.
    #[default]
    Auto,
    Always,
    Never,
}

impl Verify {
    fn applies(self, n: usize) -> bool {
        match self {
            Verify::Auto => n <= AUTO_VERIFY_LIMIT,
            Verify::Always => true,
            Verify::Never => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Options {
    pub algorithm: Algorithm,
    pub verify: Verify,
    /// Assert the tree algorithm's loop invariant on every outer iteration.
    pub check_invariant: bool,
}

/// One class's share of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPiece {
    pub class: usize,
    /// Component id of every vertex of `g` once the class is removed. Ids are
    /// ordered by smallest member vertex.
    pub component: Vec<usize>,
    pub quotient: WeightedGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub mode: Mode,
    /// One factor per class, in class order. A single `K1` for the one-vertex graph.
    pub factors: Vec<WeightedGraph>,
    pub map: VertexMap,
    pub classes: EquivalenceClasses,
    /// Common multiplier applied to the input weights before decomposing.
    pub scale: u64,
}

/// Quotient pieces of `g` over every class of `classes`.
pub fn decompose_over(g: &WeightedGraph, classes: &EquivalenceClasses) -> Result<Vec<QuotientPiece>> {
    if classes.edge_count() != g.edge_count() {
        return Err(Error::NotAPartition);
    }
    let n = g.vertex_count();
    let mut pieces = Vec::with_capacity(classes.len());
    for (k, members) in classes.classes().iter().enumerate() {
        let mut uf = UnionFind::new(n);
        for (e, edge) in g.edges().iter().enumerate() {
            if classes.class_of(e) != k {
                uf.union(edge.u, edge.v);
            }
        }
        let mut root_id = vec![usize::MAX; n];
        let mut component = Vec::with_capacity(n);
        let mut count = 0;
        for v in 0..n {
            let r = uf.find(v);
            if root_id[r] == usize::MAX {
                root_id[r] = count;
                count += 1;
            }
            component.push(root_id[r]);
        }

        let mut seen: BTreeMap<(usize, usize), (Weight, EdgeId)> = BTreeMap::new();
        let mut qedges = Vec::new();
        for &e in members {
            let edge = g.edge(e);
            let (ca, cb) = (component[edge.u], component[edge.v]);
            if ca == cb {
                return Err(Error::ClassEdgeInsideComponent { class: k, edge: e });
            }
            let key = (ca.min(cb), ca.max(cb));
            match seen.get(&key) {
                Some(&(w, _)) if w != edge.w => {
                    return Err(Error::WeightMismatch {
                        class: k,
                        a: key.0,
                        b: key.1,
                        first: w,
                        second: edge.w,
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (edge.w, e));
                    qedges.push((key.0, key.1, edge.w));
                }
            }
        }
        let labels = (0..count).map(|c| c.to_string()).collect();
        pieces.push(QuotientPiece {
            class: k,
            component,
            quotient: WeightedGraph::new(labels, qedges)?,
        });
    }
    Ok(pieces)
}

impl Decomposition {
    /// Quotients over `classes` assembled into a decomposition of `g`.
    pub fn from_classes(mode: Mode, g: &WeightedGraph, classes: EquivalenceClasses) -> Result<Self> {
        assemble(mode, g, classes)
    }

    /// Image tuple of vertex `v`.
    pub fn image(&self, v: VertexId) -> &[usize] {
        self.map.image(v)
    }
}

fn assemble(mode: Mode, g: &WeightedGraph, classes: EquivalenceClasses) -> Result<Decomposition> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.vertex_count();
    if n == 1 {
        let k1 = WeightedGraph::unlabeled(1, [])?;
        return Ok(Decomposition {
            mode,
            factors: vec![k1],
            map: VertexMap::new(1, vec![0])?,
            classes,
            scale: 1,
        });
    }
    let pieces = decompose_over(g, &classes)?;
    let arity = pieces.len();
    let mut coords = vec![0; n * arity];
    for (i, p) in pieces.iter().enumerate() {
        for v in 0..n {
            coords[v * arity + i] = p.component[v];
        }
    }
    Ok(Decomposition {
        mode,
        factors: pieces.into_iter().map(|p| p.quotient).collect(),
        map: VertexMap::new(arity, coords)?,
        classes,
        scale: 1,
    })
}

fn connected_apsp(g: &WeightedGraph) -> Result<DistanceMatrix> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = apsp(g)?;
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(d)
}

/// Canonical irreducible pseudofactorization of a connected minimal graph.
pub fn pseudofactorize(g: &WeightedGraph) -> Result<Decomposition> {
    pseudofactorize_with(g, &Options::default())
}

pub fn pseudofactorize_with(g: &WeightedGraph, opts: &Options) -> Result<Decomposition> {
    let d = connected_apsp(g)?;
    pseudofactorize_given(g, &d, opts)
}

/// [`pseudofactorize_with`] reusing distances the caller already has.
pub fn pseudofactorize_given(g: &WeightedGraph, d: &DistanceMatrix, opts: &Options) -> Result<Decomposition> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    check_minimal(g, d)?;
    let classes = match opts.algorithm {
        Algorithm::Gw => theta_classes(g, d),
        Algorithm::FederTree => find_theta_tree(g, d, opts.check_invariant)?.1,
    };
    let dec = assemble(Mode::Pseudofactorization, g, classes)?;
    if opts.verify.applies(g.vertex_count()) && !verify_decomposition(g, &dec) {
        return Err(Error::VerificationFailed);
    }
    Ok(dec)
}

/// Prime factorization of a connected graph; minimality is not required.
pub fn factorize(g: &WeightedGraph) -> Result<Decomposition> {
    factorize_with(g, Verify::Auto)
}

pub fn factorize_with(g: &WeightedGraph, verify: Verify) -> Result<Decomposition> {
    let d = connected_apsp(g)?;
    factorize_given(g, &d, verify)
}

pub fn factorize_given(g: &WeightedGraph, d: &DistanceMatrix, verify: Verify) -> Result<Decomposition> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let classes = factor_classes(g, d);
    let dec = assemble(Mode::Factorization, g, classes)?;
    if verify.applies(g.vertex_count()) && !verify_decomposition(g, &dec) {
        return Err(Error::VerificationFailed);
    }
    Ok(dec)
}

/// A connected minimal graph with at most one theta class.
pub fn is_irreducible(g: &WeightedGraph) -> Result<bool> {
    let d = connected_apsp(g)?;
    check_minimal(g, &d)?;
    Ok(theta_classes(g, &d).len() <= 1)
}

/// A connected graph with at most one class of the closure of theta and tau.
pub fn is_prime(g: &WeightedGraph) -> Result<bool> {
    let d = connected_apsp(g)?;
    Ok(factor_classes(g, &d).len() <= 1)
}

/// The product of the factors, given by per-factor distances rather than
/// materialised.
struct ProductHost<'a> {
    factors: &'a [WeightedGraph],
    dists: Vec<DistanceMatrix>,
}

impl MetricHost for ProductHost<'_> {
    type Vertex = [usize];

    fn edge_weight(&self, a: &[usize], b: &[usize]) -> Option<Weight> {
        let mut diff = (0..a.len()).filter(|&i| a[i] != b[i]);
        let l = diff.next()?;
        if diff.next().is_some() {
            return None;
        }
        self.factors[l].weight_between(a[l], b[l])
    }

    fn distance(&self, a: &[usize], b: &[usize]) -> Option<i64> {
        let mut total = 0i64;
        for (i, d) in self.dists.iter().enumerate() {
            total = total.checked_add(d.distance(a[i], b[i])?)?;
        }
        Some(total)
    }
}

/// Checks `dec` against `g` with the product oracles.
///
/// Both modes require an injective, edge- and weight-preserving, distance
/// preserving map into the product. Factorization additionally requires the
/// product to have exactly as many vertices and edges as `g`, which makes the
/// map a bijection whose inverse also preserves edges.
pub fn verify_decomposition(g: &WeightedGraph, dec: &Decomposition) -> bool {
    let n = g.vertex_count();
    let k = dec.factors.len();
    if k == 0 || dec.map.arity() != k || dec.map.len() != n {
        return false;
    }
    for v in 0..n {
        let image = dec.map.image(v);
        if image
            .iter()
            .zip(&dec.factors)
            .any(|(&c, f)| c >= f.vertex_count())
        {
            return false;
        }
    }
    let Ok(dg) = apsp(g) else { return false };
    let mut dists = Vec::with_capacity(k);
    for f in &dec.factors {
        match apsp(f) {
            Ok(d) if d.is_connected() => dists.push(d),
            _ => return false,
        }
    }
    if dec.mode == Mode::Factorization && !product_counts_match(g, &dec.factors) {
        return false;
    }
    let host = ProductHost {
        factors: &dec.factors,
        dists,
    };
    let images: Vec<&[usize]> = (0..n).map(|v| dec.map.image(v)).collect();
    isometric_into(g, &dg, &host, &images)
}

fn product_counts_match(g: &WeightedGraph, factors: &[WeightedGraph]) -> bool {
    let sizes: Vec<usize> = factors.iter().map(WeightedGraph::vertex_count).collect();
    let Some(total) = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)) else {
        return false;
    };
    let mut edges = 0usize;
    for (i, f) in factors.iter().enumerate() {
        // m_i times the product of the other sizes
        let others = sizes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .try_fold(1usize, |acc, (_, &s)| acc.checked_mul(s));
        let Some(term) = others.and_then(|o| o.checked_mul(f.edge_count())) else {
            return false;
        };
        let Some(next) = edges.checked_add(term) else {
            return false;
        };
        edges = next;
    }
    total == g.vertex_count() && edges == g.edge_count()
}
