//! Hamming and hypercube embeddings at desk scale.
//!
//! A Hamming embedding maps vertices to equal-length strings so that Hamming
//! distance equals graph distance and every coordinate changes across some
//! edge. Embeddings are equivalent when one becomes the other by permuting
//! coordinates and relabeling digits coordinate by coordinate.
//!
//! The hypercube search enumerates each equivalence class exactly once. With
//! vertex 0 pinned to the zero string, a binary embedding is a multiset of
//! columns; vertices are placed one at a time and columns that agree on every
//! placed vertex are kept as one group with a multiplicity, so the search
//! branches on how many columns of each group turn on for the new vertex.

use alloc::vec;
use alloc::vec::Vec;

use crate::decompose::{pseudofactorize_with, Decomposition, Options, Verify};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::metric::{apsp, minimalize_with, DistanceMatrix};
use crate::relations::UnionFind;

/// Node budget used when the caller does not pick one.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// The brute-force search tracks placed vertices in a `u64` mask.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HammingEmbedding {
    sigma: u32,
    n: usize,
    dim: usize,
    digits: Vec<u32>,
}

impl HammingEmbedding {
    pub fn new(sigma: u32, strings: &[Vec<u32>]) -> Result<Self> {
        if sigma < 2 {
            return Err(Error::InvalidEmbedding("alphabet needs at least two symbols"));
        }
        let dim = strings.first().map_or(0, Vec::len);
        let mut digits = Vec::with_capacity(dim * strings.len());
        for s in strings {
            if s.len() != dim {
                return Err(Error::InvalidEmbedding("strings differ in length"));
            }
            if s.iter().any(|&x| x >= sigma) {
                return Err(Error::InvalidEmbedding("digit outside the alphabet"));
            }
            digits.extend_from_slice(s);
        }
        Ok(Self {
            sigma,
            n: strings.len(),
            dim,
            digits,
        })
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn string(&self, v: VertexId) -> &[u32] {
        &self.digits[v * self.dim..(v + 1) * self.dim]
    }

    pub fn strings(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.n).map(move |v| self.string(v))
    }

    pub fn hamming(&self, u: VertexId, v: VertexId) -> usize {
        self.string(u)
            .iter()
            .zip(self.string(v))
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Isometry plus "every coordinate changes across some edge".
    pub fn validate(&self, g: &WeightedGraph, d: &DistanceMatrix) -> Result<()> {
        let n = g.vertex_count();
        if self.n != n || d.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: self.n,
            });
        }
        for u in 0..n {
            for v in u + 1..n {
                let h = i64::try_from(self.hamming(u, v)).map_err(|_| Error::Overflow)?;
                if d.distance(u, v) != Some(h) {
                    return Err(Error::InvalidEmbedding(
                        "Hamming distance differs from graph distance",
                    ));
                }
            }
        }
        let mut changes = vec![false; self.dim];
        for e in g.edges() {
            let (a, b) = (self.string(e.u), self.string(e.v));
            for j in 0..self.dim {
                changes[j] |= a[j] != b[j];
            }
        }
        if changes.contains(&false) {
            return Err(Error::InvalidEmbedding(
                "a coordinate never changes across an edge",
            ));
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &WeightedGraph, d: &DistanceMatrix) -> bool {
        self.validate(g, d).is_ok()
    }

    /// Columns with digits renamed in order of first appearance, sorted.
    fn canonical_columns(&self) -> Vec<Vec<u32>> {
        let mut cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                let mut names: Vec<(u32, u32)> = Vec::new();
                (0..self.n)
                    .map(|v| {
                        let x = self.digits[v * self.dim + j];
                        match names.iter().find(|&&(from, _)| from == x) {
                            Some(&(_, to)) => to,
                            None => {
                                let to = names.len() as u32;
                                names.push((x, to));
                                to
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        cols.sort_unstable();
        cols
    }
}

/// Same vertex count and dimension, and equal up to coordinate permutation
/// and per-coordinate digit relabeling.
pub fn embeddings_equivalent(a: &HammingEmbedding, b: &HammingEmbedding) -> bool {
    a.n == b.n && a.dim == b.dim && a.canonical_columns() == b.canonical_columns()
}

/// Coordinates grouped by the closure of "both change across one edge".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalPartition {
    group_of: Vec<usize>,
    groups: Vec<Vec<usize>>,
}

impl CanonicalPartition {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Groups sorted by smallest coordinate, members ascending.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_of(&self, coord: usize) -> usize {
        self.group_of[coord]
    }
}

pub fn canonical_partition(g: &WeightedGraph, e: &HammingEmbedding) -> Result<CanonicalPartition> {
    if e.n != g.vertex_count() {
        return Err(Error::ArityMismatch {
            expected: g.vertex_count(),
            found: e.n,
        });
    }
    let mut uf = UnionFind::new(e.dim);
    for edge in g.edges() {
        let (a, b) = (e.string(edge.u), e.string(edge.v));
        let mut first = None;
        for j in 0..e.dim {
            if a[j] != b[j] {
                match first {
                    None => first = Some(j),
                    Some(f) => {
                        uf.union(f, j);
                    }
                }
            }
        }
    }
    let mut root_id = vec![usize::MAX; e.dim];
    let mut group_of = Vec::with_capacity(e.dim);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..e.dim {
        let r = uf.find(j);
        if root_id[r] == usize::MAX {
            root_id[r] = groups.len();
            groups.push(Vec::new());
        }
        group_of.push(root_id[r]);
        groups[root_id[r]].push(j);
    }
    Ok(CanonicalPartition { group_of, groups })
}

/// Concatenates factor embeddings along the decomposition's vertex map.
pub fn compose_from_pseudofactors(
    g: &WeightedGraph,
    dec: &Decomposition,
    factor_embeddings: &[HammingEmbedding],
) -> Result<HammingEmbedding> {
    if factor_embeddings.len() != dec.factors.len() {
        return Err(Error::ArityMismatch {
            expected: dec.factors.len(),
            found: factor_embeddings.len(),
        });
    }
    for (f, emb) in dec.factors.iter().zip(factor_embeddings) {
        emb.validate(f, &apsp(f)?)?;
    }
    let n = g.vertex_count();
    if dec.map.len() != n || dec.map.arity() != dec.factors.len() {
        return Err(Error::ArityMismatch {
            expected: n,
            found: dec.map.len(),
        });
    }
    let sigma = factor_embeddings.iter().map(|e| e.sigma).max().unwrap_or(2);
    let strings: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            dec.map
                .image(v)
                .iter()
                .zip(factor_embeddings)
                .flat_map(|(&c, emb)| emb.string(c).iter().copied())
                .collect()
        })
        .collect();
    let out = HammingEmbedding::new(sigma, &strings)?;
    let d = apsp(g)?;
    if !out.is_valid(g, &d) {
        return Err(Error::VerificationFailed);
    }
    Ok(out)
}

/// `K_n` with every weight `w` embeds with alphabet `n` as `v -> v v ... v`.
pub fn uniform_complete_embedding(f: &WeightedGraph) -> Option<HammingEmbedding> {
    let n = f.vertex_count();
    let w = f.edges().first().map(|e| e.w)?;
    if n < 2 || f.edge_count() != n * (n - 1) / 2 || f.edges().iter().any(|e| e.w != w) {
        return None;
    }
    let dim = usize::try_from(w).ok()?;
    let sigma = u32::try_from(n).ok()?;
    let strings: Vec<Vec<u32>> = (0..n).map(|v| vec![v as u32; dim]).collect();
    HammingEmbedding::new(sigma, &strings).ok()
}

/// Sum of all edge weights, saturated to `usize`.
pub fn default_max_dim(g: &WeightedGraph) -> usize {
    g.total_weight()
        .and_then(|w| usize::try_from(w).ok())
        .unwrap_or(usize::MAX)
}

/// Limits for the hypercube brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    /// Largest dimension considered; `None` means [`default_max_dim`].
    pub max_dim: Option<usize>,
    pub budget: u64,
}

impl Default for BruteForce {
    fn default() -> Self {
        Self {
            max_dim: None,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl BruteForce {
    pub fn with_max_dim(max_dim: usize) -> Self {
        Self {
            max_dim: Some(max_dim),
            ..Self::default()
        }
    }

    /// A binary embedding of least dimension, if one exists within `max_dim`.
    pub fn embed(&self, g: &WeightedGraph, d: &DistanceMatrix) -> Result<Option<HammingEmbedding>> {
        let Some(mut search) = Search::new(g, d, self)? else {
            return Ok(None);
        };
        let Some(first) = search.first()? else {
            return Ok(None);
        };
        let mut best = first;
        // Tighten the bound until nothing smaller exists.
        let floor = search.diameter();
        let mut bound = best.dim;
        while bound > floor {
            search.max_dim = bound - 1;
            match search.first()? {
                Some(e) => {
                    bound = e.dim;
                    best = e;
                }
                None => break,
            }
        }
        Ok(Some(best))
    }

    pub fn embeddable(&self, g: &WeightedGraph, d: &DistanceMatrix) -> Result<bool> {
        match Search::new(g, d, self)? {
            Some(mut s) => Ok(s.first()?.is_some()),
            None => Ok(false),
        }
    }

    /// Number of pairwise non-equivalent binary embeddings within `max_dim`.
    pub fn count(&self, g: &WeightedGraph, d: &DistanceMatrix) -> Result<u64> {
        let Some(mut search) = Search::new(g, d, self)? else {
            return Ok(0);
        };
        let mut total = 0u64;
        search.run(&mut |_| {
            total += 1;
            true
        })?;
        Ok(total)
    }

    /// Every non-equivalent binary embedding within `max_dim`.
    pub fn all(&self, g: &WeightedGraph, d: &DistanceMatrix) -> Result<Vec<HammingEmbedding>> {
        let Some(mut search) = Search::new(g, d, self)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let (order, n) = (search.order.clone(), search.n);
        search.run(&mut |groups| {
            out.push(to_embedding(n, &order, groups));
            true
        })?;
        Ok(out)
    }
}

pub fn hypercube_embed_bruteforce(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    max_dim: usize,
) -> Result<Option<HammingEmbedding>> {
    BruteForce::with_max_dim(max_dim).embed(g, d)
}

pub fn is_hypercube_embeddable(g: &WeightedGraph, d: &DistanceMatrix, max_dim: usize) -> Result<bool> {
    BruteForce::with_max_dim(max_dim).embeddable(g, d)
}

/// Non-equivalent hypercube embeddings of each canonical pseudofactor of
/// `g`. Non-minimal edges are dropped first; they do not change the metric.
pub fn count_per_factor(g: &WeightedGraph, limits: &BruteForce) -> Result<Vec<u64>> {
    let dec = pseudofactors(g)?;
    dec.factors
        .iter()
        .map(|f| limits.count(f, &apsp(f)?))
        .collect()
}

/// Product over the canonical pseudofactors of their embedding counts.
pub fn count_hypercube_embeddings(g: &WeightedGraph, max_dim: usize) -> Result<u64> {
    count_per_factor(g, &BruteForce::with_max_dim(max_dim))?
        .into_iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c).ok_or(Error::Overflow))
}

/// Pseudofactorization of the minimal graph with the same metric as `g`.
fn pseudofactors(g: &WeightedGraph) -> Result<Decomposition> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = apsp(g)?;
    let m = minimalize_with(g, &d)?;
    pseudofactorize_with(
        &m,
        &Options {
            verify: Verify::Never,
            ..Options::default()
        },
    )
}

/// A Hamming embedding of `g` composed from its pseudofactors, each embedded
/// into a hypercube by brute force or, failing that, as a uniform complete
/// graph. `None` when some factor has neither.
pub fn hamming_embed_from_factors(
    g: &WeightedGraph,
    limits: &BruteForce,
) -> Result<Option<HammingEmbedding>> {
    let dec = pseudofactors(g)?;
    let mut parts = Vec::with_capacity(dec.factors.len());
    for f in &dec.factors {
        let df = apsp(f)?;
        let emb = match limits.embed(f, &df)? {
            Some(e) => e,
            None => match uniform_complete_embedding(f) {
                Some(e) => e,
                None => return Ok(None),
            },
        };
        parts.push(emb);
    }
    let m = minimalize_with(g, &apsp(g)?)?;
    compose_from_pseudofactors(&m, &dec, &parts).map(Some)
}

type Groups = Vec<(u64, u32)>;
type Visitor<'a> = dyn FnMut(&[(u64, u32)]) -> bool + 'a;

fn to_embedding(n: usize, order: &[VertexId], groups: &[(u64, u32)]) -> HammingEmbedding {
    let mut sorted: Vec<(u64, u32)> = groups.to_vec();
    sorted.sort_unstable();
    let mut strings = vec![Vec::new(); n];
    for (i, &v) in order.iter().enumerate() {
        for &(mask, count) in &sorted {
            let bit = (mask >> i) & 1;
            strings[v].extend(core::iter::repeat_n(bit as u32, count as usize));
        }
    }
    HammingEmbedding::new(2, &strings).expect("binary strings of equal length")
}

struct Search {
    n: usize,
    /// Placement order; `order[0] == 0`.
    order: Vec<VertexId>,
    /// Distances between placement indices.
    dist: Vec<i64>,
    max_dim: usize,
    budget: u64,
    nodes: u64,
}

impl Search {
    /// `None` when no embedding can exist for parity reasons.
    fn new(g: &WeightedGraph, d: &DistanceMatrix, limits: &BruteForce) -> Result<Option<Self>> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_BRUTE_FORCE_VERTICES {
            return Err(Error::TooLarge(n, MAX_BRUTE_FORCE_VERTICES));
        }
        if d.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: d.len(),
            });
        }
        if !d.is_connected() {
            return Err(Error::Disconnected);
        }
        // |x ^ y| has the parity of |x| + |y|.
        for u in 0..n {
            for v in u + 1..n {
                if (d.get(0, u) + d.get(0, v) + d.get(u, v)) % 2 != 0 {
                    return Ok(None);
                }
            }
        }
        let order = g.bfs_order(0);
        let mut dist = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = d.get(order[i], order[j]);
            }
        }
        let max_dim = limits
            .max_dim
            .unwrap_or_else(|| default_max_dim(g))
            .min(tree_bound(g, d));
        Ok(Some(Self {
            n,
            order,
            dist,
            max_dim,
            budget: limits.budget,
            nodes: 0,
        }))
    }

    fn d(&self, i: usize, j: usize) -> i64 {
        self.dist[i * self.n + j]
    }

    fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    fn first(&mut self) -> Result<Option<HammingEmbedding>> {
        let mut found = None;
        let (order, n) = (self.order.clone(), self.n);
        self.run(&mut |groups| {
            found = Some(to_embedding(n, &order, groups));
            false
        })?;
        Ok(found)
    }

    /// Calls `visit` on every complete column multiset until it returns false.
    fn run(&mut self, visit: &mut Visitor) -> Result<()> {
        self.nodes = 0;
        self.place(1, Vec::new(), 0, visit).map(|_| ())
    }

    /// Returns false once the visitor asked to stop.
    fn place(
        &mut self,
        i: usize,
        groups: Groups,
        dim: usize,
        visit: &mut Visitor,
    ) -> Result<bool> {
        if i == self.n {
            return Ok(visit(&groups));
        }
        let d0 = self.d(0, i);
        // target[q] = d(q, i) - d(0, i) must equal the sum over groups
        // containing q of (count - 2 * chosen).
        let mut residual = vec![0i64; i];
        let mut reach = vec![0i64; i];
        for q in 1..i {
            residual[q] = self.d(q, i) - d0;
        }
        for &(mask, count) in &groups {
            for q in bits(mask) {
                reach[q] += i64::from(count);
            }
        }
        for q in 1..i {
            if (residual[q] - reach[q]).rem_euclid(2) != 0 || residual[q].abs() > reach[q] {
                return Ok(true);
            }
        }
        let total: i64 = groups.iter().map(|&(_, c)| i64::from(c)).sum();
        let mut chosen = vec![0u32; groups.len()];
        let mut ctx = Choice {
            i,
            d0,
            dim,
            groups: &groups,
            chosen: &mut chosen,
            residual: &mut residual,
            reach: &mut reach,
        };
        self.choose(&mut ctx, 0, 0, total, visit)
    }

    fn choose(
        &mut self,
        ctx: &mut Choice<'_>,
        gi: usize,
        ones: i64,
        left: i64,
        visit: &mut Visitor,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let room = self.max_dim as i64 - ctx.dim as i64;
        if gi == ctx.groups.len() {
            if ctx.residual.iter().any(|&r| r != 0) {
                return Ok(true);
            }
            let k = ctx.d0 - ones;
            if k < 0 || k > room {
                return Ok(true);
            }
            let mut next: Groups = Vec::with_capacity(2 * ctx.groups.len() + 1);
            for (&(mask, count), &c) in ctx.groups.iter().zip(ctx.chosen.iter()) {
                if c > 0 {
                    next.push((mask | 1 << ctx.i, c));
                }
                if count > c {
                    next.push((mask, count - c));
                }
            }
            if k > 0 {
                next.push((1 << ctx.i, k as u32));
            }
            let dim = ctx.dim + k as usize;
            return self.place(ctx.i + 1, next, dim, visit);
        }

        let (mask, count) = ctx.groups[gi];
        let left = left - i64::from(count);
        for q in bits(mask) {
            ctx.reach[q] -= i64::from(count);
        }
        let mut keep_going = true;
        for c in 0..=count {
            let ones_now = ones + i64::from(c);
            if ones_now > ctx.d0 {
                break;
            }
            // New columns make up the rest of d0 and must fit in the room.
            if ctx.d0 - (ones_now + left) > room {
                continue;
            }
            let delta = i64::from(count) - 2 * i64::from(c);
            let ok = bits(mask).all(|q| (ctx.residual[q] - delta).abs() <= ctx.reach[q]);
            if !ok {
                continue;
            }
            for q in bits(mask) {
                ctx.residual[q] -= delta;
            }
            ctx.chosen[gi] = c;
            keep_going = self.choose(ctx, gi + 1, ones_now, left, visit)?;
            for q in bits(mask) {
                ctx.residual[q] += delta;
            }
            if !keep_going {
                break;
            }
        }
        for q in bits(mask) {
            ctx.reach[q] += i64::from(count);
        }
        Ok(keep_going)
    }
}

struct Choice<'a> {
    i: usize,
    d0: i64,
    dim: usize,
    groups: &'a [(u64, u32)],
    chosen: &'a mut [u32],
    residual: &'a mut [i64],
    reach: &'a mut [i64],
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Every coordinate of an embedding changes across some edge of any spanning
/// tree, and edge `uv` changes exactly `d(u,v)` coordinates, so a minimum
/// spanning tree under `d` bounds the dimension.
fn tree_bound(g: &WeightedGraph, d: &DistanceMatrix) -> usize {
    let mut edges: Vec<(i64, usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (d.get(e.u, e.v), e.u, e.v))
        .collect();
    edges.sort_unstable();
    let mut uf = UnionFind::new(g.vertex_count());
    let mut total = 0usize;
    for (w, u, v) in edges {
        if uf.union(u, v) {
            total = total.saturating_add(w as usize);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::pseudofactorize;

    fn g(n: usize, es: &[(usize, usize, u64)]) -> WeightedGraph {
        WeightedGraph::unlabeled(n, es.iter().copied()).unwrap()
    }

    fn complete(n: usize, w: u64) -> WeightedGraph {
        let mut es = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                es.push((u, v, w));
            }
        }
        g(n, &es)
    }

    fn emb(sigma: u32, rows: &[&str]) -> HammingEmbedding {
        let strings: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.chars().map(|c| c.to_digit(10).unwrap()).collect())
            .collect();
        HammingEmbedding::new(sigma, &strings).unwrap()
    }

    #[test]
    fn k2_embeds_in_one_dimension() {
        let k2 = g(2, &[(0, 1, 1)]);
        let d = apsp(&k2).unwrap();
        let e = hypercube_embed_bruteforce(&k2, &d, 10).unwrap().unwrap();
        assert_eq!(e, emb(2, &["0", "1"]));
        assert_eq!(count_hypercube_embeddings(&k2, 10).unwrap(), 1);
    }

    #[test]
    fn odd_triangle_does_not_embed() {
        let k3 = complete(3, 1);
        let d = apsp(&k3).unwrap();
        assert_eq!(hypercube_embed_bruteforce(&k3, &d, 3).unwrap(), None);
    }

    #[test]
    fn doubled_triangle() {
        let k3 = complete(3, 2);
        let d = apsp(&k3).unwrap();
        let e = hypercube_embed_bruteforce(&k3, &d, default_max_dim(&k3)).unwrap().unwrap();
        assert_eq!(e.dim(), 3);
        assert!(embeddings_equivalent(&e, &emb(2, &["110", "101", "011"])));
    }

    #[test]
    fn doubled_k4_has_two_embeddings() {
        let k4 = complete(4, 2);
        let d = apsp(&k4).unwrap();
        let all = BruteForce::default().all(&k4, &d).unwrap();
        assert_eq!(all.len(), 2);
        assert!(!embeddings_equivalent(&all[0], &all[1]));
        assert_eq!(count_hypercube_embeddings(&k4, default_max_dim(&k4)).unwrap(), 2);
    }

    #[test]
    fn equivalence_under_permutation_and_flip() {
        let a = emb(2, &["00", "10", "11"]);
        let b = emb(2, &["01", "00", "10"]);
        assert!(embeddings_equivalent(&a, &a));
        assert!(embeddings_equivalent(&a, &b));
        assert!(!embeddings_equivalent(&a, &emb(2, &["00", "11", "10"])));
        assert!(!embeddings_equivalent(&a, &emb(2, &["000", "100", "110"])));
    }

    #[test]
    fn p3_partition_and_composition() {
        let p3 = g(3, &[(0, 1, 1), (1, 2, 1)]);
        let part = canonical_partition(&p3, &emb(2, &["00", "10", "11"])).unwrap();
        assert_eq!(part.groups(), &[vec![0], vec![1]]);
        let dec = pseudofactorize(&p3).unwrap();
        let k2 = emb(2, &["0", "1"]);
        let out = compose_from_pseudofactors(&p3, &dec, &[k2.clone(), k2]).unwrap();
        assert_eq!(out, emb(2, &["00", "10", "11"]));
    }

    #[test]
    fn star_composes_to_cube_corner() {
        let star = g(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        let dec = pseudofactorize(&star).unwrap();
        let k2 = emb(2, &["0", "1"]);
        let out = compose_from_pseudofactors(&star, &dec, &[k2.clone(), k2.clone(), k2]).unwrap();
        assert_eq!(out, emb(2, &["000", "100", "010", "001"]));
    }

    #[test]
    fn invalid_factor_embedding_is_rejected() {
        let p3 = g(3, &[(0, 1, 1), (1, 2, 1)]);
        let dec = pseudofactorize(&p3).unwrap();
        let bad = emb(2, &["00", "11"]);
        let k2 = emb(2, &["0", "1"]);
        assert!(compose_from_pseudofactors(&p3, &dec, &[bad, k2]).is_err());
    }

    #[test]
    fn k4_unit_uses_a_larger_alphabet() {
        let k4 = complete(4, 1);
        let d = apsp(&k4).unwrap();
        assert!(!BruteForce::default().embeddable(&k4, &d).unwrap());
        let e = hamming_embed_from_factors(&k4, &BruteForce::default()).unwrap().unwrap();
        assert_eq!(e.sigma(), 4);
        assert!(e.is_valid(&k4, &d));
    }

    #[test]
    fn budget_is_enforced() {
        let k4 = complete(4, 2);
        let d = apsp(&k4).unwrap();
        let tiny = BruteForce {
            max_dim: None,
            budget: 3,
        };
        assert_eq!(tiny.count(&k4, &d), Err(Error::BudgetExceeded(3)));
    }
}
