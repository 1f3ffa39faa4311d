//! Weighted Cartesian products and parent edges.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};

/// Mixed-radix numbering of product vertices: tuples in lexicographic order,
/// first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIndex {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ProductIndex {
    pub fn new(sizes: &[usize]) -> Result<Self> {
        let mut strides = vec![0; sizes.len()];
        let mut total = 1usize;
        for (i, &s) in sizes.iter().enumerate().rev() {
            if s == 0 {
                return Err(Error::EmptyFactor(i));
            }
            strides[i] = total;
            total = total.checked_mul(s).ok_or(Error::Overflow)?;
        }
        Ok(Self {
            sizes: sizes.to_vec(),
            strides,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn arity(&self) -> usize {
        self.sizes.len()
    }

    pub fn encode(&self, tuple: &[usize]) -> Result<VertexId> {
        if tuple.len() != self.sizes.len() {
            return Err(Error::ArityMismatch {
                expected: self.sizes.len(),
                found: tuple.len(),
            });
        }
        let mut id = 0;
        for (i, &c) in tuple.iter().enumerate() {
            if c >= self.sizes[i] {
                return Err(Error::VertexOutOfRange(c));
            }
            id += c * self.strides[i];
        }
        Ok(id)
    }

    pub fn decode(&self, id: VertexId) -> Vec<usize> {
        self.sizes
            .iter()
            .zip(&self.strides)
            .map(|(&s, &st)| (id / st) % s)
            .collect()
    }
}

/// The weighted Cartesian product of `factors`.
///
/// Product vertices are numbered by [`ProductIndex`] and labeled `(a,x,...)`
/// from the factor labels. Each product edge copies the weight of its parent edge.
pub fn cartesian_product(factors: &[WeightedGraph]) -> Result<WeightedGraph> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let sizes: Vec<usize> = factors.iter().map(WeightedGraph::vertex_count).collect();
    let index = ProductIndex::new(&sizes)?;

    let mut labels = Vec::with_capacity(index.len());
    let mut edges = Vec::new();
    for x in 0..index.len() {
        let tuple = index.decode(x);
        let mut label = String::from("(");
        for (i, &c) in tuple.iter().enumerate() {
            if i > 0 {
                label.push(',');
            }
            label.push_str(factors[i].label(c));
        }
        label.push(')');
        labels.push(label);

        for (l, f) in factors.iter().enumerate() {
            for &(nbr, e) in f.neighbors(tuple[l]) {
                if nbr > tuple[l] {
                    let y = x + (nbr - tuple[l]) * index.strides[l];
                    edges.push((x, y, f.edge(e).w));
                }
            }
        }
    }
    WeightedGraph::new(labels, edges)
}

/// The factor index and factor edge that product edge `e` copies.
pub fn parent_edge(
    product: &WeightedGraph,
    factors: &[WeightedGraph],
    e: EdgeId,
) -> Result<(usize, EdgeId)> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    if e >= product.edge_count() {
        return Err(Error::EdgeOutOfRange(e));
    }
    let sizes: Vec<usize> = factors.iter().map(WeightedGraph::vertex_count).collect();
    let index = ProductIndex::new(&sizes)?;
    if index.len() != product.vertex_count() {
        return Err(Error::ArityMismatch {
            expected: index.len(),
            found: product.vertex_count(),
        });
    }
    let edge = product.edge(e);
    let a = index.decode(edge.u);
    let b = index.decode(edge.v);
    let differing: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    if differing.len() != 1 {
        return Err(Error::MalformedProductEdge {
            edge: e,
            differing: differing.len(),
        });
    }
    let l = differing[0];
    factors[l]
        .edge_between(a[l], b[l])
        .map(|fe| (l, fe))
        .ok_or(Error::MalformedProductEdge {
            edge: e,
            differing: 1,
        })
}
