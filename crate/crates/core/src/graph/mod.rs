//! Simple undirected graphs on `0..n` with bit-row adjacency.

mod bits;
pub mod enumerate;
mod iso;
pub mod named;
mod random;
mod rational;
mod tree;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use bits::{Ones, VertexSet};
pub use iso::{automorphism_count, canonical_code, contains_subgraph, count_automorphisms_bounded, find_embedding, is_isomorphic};
pub use random::{edge_probability, gen_gnp, gen_gnp_edges};
pub use rational::{Rational, RationalError};
pub use tree::{component_codes, rooted_tree_code, tree_code};

use bits::words_for;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    EmptyGraph,
    TooLarge { n: usize, cap: usize },
    PatternTooLarge { n: usize, cap: usize },
    NotATree,
    NotAForest,
    Loop(usize),
    VertexOutOfRange { v: usize, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EmptyGraph => f.write_str("EmptyGraph"),
            GraphError::TooLarge { n, cap } => write!(f, "TooLarge: {n} vertices, cap {cap}"),
            GraphError::PatternTooLarge { n, cap } => write!(f, "PatternTooLarge: {n} vertices, cap {cap}"),
            GraphError::NotATree => f.write_str("NotATree"),
            GraphError::NotAForest => f.write_str("NotAForest"),
            GraphError::Loop(v) => write!(f, "Loop at vertex {v}"),
            GraphError::VertexOutOfRange { v, n } => write!(f, "VertexOutOfRange: {v} not in 0..{n}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Simple undirected graph. Row `v` of `bits` is the neighbour set of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Graph { n, stride, bits: vec![0; n * stride] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph on `n <= 64` vertices from adjacency masks; asymmetric bits are an error.
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        let mut g = Graph::empty(n);
        for (u, &m) in masks.iter().enumerate() {
            for v in bits::Ones::new(core::slice::from_ref(&m)) {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        debug_assert!(g.check_invariants());
        g
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n;
        if u >= n {
            return Err(GraphError::VertexOutOfRange { v: u, n });
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange { v, n });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    /// Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.bits[u * self.stride + (v >> 6)] &= !(1 << (v & 63));
            self.bits[v * self.stride + (u >> 6)] &= !(1 << (u & 63));
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + (v >> 6)] |= 1 << (v & 63);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + (v >> 6)] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    /// First row word; the whole neighbourhood when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        if self.stride == 0 {
            0
        } else {
            self.bits[v * self.stride]
        }
    }

    pub fn neighbors(&self, v: usize) -> Ones<'_> {
        Ones::new(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `v` inside `s`.
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> usize {
        self.row(v).iter().zip(s.words()).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Induced subgraph on `s`, relabelled in increasing order; also returns the kept vertices.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let keep = s.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        (g, keep)
    }

    /// `perm[v]` is the new label of `v`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    pub fn check_invariants(&self) -> bool {
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            for v in self.neighbors(u) {
                if v >= self.n || !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.row(v).iter().all(|&w| w == 0)
    }

    /// Breadth-first distances from `s`; `None` when unreachable.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut cell = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < cell.len() {
            let u = cell[i];
            i += 1;
            for w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    cell.push(w);
                }
            }
        }
        cell.sort_unstable();
        out.push(cell);
    }
    out
}

/// Components of the subgraph induced on `s`, in original labels.
pub fn components_within(g: &Graph, s: &VertexSet) -> Vec<Vec<usize>> {
    let (h, keep) = g.induced(s);
    components(&h).into_iter().map(|c| c.into_iter().map(|i| keep[i]).collect()).collect()
}

pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + components(g).len() == g.n()
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.edge_count() + 1 == g.n() && components(g).len() == 1
}

/// `e / v`.
pub fn density(g: &Graph) -> Result<Rational, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    Ok(Rational::of(g.edge_count() as i64, g.n() as i64))
}

pub const MAX_DENSITY_CAP: usize = 24;

/// Maximum of `e(H)/v(H)` over induced subgraphs, by exhaustive subset search.
pub fn max_density(g: &Graph) -> Result<Rational, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if n > MAX_DENSITY_CAP {
        return Err(GraphError::TooLarge { n, cap: MAX_DENSITY_CAP });
    }
    let masks: Vec<u64> = (0..n).map(|v| g.mask(v)).collect();
    // Edge counts of all subsets by adding the highest vertex to a smaller subset.
    let mut edges = vec![0u16; 1 << n];
    let (mut best_e, mut best_v) = (0i64, 1i64);
    for s in 1usize..(1 << n) {
        let top = usize::BITS as usize - 1 - s.leading_zeros() as usize;
        let rest = s & !(1 << top);
        edges[s] = edges[rest] + (masks[top] & rest as u64).count_ones() as u16;
        let (e, v) = (edges[s] as i64, s.count_ones() as i64);
        if e * best_v > best_e * v {
            best_e = e;
            best_v = v;
        }
    }
    Ok(Rational::of(best_e, best_v))
}
