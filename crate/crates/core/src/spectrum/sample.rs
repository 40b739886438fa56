//! One draw of `G(n, n^-alpha)` held as an edge list, with a dense copy built on demand.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::graph::{gen_gnp_edges, Graph, Rational};

pub struct Sample {
    pub n: usize,
    pub alpha: Rational,
    pub seed: u64,
    pub edges: Vec<(usize, usize)>,
    dense: OnceCell<Graph>,
    adj: OnceCell<Vec<Vec<usize>>>,
}

impl Sample {
    pub fn draw(n: usize, alpha: Rational, seed: u64) -> Self {
        Sample::from_edges(n, alpha, seed, gen_gnp_edges(n, alpha, seed))
    }

    pub fn from_edges(n: usize, alpha: Rational, seed: u64, edges: Vec<(usize, usize)>) -> Self {
        Sample { n, alpha, seed, edges, dense: OnceCell::new(), adj: OnceCell::new() }
    }

    pub fn graph(&self) -> &Graph {
        self.dense.get_or_init(|| {
            let mut g = Graph::empty(self.n);
            for &(u, v) in &self.edges {
                g.add_edge(u, v);
            }
            g
        })
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        self.adj.get_or_init(|| {
            let mut a = vec![Vec::new(); self.n];
            for &(u, v) in &self.edges {
                a[u].push(v);
                a[v].push(u);
            }
            a
        })
    }

    /// Component of every vertex as `(labels, sizes, edge counts)`.
    pub fn components(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut sizes = Vec::new();
        let mut comp = vec![0; self.n];
        for v in 0..self.n {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = sizes.len();
                sizes.push(0);
            }
            comp[v] = label[r];
            sizes[label[r]] += 1;
        }
        let mut edges = vec![0; sizes.len()];
        for &(u, _) in &self.edges {
            edges[comp[u]] += 1;
        }
        (comp, sizes, edges)
    }

    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        self.edges.iter().all(|&(u, v)| uf.union(u, v))
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Joins the classes of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if self.rank[ra] < self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        if self.rank[lo] == self.rank[hi] {
            self.rank[hi] += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_and_cycles() {
        let s = Sample::from_edges(6, Rational::ONE, 0, vec![(0, 1), (1, 2), (3, 4)]);
        let (comp, sizes, edges) = s.components();
        assert_eq!(comp[0], comp[2]);
        assert_ne!(comp[0], comp[3]);
        let mut sz = sizes.clone();
        sz.sort_unstable();
        assert_eq!(sz, [1, 2, 3]);
        assert_eq!(edges.iter().sum::<usize>(), 3);
        assert!(s.is_forest());
        let c = Sample::from_edges(3, Rational::ONE, 0, vec![(0, 1), (1, 2), (0, 2)]);
        assert!(!c.is_forest());
        assert_eq!(c.graph().edge_count(), 3);
        assert_eq!(c.adjacency()[1], [0, 2]);
    }
}
