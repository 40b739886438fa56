//! Exhaustive generation of small graphs up to isomorphism.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{canonical_code, tree_code, Graph};

/// One representative per isomorphism class on exactly `n <= 11` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u64..(1 << (k - 1)) {
                let mut h = g.disjoint_union(&Graph::empty(1));
                for u in 0..k - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, k - 1);
                    }
                }
                if seen.insert(canonical_code(&h).expect("size within canonical cap")) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// One representative per isomorphism class of trees on `n >= 1` vertices.
pub fn trees_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen: HashSet<String> = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..k - 1 {
                let mut h = t.disjoint_union(&Graph::empty(1));
                h.add_edge(v, k - 1);
                if seen.insert(tree_code(&h).unwrap()) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// One representative per isomorphism class of forests on exactly `n` vertices.
pub fn forests_up_to_iso(n: usize) -> Vec<Graph> {
    let trees: Vec<Vec<Graph>> = (0..=n).map(|k| if k == 0 { Vec::new() } else { trees_up_to_iso(k) }).collect();
    let mut out = Vec::new();
    let mut parts: Vec<(usize, usize)> = Vec::new();
    fn rec(left: usize, max: (usize, usize), trees: &[Vec<Graph>], parts: &mut Vec<(usize, usize)>, out: &mut Vec<Graph>) {
        if left == 0 {
            let mut g = Graph::empty(0);
            for &(k, i) in parts.iter() {
                g = g.disjoint_union(&trees[k][i]);
            }
            out.push(g);
            return;
        }
        // Components listed in non-increasing (size, index) order.
        for k in (1..=left.min(max.0)).rev() {
            let top = if k == max.0 { max.1 + 1 } else { trees[k].len() };
            for i in (0..top.min(trees[k].len())).rev() {
                parts.push((k, i));
                rec(left - k, (k, i), trees, parts, out);
                parts.pop();
            }
        }
    }
    rec(n, (n, usize::MAX - 1), &trees, &mut parts, &mut out);
    out
}

/// All trees on at most `n` vertices, smallest first.
pub fn trees_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(trees_up_to_iso).collect()
}
