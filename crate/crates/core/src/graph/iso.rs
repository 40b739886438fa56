use alloc::vec;
use alloc::vec::Vec;

use super::{bits::words_for, Graph, GraphError};

pub const PATTERN_CAP: usize = 10;
pub const AUTOMORPHISM_CAP: usize = 10;
pub const CANONICAL_CAP: usize = 11;

/// Backtracking embedding search of `h` into `g`.
struct Embedder<'a> {
    g: &'a Graph,
    h: &'a Graph,
    induced: bool,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<u64>,
    g_deg: Vec<usize>,
}

impl<'a> Embedder<'a> {
    fn new(g: &'a Graph, h: &'a Graph, induced: bool) -> Self {
        Embedder {
            g,
            h,
            induced,
            order: search_order(h),
            map: vec![usize::MAX; h.n()],
            used: vec![0; words_for(g.n())],
            g_deg: (0..g.n()).map(|v| g.degree(v)).collect(),
        }
    }

    fn candidates(&self, depth: usize) -> Vec<u64> {
        let hv = self.order[depth];
        let mut cand: Vec<u64> = vec![u64::MAX; words_for(self.g.n())];
        trim(&mut cand, self.g.n());
        for w in cand.iter_mut().zip(&self.used) {
            *w.0 &= !w.1;
        }
        for &prev in &self.order[..depth] {
            let img = self.map[prev];
            let row = self.g.row(img);
            if self.h.has_edge(hv, prev) {
                for (c, r) in cand.iter_mut().zip(row) {
                    *c &= r;
                }
            } else if self.induced {
                for (c, r) in cand.iter_mut().zip(row) {
                    *c &= !r;
                }
                cand[img >> 6] &= !(1 << (img & 63));
            }
        }
        cand
    }

    fn search(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let hv = self.order[depth];
        let need = self.h.degree(hv);
        let cand = self.candidates(depth);
        for gv in super::Ones::new(&cand) {
            if self.g_deg[gv] < need {
                continue;
            }
            self.map[hv] = gv;
            self.used[gv >> 6] |= 1 << (gv & 63);
            let stop = self.search(depth + 1, visit);
            self.used[gv >> 6] &= !(1 << (gv & 63));
            self.map[hv] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}

fn trim(words: &mut [u64], n: usize) {
    let r = n & 63;
    if r != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << r) - 1;
        }
    }
}

/// Pattern vertices ordered so each one has as many earlier neighbours as possible.
fn search_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                (back, h.degree(v), core::cmp::Reverse(v))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

/// Lexicographically smallest embedding of `h` in `g` (as `h`-vertex -> `g`-vertex), if any.
pub fn find_embedding(g: &Graph, h: &Graph, induced: bool) -> Result<Option<Vec<usize>>, GraphError> {
    if h.n() > PATTERN_CAP {
        return Err(GraphError::PatternTooLarge { n: h.n(), cap: PATTERN_CAP });
    }
    Ok(embed_any(g, h, induced))
}

fn embed_any(g: &Graph, h: &Graph, induced: bool) -> Option<Vec<usize>> {
    if h.n() > g.n() {
        return None;
    }
    let mut e = Embedder::new(g, h, induced);
    let mut best: Option<Vec<usize>> = None;
    e.search(0, &mut |m| {
        // The search order is not the label order, so keep the smallest.
        if best.as_deref().is_none_or(|b| m < b) {
            best = Some(m.to_vec());
        }
        false
    });
    best
}

/// Whether `g` has a (induced, if flagged) subgraph isomorphic to `h`.
pub fn contains_subgraph(g: &Graph, h: &Graph, induced: bool) -> Result<bool, GraphError> {
    if h.n() > PATTERN_CAP {
        return Err(GraphError::PatternTooLarge { n: h.n(), cap: PATTERN_CAP });
    }
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    let mut e = Embedder::new(g, h, induced);
    Ok(e.search(0, &mut |_| true))
}

/// Isomorphism test by exhaustive bijection search (no size cap; meant for small graphs).
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut e = Embedder::new(b, a, true);
    e.search(0, &mut |_| true)
}

/// `|Aut(g)|` by exhaustive search over degree-preserving bijections.
pub fn automorphism_count(g: &Graph) -> Result<u64, GraphError> {
    if g.n() > AUTOMORPHISM_CAP {
        return Err(GraphError::TooLarge { n: g.n(), cap: AUTOMORPHISM_CAP });
    }
    Ok(count_automorphisms_bounded(g))
}

/// Automorphism count without the size cap.
pub fn count_automorphisms_bounded(g: &Graph) -> u64 {
    let mut e = Embedder::new(g, g, true);
    let mut count = 0u64;
    e.search(0, &mut |_| {
        count += 1;
        false
    });
    count
}

/// Colour refinement: stable vertex colours, ranked canonically.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            next[sigs[i].2] = rank;
        }
        let classes = |c: &[usize]| {
            let mut s = c.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        if classes(&next) == classes(&color) {
            return next;
        }
        color = next;
    }
}

/// Canonical form for graphs with at most 11 vertices: equal codes iff isomorphic.
///
/// The code is the smallest upper-triangle adjacency string over all orderings
/// that list colour-refinement classes in rank order.
pub fn canonical_code(g: &Graph) -> Result<u64, GraphError> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(GraphError::TooLarge { n, cap: CANONICAL_CAP });
    }
    let color = refine(g);
    let mut slots: Vec<usize> = color.clone();
    slots.sort_unstable();
    let total = n * n.saturating_sub(1) / 2;
    let mut st = Canon { g, color, slots, pos: Vec::with_capacity(n), used: 0, best: u64::MAX, total };
    st.search(0);
    Ok(if total == 0 { 0 } else { st.best })
}

struct Canon<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    slots: Vec<usize>,
    pos: Vec<usize>,
    used: u64,
    best: u64,
    total: usize,
}

impl Canon<'_> {
    fn search(&mut self, code: u64) {
        let j = self.pos.len();
        let n = self.g.n();
        if j == n {
            if code < self.best {
                self.best = code;
            }
            return;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.color[v] != self.slots[j] {
                continue;
            }
            // Column j: bits (0,j), ..., (j-1,j) in order.
            let mut c = code;
            for (i, &u) in self.pos.iter().enumerate() {
                if self.g.has_edge(u, v) {
                    let k = j * (j - 1) / 2 + i;
                    c |= 1 << (self.total - 1 - k);
                }
            }
            let filled = (j + 1) * j / 2;
            if filled > 0 && self.best != u64::MAX {
                let shift = self.total - filled;
                if c >> shift > self.best >> shift {
                    continue;
                }
            }
            self.pos.push(v);
            self.used |= 1 << v;
            self.search(c);
            self.used &= !(1 << v);
            self.pos.pop();
        }
    }
}
