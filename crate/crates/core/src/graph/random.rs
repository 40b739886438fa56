use alloc::vec::Vec;

use super::{Graph, Rational};
use crate::rng::{mix64, unit_f64};

/// Below this edge probability pairs are visited by geometric skipping.
const SKIP_BELOW: f64 = 0.25;
const SKIP_TAG: u64 = 0x736B_6970_5F67_6170;

/// `n^(-alpha)` in double precision; 1 for `n <= 1`.
pub fn edge_probability(n: usize, alpha: Rational) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let a = alpha.num() as f64 / alpha.den() as f64;
    libm::exp(-a * libm::log(n as f64))
}

/// Edges of G(n, n^-alpha) as `(u, v)` with `u < v`, sorted by `(v, u)`.
///
/// Pair `(u, v)` has index `v(v-1)/2 + u`. For `p >= 1/4` pair `k` is present
/// iff `unit(mix64(seed, k)) < p`; for smaller `p` the gaps between present
/// pairs are geometric with the `j`-th gap drawn from `mix64(seed ^ TAG, j)`.
/// Either way the output depends only on `(n, alpha, seed)`.
pub fn gen_gnp_edges(n: usize, alpha: Rational, seed: u64) -> Vec<(usize, usize)> {
    assert!(alpha.is_positive(), "alpha must be positive");
    let p = edge_probability(n, alpha);
    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    let mut out = Vec::new();
    if pairs == 0 || p <= 0.0 {
        return out;
    }
    let mut cursor = PairCursor::default();
    if p >= SKIP_BELOW {
        for k in 0..pairs {
            if unit_f64(mix64(seed, k)) < p {
                out.push(cursor.seek(k));
            }
        }
    } else {
        let log_q = libm::log1p(-p);
        let skip_seed = seed ^ SKIP_TAG;
        let mut k: u64 = 0;
        let mut j: u64 = 0;
        loop {
            let u = 1.0 - unit_f64(mix64(skip_seed, j));
            j += 1;
            let gap = libm::floor(libm::log(u) / log_q);
            if !(gap < (pairs - k) as f64) {
                break;
            }
            k += gap as u64;
            out.push(cursor.seek(k));
            k += 1;
            if k >= pairs {
                break;
            }
        }
    }
    out
}

pub fn gen_gnp(n: usize, alpha: Rational, seed: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (u, v) in gen_gnp_edges(n, alpha, seed) {
        g.add_edge(u, v);
    }
    debug_assert!(g.check_invariants());
    g
}

/// Decodes increasing pair indices without square roots.
#[derive(Default)]
struct PairCursor {
    v: u64,
    base: u64,
}

impl PairCursor {
    fn seek(&mut self, k: u64) -> (usize, usize) {
        if self.v == 0 {
            self.v = 1;
            self.base = 0;
        }
        while k >= self.base + self.v {
            self.base += self.v;
            self.v += 1;
        }
        ((k - self.base) as usize, self.v as usize)
    }
}
