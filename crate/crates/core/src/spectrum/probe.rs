//! Graph events on sparse random graphs, used as finite-n trend probes.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Sample, SpectrumError};
use crate::graph::{Graph, VertexSet};
use crate::rng::{mix64, Stream};

/// Slack constant in the degree window `np ± c sqrt(np ln n)`.
pub const DEGREE_C: f64 = 2.0;
/// Slack constant in units of `n^alpha` around the independence number estimate.
pub const INDEPENDENCE_C: f64 = 2.0;
/// Random nontrivial subsets tried per graph by `outside_common_exists`.
pub const OUTSIDE_COMMON_SUBSETS: usize = 32;
/// Branch-and-bound node budget for the independence number.
pub const INDEPENDENCE_NODE_CAP: u64 = 5_000_000;

const SUBSET_TAG: u64 = 0x6F75_7473_6964_6563;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Probe {
    /// Every degree lies in `n^(1-alpha) ± c n^(1/2-alpha/2) sqrt(ln n)`.
    DegConcentration,
    /// `|alpha(G) - (2(1-alpha) n^alpha ln n - 2 n^alpha ln ln n)| <= c n^alpha`.
    IndepNumberWindow,
    /// Some `u != v` with `N(u) \ {v}` contained in `N(v) \ {u}`.
    NestedNeighborhoods,
    /// No `K_{2,m}` subgraph for `m = ceil(n^(1/3) ln ln n)`.
    K2mFree,
    /// Every two vertices have at least `ceil(n^(1/3))` common neighbours.
    CommonNeighborsFloor,
    /// Some vertex has an independent neighbourhood.
    IndepNeighborhoodVertex,
    /// Every sampled nontrivial `X` has an `X`-outside-common vertex.
    OutsideCommonExists,
    /// A forest whose components have at most `l + 1` vertices, `l = floor(1/(alpha-1))`.
    ForestAndComponentBound,
}

pub const ALL_PROBES: [Probe; 8] = [
    Probe::DegConcentration,
    Probe::IndepNumberWindow,
    Probe::NestedNeighborhoods,
    Probe::K2mFree,
    Probe::CommonNeighborsFloor,
    Probe::IndepNeighborhoodVertex,
    Probe::OutsideCommonExists,
    Probe::ForestAndComponentBound,
];

impl Probe {
    pub fn name(self) -> &'static str {
        match self {
            Probe::DegConcentration => "deg_concentration",
            Probe::IndepNumberWindow => "indep_number_window",
            Probe::NestedNeighborhoods => "nested_neighborhoods",
            Probe::K2mFree => "k2m_free",
            Probe::CommonNeighborsFloor => "common_neighbors_floor",
            Probe::IndepNeighborhoodVertex => "indep_neighborhood_vertex",
            Probe::OutsideCommonExists => "outside_common_exists",
            Probe::ForestAndComponentBound => "forest_and_component_bound",
        }
    }

    pub fn eval(self, s: &Sample) -> Result<bool, SpectrumError> {
        let n = s.n;
        let a = s.alpha.to_f64();
        let ln = |x: f64| libm::log(x);
        match self {
            Probe::DegConcentration => {
                below_one(s)?;
                let mean = libm::pow(n as f64, 1.0 - a);
                let slack = DEGREE_C * libm::sqrt(mean * ln(n as f64));
                let adj = s.adjacency();
                Ok(adj.iter().all(|nb| libm::fabs(nb.len() as f64 - mean) <= slack))
            }
            Probe::IndepNumberWindow => {
                below_one(s)?;
                let na = libm::pow(n as f64, a);
                let nf = n as f64;
                let guess = 2.0 * (1.0 - a) * na * ln(nf) - 2.0 * na * ln(ln(nf));
                let (lo, hi) = (guess - INDEPENDENCE_C * na, guess + INDEPENDENCE_C * na);
                let (l, u) = independence_bounds(s.graph());
                if (u as f64) < lo || (l as f64) > hi {
                    return Ok(false);
                }
                if lo <= l as f64 && u as f64 <= hi {
                    return Ok(true);
                }
                let g = s.graph();
                let lo_ok = lo <= l as f64 || independence_at_least(g, libm::ceil(lo) as usize)?;
                Ok(lo_ok && (u as f64 <= hi || !independence_at_least(g, libm::floor(hi) as usize + 1)?))
            }
            Probe::NestedNeighborhoods => {
                let g = s.graph();
                Ok((0..n).any(|u| {
                    let mut nu = g.neighbor_set(u);
                    (0..n).any(|v| {
                        if v == u {
                            return false;
                        }
                        let had = nu.contains(v);
                        nu.remove(v);
                        let mut nv = g.neighbor_set(v);
                        nv.remove(u);
                        let sub = nu.is_subset(&nv);
                        if had {
                            nu.insert(v);
                        }
                        sub
                    })
                }))
            }
            Probe::K2mFree => {
                let nf = n as f64;
                let m = libm::ceil(libm::cbrt(nf) * ln(ln(nf)).max(0.0)).max(1.0) as usize;
                Ok(max_common_neighbors(s.graph()) < m)
            }
            Probe::CommonNeighborsFloor => {
                let m = libm::ceil(libm::cbrt(n as f64)) as usize;
                let g = s.graph();
                Ok((0..n).all(|u| (u + 1..n).all(|v| common(g, u, v) >= m)))
            }
            Probe::IndepNeighborhoodVertex => {
                let g = s.graph();
                Ok((0..n).any(|v| g.neighbors(v).all(|w| !g.neighbor_set(w).intersects(&g.neighbor_set(v)))))
            }
            Probe::OutsideCommonExists => {
                if n < 4 {
                    return Err(SpectrumError::ProbeOutOfRange("outside_common_exists needs n >= 4".into()));
                }
                let g = s.graph();
                let mut rng = Stream::new(mix64(s.seed, SUBSET_TAG));
                Ok((0..OUTSIDE_COMMON_SUBSETS).all(|_| {
                    let x = nontrivial_subset(n, &mut rng);
                    let xb = x.complement();
                    x.iter().any(|v| {
                        let k = g.degree_in(v, &xb);
                        k > 0 && k < xb.len()
                    })
                }))
            }
            Probe::ForestAndComponentBound => {
                let (p, q) = (s.alpha.num(), s.alpha.den());
                if p <= q {
                    return Err(SpectrumError::ProbeOutOfRange("forest_and_component_bound needs alpha > 1".into()));
                }
                let ell = (q / (p - q)) as usize;
                let (_, sizes, _) = s.components();
                Ok(s.is_forest() && sizes.iter().all(|&c| c <= ell + 1))
            }
        }
    }
}

fn below_one(s: &Sample) -> Result<(), SpectrumError> {
    let a = s.alpha;
    if a.num() <= 0 || a.num() >= a.den() || s.n < 3 {
        return Err(SpectrumError::ProbeOutOfRange("needs 0 < alpha < 1 and n >= 3".into()));
    }
    Ok(())
}

/// Sizes spread over `2..=n-2`: half the draws small, half balanced.
fn nontrivial_subset(n: usize, rng: &mut Stream) -> VertexSet {
    let k = if rng.bernoulli(0.5) { 2 + rng.below((n - 3).min(8) as u64) as usize } else { 2 + rng.below(n as u64 - 3) as usize };
    let mut verts: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut verts);
    VertexSet::from_iter(n, verts[..k].iter().copied())
}

fn common(g: &Graph, u: usize, v: usize) -> usize {
    g.row(u).iter().zip(g.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
}

fn max_common_neighbors(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for u in 0..n {
        // Pairs with a common neighbour are at distance two through some w.
        let mut seen = VertexSet::empty(n);
        for w in g.neighbors(u) {
            for v in g.neighbors(w) {
                if v > u && !seen.contains(v) {
                    seen.insert(v);
                    best = best.max(common(g, u, v));
                }
            }
        }
    }
    best
}

/// Exact independence number.
///
/// Vertices of degree at most one are taken greedily (some maximum
/// independent set contains them), then each component of what is left is
/// solved by branch and bound with a greedy colouring bound.
pub fn independence_number(g: &Graph) -> Result<usize, SpectrumError> {
    let (taken, kernel) = reduce(g);
    let mut nodes = 0;
    let mut total = taken;
    for k in &kernel {
        total += clique_bnb(k, 0, &mut nodes)?;
    }
    Ok(total)
}

/// Whether the independence number is at least `k`.
pub fn independence_at_least(g: &Graph, k: usize) -> Result<bool, SpectrumError> {
    let (taken, mut kernel) = reduce(g);
    kernel.sort_by_key(|c| c.n());
    let Some(big) = kernel.pop() else { return Ok(taken >= k) };
    let mut nodes = 0;
    let mut have = taken;
    for c in &kernel {
        have += clique_bnb(c, 0, &mut nodes)?;
    }
    if have >= k {
        return Ok(true);
    }
    let need = k - have;
    // Seeding the bound with need - 1 prunes everything that cannot reach need.
    Ok(clique_bnb(&big, need - 1, &mut nodes)? >= need)
}

/// Peels vertices of degree at most one; returns their count and the remaining components.
fn reduce(g: &Graph) -> (usize, Vec<Graph>) {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut taken = 0;
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let kill = |v: usize, alive: &mut VertexSet, deg: &mut [usize], stack: &mut Vec<usize>| {
        alive.remove(v);
        for w in g.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
                if deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    };
    while let Some(v) = stack.pop() {
        if !alive.contains(v) || deg[v] > 1 {
            continue;
        }
        taken += 1;
        let nb: Vec<usize> = g.neighbors(v).filter(|&w| alive.contains(w)).collect();
        kill(v, &mut alive, &mut deg, &mut stack);
        for w in nb {
            kill(w, &mut alive, &mut deg, &mut stack);
        }
    }
    let kernel = crate::graph::components_within(g, &alive)
        .into_iter()
        .map(|comp| {
            let (sub, _) = g.induced(&VertexSet::from_iter(n, comp.iter().copied()));
            // Low degree first: these join the early, large colour classes.
            let mut order: Vec<usize> = (0..sub.n()).collect();
            order.sort_by_key(|&v| (sub.degree(v), v));
            let mut rank = vec![0; sub.n()];
            for (i, &v) in order.iter().enumerate() {
                rank[v] = i;
            }
            sub.permuted(&rank)
        })
        .collect();
    (taken, kernel)
}

/// Largest independent set, or `floor` if none is larger.
fn clique_bnb(g: &Graph, floor: usize, nodes: &mut u64) -> Result<usize, SpectrumError> {
    let n = g.n();
    let words = n.div_ceil(64);
    // Complement rows: independent sets of g are cliques here.
    let co: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut r: Vec<u64> = g.row(v).iter().map(|w| !w).collect();
            if n % 64 != 0 {
                r[words - 1] &= (1u64 << (n % 64)) - 1;
            }
            r[v / 64] &= !(1u64 << (v % 64));
            r
        })
        .collect();
    let mut st = Bnb { co: &co, best: floor, nodes: *nodes };
    let mut all = vec![u64::MAX; words];
    if n % 64 != 0 {
        all[words - 1] = (1u64 << (n % 64)) - 1;
    }
    st.expand(all, 0)?;
    *nodes = st.nodes;
    Ok(st.best)
}

/// Greedy lower and clique-cover upper bounds on the independence number.
pub fn independence_bounds(g: &Graph) -> (usize, usize) {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut blocked = VertexSet::empty(n);
    let mut lower = 0;
    for &v in &order {
        if !blocked.contains(v) {
            lower += 1;
            blocked.insert(v);
            for w in g.neighbors(v) {
                blocked.insert(w);
            }
        }
    }
    // Each clique of a partition holds at most one vertex of an independent set.
    let mut covered = VertexSet::empty(n);
    let mut cliques = 0;
    for &v in &order {
        if covered.contains(v) {
            continue;
        }
        cliques += 1;
        covered.insert(v);
        let mut cand: Vec<usize> = g.neighbors(v).filter(|&w| !covered.contains(w)).collect();
        while let Some(&w) = cand.first() {
            covered.insert(w);
            cand.retain(|&u| u != w && g.has_edge(u, w));
        }
    }
    (lower, cliques)
}

struct Bnb<'a> {
    co: &'a [Vec<u64>],
    best: usize,
    nodes: u64,
}

fn ones(s: &[u64]) -> impl Iterator<Item = usize> + '_ {
    s.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

impl Bnb<'_> {
    fn expand(&mut self, cand: Vec<u64>, size: usize) -> Result<(), SpectrumError> {
        self.nodes += 1;
        if self.nodes > INDEPENDENCE_NODE_CAP {
            return Err(SpectrumError::ProbeOutOfRange("independence number search exceeded its node budget".into()));
        }
        // Greedy colouring of the candidates; colour classes are independent in `co`.
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut left = cand.clone();
        let mut colour = 0;
        while left.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = left.clone();
            loop {
                let Some(v) = ones(&q).next() else { break };
                q[v / 64] &= !(1u64 << (v % 64));
                left[v / 64] &= !(1u64 << (v % 64));
                for (qw, cw) in q.iter_mut().zip(&self.co[v]) {
                    *qw &= !cw;
                }
                order.push((v, colour));
            }
        }
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if size + c <= self.best {
                return Ok(());
            }
            let next: Vec<u64> = cand.iter().zip(&self.co[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(next, size + 1)?;
            }
            cand[v / 64] &= !(1u64 << (v % 64));
        }
        Ok(())
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Probe {
    type Err = SpectrumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        probe_catalog(s)
    }
}

pub fn probe_catalog(name: &str) -> Result<Probe, SpectrumError> {
    ALL_PROBES.iter().copied().find(|p| p.name() == name).ok_or_else(|| SpectrumError::UnknownProbe(name.to_string()))
}

pub fn probe_names() -> Vec<String> {
    ALL_PROBES.iter().map(|p| p.name().to_string()).collect()
}
