use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{decode_pair_code, pair_code_mask, pair_type, table_row, PairType, TypesError};
use crate::graph::{Graph, VertexSet};
use crate::rng::Stream;

/// Largest `n` for which every subset is enumerated.
pub const ENUMERATE_CAP: usize = 20;

/// All pair types realised by some `X` with `|X|, |X̄| >= 2`.
pub fn enumerate_pair_types(g: &Graph) -> Result<BTreeSet<PairType>, TypesError> {
    let n = g.n();
    if n > ENUMERATE_CAP {
        return Err(TypesError::TooLarge { n, cap: ENUMERATE_CAP });
    }
    let mut codes = HashSet::new();
    for x in 0u64..1 << n {
        let k = x.count_ones() as usize;
        if k >= 2 && n - k >= 2 {
            codes.insert(pair_code_mask(g, x));
        }
    }
    Ok(codes.into_iter().map(decode_pair_code).collect())
}

/// Pair types of `samples` random subsets with uniformly drawn sizes.
pub fn sample_pair_types(g: &Graph, samples: usize, seed: u64) -> Result<BTreeSet<PairType>, TypesError> {
    let n = g.n();
    if n < 4 {
        return Ok(BTreeSet::new());
    }
    let mut rng = Stream::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut out = BTreeSet::new();
    for _ in 0..samples {
        let k = 2 + rng.below((n - 3) as u64) as usize;
        rng.shuffle(&mut order);
        let x = VertexSet::from_iter(n, order[..k].iter().copied());
        out.insert(pair_type(g, &x)?);
    }
    Ok(out)
}

struct Pool<'a> {
    g: &'a Graph,
    seen: HashSet<Vec<u64>>,
    cands: Vec<VertexSet>,
    cap: usize,
}

impl Pool<'_> {
    fn push(&mut self, x: VertexSet) {
        let n = self.g.n();
        let k = x.len();
        if k < 2 || n - k < 2 || self.cands.len() >= self.cap {
            return;
        }
        if self.seen.insert(x.words().to_vec()) {
            self.cands.push(x);
        }
    }

    fn of(&mut self, it: impl IntoIterator<Item = usize>) {
        let x = VertexSet::from_iter(self.g.n(), it);
        self.push(x);
    }
}

fn greedy_independent(g: &Graph, start: usize, within: &VertexSet, spread: bool) -> Vec<usize> {
    let n = g.n();
    let mut chosen: Vec<usize> = Vec::new();
    let mut blocked = VertexSet::empty(n);
    for i in 0..n {
        let v = (start + i) % n;
        if !within.contains(v) || blocked.contains(v) {
            continue;
        }
        if spread && chosen.iter().any(|&u| g.neighbor_set(u).intersects(&g.neighbor_set(v))) {
            continue;
        }
        chosen.push(v);
        blocked.insert(v);
        blocked = blocked.union(&g.neighbor_set(v));
    }
    chosen
}

fn split_alternating(s: &VertexSet) -> (VertexSet, VertexSet) {
    let mut a = VertexSet::empty(s.universe());
    let mut b = a.clone();
    for (i, v) in s.iter().enumerate() {
        if i % 2 == 0 {
            a.insert(v);
        } else {
            b.insert(v);
        }
    }
    (a, b)
}

/// Candidate sets for every row recipe; the family for `first` comes first.
fn candidates(g: &Graph, first: Option<&str>, cap: usize) -> Vec<VertexSet> {
    let n = g.n();
    let all = g.vertices();
    let nb = |v: usize| g.neighbor_set(v);
    let per = (4 * n).clamp(16, 512);
    let mut pool = Pool { g, seen: HashSet::new(), cands: Vec::new(), cap };
    let families: [(&[&str], &dyn Fn(&mut Pool)); 14] = [
        (&["1"], &|p| {
            for (u, v) in g.edges().into_iter().filter(|&(u, v)| nb(u).intersects(&nb(v))).take(per) {
                p.of([u, v]);
            }
        }),
        (&["2"], &|p| {
            for s in 0..n.min(per) {
                let mut c = alloc::vec![s];
                for w in 0..n {
                    if w != s && c.iter().all(|&u| g.has_edge(u, w)) {
                        c.push(w);
                    }
                }
                p.of(c);
            }
        }),
        (&["3"], &|p| {
            for (a, b) in g.edges().into_iter().take(per) {
                let common: Vec<usize> = nb(a).intersection(&nb(b)).iter().collect();
                for (i, &c) in common.iter().enumerate() {
                    if let Some(&d) = common[i + 1..].iter().find(|&&d| !g.has_edge(c, d)) {
                        p.of([a, c, d]);
                    }
                }
            }
        }),
        (&["4", "6"], &|p| {
            let root = n.isqrt();
            for v in 0..n.min(per) {
                let leaves = greedy_independent(g, 0, &nb(v), false);
                for k in [2, 3, 4, 5, 6] {
                    if leaves.len() >= k {
                        p.of(core::iter::once(v).chain(leaves[..k].iter().copied()));
                    }
                }
                let ns: Vec<usize> = nb(v).iter().collect();
                for m in [2, 3, root.saturating_sub(1), ns.len()] {
                    if m >= 2 && m <= ns.len() {
                        p.of(core::iter::once(v).chain(ns[..m].iter().copied()));
                    }
                }
            }
        }),
        (&["5"], &|p| {
            for (u, v) in g.edges().into_iter().take(per) {
                p.push(nb(u).intersection(&nb(v)).union(&VertexSet::from_iter(n, [u])));
                p.push(nb(u).intersection(&nb(v)).union(&VertexSet::from_iter(n, [v])));
            }
        }),
        (&["7"], &|p| {
            for b in 0..n {
                let ns: Vec<usize> = nb(b).iter().collect();
                for (i, &a) in ns.iter().enumerate() {
                    if let Some(&c) = ns[i + 1..].iter().find(|&&c| !g.has_edge(a, c)) {
                        p.of([a, c]);
                        break;
                    }
                }
            }
        }),
        (&["8"], &|p| {
            for v in 0..n.min(per) {
                let s = greedy_independent(g, v, &all, true);
                for k in 2..=s.len().min(7) {
                    p.of(s[..k].iter().copied());
                }
            }
        }),
        (&["9", "1.3", "1.6"], &|p| {
            for v in 0..n.min(per) {
                p.push(nb(v));
                p.of(greedy_independent(g, 0, &nb(v), false));
            }
        }),
        (&["10", "11", "12"], &|p| {
            for v in 0..n.min(per) {
                let s = greedy_independent(g, v, &all, false);
                p.of(s.iter().copied());
                for drop in 0..s.len().min(4) {
                    p.of(s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &u)| u));
                }
            }
        }),
        (&["13", "14", "15", "16", "17", "22"], &|p| {
            for start in 0..n.min(per) {
                let s = greedy_independent(g, start, &all, true);
                if s.len() < 4 {
                    continue;
                }
                let (v1, v2, v3, v4) = (s[0], s[1], s[2], s[3]);
                let mut covered = VertexSet::from_iter(n, [v1, v2, v3, v4]);
                for &v in &s[..4] {
                    covered = covered.union(&nb(v));
                }
                let (r1, _) = split_alternating(&covered.complement());
                let one = |vs: &[usize]| VertexSet::from_iter(n, vs.iter().copied());
                p.push(one(&[v1, v3]).union(&nb(v2)).union(&nb(v3)).union(&r1));
                p.push(one(&[v1, v2, v4]).union(&nb(v2)).union(&nb(v3)).union(&r1));
                p.push(one(&[v1, v3]).union(&nb(v2)).union(&nb(v4)).union(&r1));
                p.push(one(&[v1, v2]).union(&nb(v2)).union(&r1));
                p.push(one(&[v1, v2, v3, v4]).union(&nb(v2)).union(&r1));
                p.push(one(&[v1]).union(&nb(v1)).union(&r1));
            }
        }),
        (&["18", "19", "23", "24"], &|p| {
            let (h, _) = split_alternating(&all);
            p.push(h);
            let mut count = 0;
            'outer: for u1 in 0..n {
                for u2 in u1 + 1..n {
                    if g.has_edge(u1, u2) {
                        continue;
                    }
                    let rest = all.difference(&nb(u1).union(&nb(u2))).difference(&VertexSet::from_iter(n, [u1, u2]));
                    let (r1, _) = split_alternating(&rest);
                    p.push(r1.union(&VertexSet::from_iter(n, [u1, u2])));
                    p.push(r1.union(&VertexSet::from_iter(n, [u1])));
                    p.push(r1);
                    count += 1;
                    if count >= per {
                        break 'outer;
                    }
                }
            }
        }),
        (&["20", "25"], &|p| {
            for (v, w) in g.edges().into_iter().take(per) {
                for (a, b) in [(v, w), (w, v)] {
                    p.push(nb(a).difference(&nb(b)));
                    p.push(nb(a).difference(&VertexSet::from_iter(n, [b])));
                }
            }
        }),
        (&["21", "26"], &|p| {
            for v1 in 0..n.min(per) {
                let ns: Vec<usize> = nb(v1).iter().collect();
                let tri: Vec<(usize, usize)> = ns
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &a)| ns[i + 1..].iter().filter(move |&&b| g.has_edge(a, b)).map(move |&b| (a, b)))
                    .collect();
                for &(v2, v3) in &tri {
                    if let Some(v) = ns.iter().copied().find(|&v| v != v2 && v != v3 && !g.has_edge(v, v2) && !g.has_edge(v, v3)) {
                        p.of([v, v2, v3]);
                    }
                }
                for (i, &(a, b)) in tri.iter().enumerate() {
                    if let Some(&(c, d)) = tri[i + 1..].iter().find(|&&(c, d)| c != a && c != b && d != a && d != b) {
                        p.of([a, b, c, d]);
                    }
                }
            }
        }),
        (&["1.1", "1.2", "1.4", "1.5", "2.1", "2.2"], &|p| {
            for v in 0..n.min(per) {
                p.push(nb(v).complement());
                let mut closed = nb(v);
                closed.insert(v);
                p.push(closed);
            }
        }),
    ];
    let wanted = |ids: &[&str]| first.is_some_and(|f| ids.contains(&f));
    for (_, f) in families.iter().filter(|(ids, _)| wanted(ids)) {
        f(&mut pool);
    }
    for (_, f) in families.iter().filter(|(ids, _)| !wanted(ids)) {
        f(&mut pool);
    }
    pool.cands
}

/// Total number of recipe candidates tried before the exhaustive search.
const CANDIDATE_CAP: usize = 20_000;

/// A set `X` with `pair_type(G, X) == pt`.
///
/// Row recipes are tried first (each candidate and its complement); for
/// `n <= ENUMERATE_CAP` the search falls back to all subsets in increasing
/// mask order.
pub fn find_witness(g: &Graph, pt: &PairType) -> Result<Option<VertexSet>, TypesError> {
    let row = table_row(pt);
    for x in candidates(g, row.as_ref().map(|r| r.id()), CANDIDATE_CAP) {
        let got = pair_type(g, &x)?;
        if got == *pt {
            return Ok(Some(x));
        }
        if got.mirror() == *pt {
            return Ok(Some(x.complement()));
        }
    }
    let n = g.n();
    if n <= ENUMERATE_CAP {
        for x in 0u64..1 << n {
            let k = x.count_ones() as usize;
            if k >= 2 && n - k >= 2 && decode_pair_code(pair_code_mask(g, x)) == *pt {
                return Ok(Some(VertexSet::from_mask(n, x)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_gnp;
    use crate::graph::named::*;
    use crate::graph::Rational;
    use crate::types::{table_lookup, TableVerdict};

    #[test]
    fn enumeration_examples() {
        let p4 = path(4);
        let all = enumerate_pair_types(&p4).unwrap();
        assert!(!all.is_empty());
        for pt in &all {
            assert!(all.contains(&pt.mirror()));
            let x = find_witness(&p4, pt).unwrap().unwrap();
            assert_eq!(pair_type(&p4, &x).unwrap(), *pt);
        }
        assert!(enumerate_pair_types(&path(3)).unwrap().is_empty());
        assert!(matches!(enumerate_pair_types(&Graph::empty(21)), Err(TypesError::TooLarge { .. })));
    }

    #[test]
    fn sampled_is_subset_of_exhaustive() {
        let g = gen_gnp(12, Rational::of(1, 3), 7);
        let all = enumerate_pair_types(&g).unwrap();
        let some = sample_pair_types(&g, 300, 1).unwrap();
        assert!(some.is_subset(&all));
    }

    #[test]
    fn recipes_find_present_rows_in_random_graph() {
        let g = gen_gnp(300, Rational::of(1, 2), 11);
        let all = enumerate_pair_types(&gen_gnp(12, Rational::of(1, 2), 3)).unwrap();
        let mut found = 0;
        for pt in &all {
            if table_lookup(pt, Rational::of(1, 2)).unwrap() != TableVerdict::AasPresent {
                continue;
            }
            if let Some(x) = find_witness(&g, pt).unwrap() {
                assert_eq!(pair_type(&g, &x).unwrap(), *pt);
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
