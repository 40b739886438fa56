//! Set replies on forests: the isolated-vertex split, the two-colouring case
//! and the staged construction of a small forest `T` realising the pair type.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{check_forests, fo_respond_round1, StrategyError};
use crate::graph::{components, components_within, enumerate::trees_up_to_iso, tree_code, Graph, VertexSet};
use crate::types::{pair_type, PairType, VertexType};

/// Disjoint union of `copies` copies of every tree on at most `max_size` vertices.
pub fn rich_forest(max_size: usize, copies: usize) -> Graph {
    let mut g = Graph::empty(0);
    for k in 1..=max_size {
        for t in trees_up_to_iso(k) {
            for _ in 0..copies {
                g = g.disjoint_union(&t);
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseMethod {
    /// `|X|` or `|X̄|` below two.
    Degenerate,
    /// Every nonempty component meets both sides.
    Coloring,
    /// Some nonempty component misses one side; `Y` comes from the plan `T`.
    Staged,
    /// Gadget search after the staged rules gave a different pair type.
    Search,
}

/// The abstract forest `T` with the marked set `Y'` and the stage sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResponsePlan {
    pub t: Graph,
    pub y_prime: Vec<usize>,
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub a3: Vec<usize>,
}

impl ResponsePlan {
    pub fn largest_component(&self) -> usize {
        components(&self.t).iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

impl Serialize for ResponsePlan {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ResponsePlan", 6)?;
        st.serialize_field("n", &self.t.n())?;
        st.serialize_field("edges", &self.t.edges())?;
        st.serialize_field("y_prime", &self.y_prime)?;
        st.serialize_field("a1", &self.a1)?;
        st.serialize_field("a2", &self.a2)?;
        st.serialize_field("a3", &self.a3)?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SetResponse {
    pub y: VertexSet,
    pub method: ResponseMethod,
    /// The plan was built for `X̄` and `Y` is the complement of its image.
    pub complemented: bool,
    pub plan: Option<ResponsePlan>,
}

/// `Y ⊆ V(H)` with `pair_type(H, Y) = pair_type(G, X)`; see [`plan_set_response`].
pub fn mso_respond_set(g: &Graph, h: &Graph, x: &VertexSet) -> Result<VertexSet, StrategyError> {
    plan_set_response(g, h, x).map(|r| r.y)
}

const II: VertexType = VertexType::new(crate::types::Axis::Isolated, crate::types::Axis::Isolated);

use crate::types::Axis::{Common as C, Dominating as D, Isolated as I};

fn ty(inside: crate::types::Axis, outside: crate::types::Axis) -> VertexType {
    VertexType::new(inside, outside)
}

/// Components of `h` with their canonical codes, and which are already used.
struct Host<'a> {
    h: &'a Graph,
    comps: Vec<(String, Vec<usize>)>,
    used: Vec<bool>,
}

impl<'a> Host<'a> {
    fn new(h: &'a Graph) -> Self {
        let comps = crate::graph::component_codes(h).expect("forest checked");
        let used = vec![false; comps.len()];
        Host { h, comps, used }
    }

    /// An unused component isomorphic to `t`, with `t`-vertex -> `h`-vertex map.
    fn take(&mut self, t: &Graph) -> Option<Vec<usize>> {
        let code = tree_code(t).ok()?;
        let i = (0..self.comps.len()).find(|&i| !self.used[i] && self.comps[i].0 == code)?;
        self.used[i] = true;
        let verts = self.comps[i].1.clone();
        let (hc, keep) = self.h.induced(&VertexSet::from_iter(self.h.n(), verts));
        let m = tree_map(t, &hc)?;
        Some(m.into_iter().map(|j| keep[j]).collect())
    }

    fn unused_nonempty(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.comps.iter().enumerate().filter(|&(i, c)| !self.used[i] && c.1.len() > 1).map(|(_, c)| &c.1)
    }
}

fn subtree_codes(t: &Graph, root: usize) -> (Vec<String>, Vec<usize>) {
    // Post-order over the rooted tree; code[v] describes the subtree below v.
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut code = vec![String::new(); n];
    for &u in order.iter().rev() {
        let mut kids: Vec<String> = t.neighbors(u).filter(|&w| parent[w] == u && w != root).map(|w| code[w].clone()).collect();
        kids.sort_unstable();
        let mut s = String::from("(");
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        code[u] = s;
    }
    (code, parent)
}

/// Isomorphism between two trees as a `t`-vertex -> `h`-vertex table.
fn tree_map(t: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if t.n() != h.n() || t.n() == 0 {
        return None;
    }
    let (tc, tp) = subtree_codes(t, 0);
    let root = (0..h.n()).find(|&r| subtree_codes(h, r).0[r] == tc[0])?;
    let (hc, hp) = subtree_codes(h, root);
    let mut map = vec![usize::MAX; t.n()];
    let mut stack = vec![(0usize, root)];
    while let Some((a, b)) = stack.pop() {
        map[a] = b;
        let mut ka: Vec<usize> = t.neighbors(a).filter(|&w| tp[w] == a && w != 0).collect();
        let mut kb: Vec<usize> = h.neighbors(b).filter(|&w| hp[w] == b && w != root).collect();
        ka.sort_by(|x, y| tc[*x].cmp(&tc[*y]));
        kb.sort_by(|x, y| hc[*x].cmp(&hc[*y]));
        for (x, y) in ka.into_iter().zip(kb) {
            stack.push((x, y));
        }
    }
    Some(map)
}

/// Proper two-colouring class of a tree component: vertices at even distance from its first vertex.
fn even_class(h: &Graph, comp: &[usize]) -> Vec<usize> {
    let d = h.distances_from(comp[0]);
    comp.iter().copied().filter(|&v| d[v].is_some_and(|k| k % 2 == 0)).collect()
}

fn degenerate(g: &Graph, h: &Graph, x: &VertexSet) -> Result<Option<VertexSet>, StrategyError> {
    let (n, k) = (g.n(), x.len());
    let single = |v: usize| fo_respond_round1(g, h, v).map(|w| VertexSet::from_iter(h.n(), [w]));
    Ok(Some(match (k, n - k) {
        (0, _) => VertexSet::empty(h.n()),
        (_, 0) => VertexSet::full(h.n()),
        (1, _) => single(x.first().unwrap())?,
        (_, 1) => single(x.complement().first().unwrap())?.complement(),
        _ => return Ok(None),
    }))
}

/// Isolated vertices of `h` put in `Y`: `I(G)` meets a side iff its image meets the matching side.
fn isolated_split(g: &Graph, h: &Graph, x: &VertexSet) -> Result<(VertexSet, VertexSet), StrategyError> {
    let ig = VertexSet::from_iter(g.n(), (0..g.n()).filter(|&v| g.degree(v) == 0));
    let ih = VertexSet::from_iter(h.n(), (0..h.n()).filter(|&v| h.degree(v) == 0));
    // Up to two isolated vertices per side, so a side made only of isolated
    // vertices keeps at least two.
    let kx = ig.intersection(x).len().min(2);
    let kxb = ig.difference(x).len().min(2);
    if ih.len() < kx + kxb || (kx + kxb == 0 && !ih.is_empty()) {
        return Err(StrategyError::InsufficientRichness(alloc::format!(
            "{} isolated vertices cannot mirror {}",
            ih.len(),
            ig.len()
        )));
    }
    let y = if kxb == 0 { ih.clone() } else { VertexSet::from_iter(h.n(), ih.iter().take(kx)) };
    Ok((y, ih))
}

/// Reply to a set move on forests.
///
/// Degenerate sets follow the vertex strategy. Otherwise the isolated
/// vertices of `H` are split first. If every nonempty component of `G` meets
/// both sides, `Y` colours the components of `H` properly, with a `P3` or
/// `P4` inserted for inside-common vertices. Otherwise a small forest `T` is
/// built in stages and embedded as components of `H`; the rest of `H` goes to
/// the other side. The result is checked against `pair_type(G, X)`, and a
/// gadget search runs when the staged rules disagree.
pub fn plan_set_response(g: &Graph, h: &Graph, x: &VertexSet) -> Result<SetResponse, StrategyError> {
    check_forests(g, h)?;
    let x = if x.universe() == g.n() { x.clone() } else { VertexSet::from_iter(g.n(), x.iter().filter(|&v| v < g.n())) };
    if let Some(y) = degenerate(g, h, &x)? {
        return Ok(SetResponse { y, method: ResponseMethod::Degenerate, complemented: false, plan: None });
    }
    let target = pair_type(g, &x)?;
    let (y_iso, ih) = isolated_split(g, h, &x)?;
    let nonempty: Vec<Vec<usize>> = components(g).into_iter().filter(|c| c.len() > 1).collect();
    let miss = |side: &VertexSet| nonempty.iter().any(|c| c.iter().all(|&v| !side.contains(v)));
    let xb = x.complement();
    let (miss_x, miss_xb) = (miss(&x), miss(&xb));
    let staged = if !miss_x && !miss_xb {
        coloring(h, &target, &y_iso).map(|y| SetResponse { y, method: ResponseMethod::Coloring, complemented: false, plan: None })
    } else {
        let on_x = match (miss_x, miss_xb) {
            (true, false) => true,
            (false, true) => false,
            _ => components_within(g, &x).len() <= components_within(g, &xb).len(),
        };
        let tz = if on_x { target.clone() } else { target.mirror() };
        build_plan(&tz).and_then(|plan| {
            let mut host = Host::new(h);
            let image = embed(&mut host, &plan)?;
            let iso_z = if on_x { y_iso.clone() } else { ih.difference(&y_iso) };
            let yz = image.union(&iso_z);
            let y = if on_x { yz } else { yz.complement() };
            Ok(SetResponse { y, method: ResponseMethod::Staged, complemented: !on_x, plan: Some(plan) })
        })
    };
    let staged_err = match staged {
        Ok(r) if pair_type(h, &r.y).as_ref() == Ok(&target) => return Ok(r),
        Ok(_) => StrategyError::NoValidResponse,
        Err(e) => e,
    };
    match super::forest_search::search(h, &target) {
        Some(y) => Ok(SetResponse { y, method: ResponseMethod::Search, complemented: false, plan: None }),
        None => Err(staged_err),
    }
}

fn coloring(h: &Graph, target: &PairType, y_iso: &VertexSet) -> Result<VertexSet, StrategyError> {
    let common = |s: &BTreeSet<VertexType>| s.iter().any(|t| t.inside == C);
    let mut host = Host::new(h);
    let mut y = y_iso.clone();
    if common(&target.x) || common(&target.xbar) {
        for (side, types) in [(true, &target.x), (false, &target.xbar)] {
            if types.contains(&ty(C, I)) {
                // Two consecutive vertices on this side, the third on the other.
                let p3 = crate::graph::named::path(3);
                let m = host.take(&p3).ok_or_else(|| StrategyError::InsufficientRichness("no P3 component".into()))?;
                let here = [m[0], m[1]];
                if side {
                    y = y.union(&VertexSet::from_iter(h.n(), here));
                } else {
                    y.insert(m[2]);
                }
            } else if types.contains(&ty(C, C)) {
                let p4 = crate::graph::named::path(4);
                let m = host.take(&p4).ok_or_else(|| StrategyError::InsufficientRichness("no P4 component".into()))?;
                let pick = if side { [m[1], m[2]] } else { [m[0], m[3]] };
                y = y.union(&VertexSet::from_iter(h.n(), pick));
            }
        }
    }
    let rest: Vec<Vec<usize>> = host.unused_nonempty().cloned().collect();
    for comp in rest {
        y = y.union(&VertexSet::from_iter(h.n(), even_class(h, &comp)));
    }
    Ok(y)
}

/// Builds `T` and `Y'` for the side that misses a component (passed as the `x` side of `tz`).
fn build_plan(tz: &PairType) -> Result<ResponsePlan, StrategyError> {
    let unsupported = || StrategyError::InsufficientRichness("pair type outside the staged rules".into());
    let p: BTreeSet<VertexType> = tz.x.iter().copied().filter(|t| *t != II).collect();
    let insides: BTreeSet<_> = p.iter().map(|t| t.inside).collect();
    let mut t = Graph::empty(0);
    let add = |t: &mut Graph, to: &[usize]| {
        let v = t.n();
        *t = t.disjoint_union(&Graph::empty(1));
        for &u in to {
            t.add_edge(u, v);
        }
        v
    };
    // Stage 0: a shape with the inside types of X.
    let has = |a| insides.contains(&a);
    let mut ins: Vec<crate::types::Axis> = Vec::new();
    let mut y_prime: Vec<usize> = Vec::new();
    if !p.is_empty() {
        let shape: &[(usize, crate::types::Axis)] = match (has(D), has(C), has(I)) {
            (true, false, false) => &[(usize::MAX, D), (0, D)],
            (true, true, false) => &[(usize::MAX, C), (0, D), (1, C)],
            (false, true, false) => &[(usize::MAX, C), (0, C), (usize::MAX, C), (2, C)],
            (false, false, true) => &[(usize::MAX, I), (usize::MAX, I)],
            (false, true, true) => &[(usize::MAX, C), (0, C), (usize::MAX, I)],
            _ => return Err(unsupported()),
        };
        for &(to, a) in shape {
            let v = if to == usize::MAX { add(&mut t, &[]) } else { add(&mut t, &[to]) };
            y_prime.push(v);
            ins.push(a);
        }
    }
    if p.iter().any(|t| t.outside == D) || tz.xbar.iter().any(|t| t.inside == D) {
        return Err(unsupported());
    }
    let dominating: Vec<VertexType> = tz.xbar.iter().copied().filter(|t| t.outside == D).collect();
    let q: BTreeSet<_> = tz.xbar.iter().filter(|t| t.outside == C).map(|t| t.inside).collect();
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    let mut a3 = Vec::new();
    if let Some(u) = dominating.first() {
        // Only an independent X has an X-dominating vertex in X̄; it supplies
        // the outside neighbours of Y', and pendants model the other ones.
        if !insides.iter().all(|&a| a == I) || dominating.len() > 1 {
            return Err(unsupported());
        }
        let uv = add(&mut t, &y_prime);
        a2.push(uv);
        if u.inside == C {
            a2.push(add(&mut t, &[uv]));
        }
        if !q.is_empty() {
            for &v in &y_prime {
                a1.push(add(&mut t, &[v]));
            }
        }
    } else {
        // Stage 1: outside-common vertices of X, per inside type.
        for &a in &insides {
            let outs: BTreeSet<_> = p.iter().filter(|t| t.inside == a).map(|t| t.outside).collect();
            let hosts: Vec<usize> = (0..y_prime.len()).filter(|&i| ins[i] == a).map(|i| y_prime[i]).collect();
            if outs.contains(&C) {
                let take = if outs.contains(&I) { 1 } else { hosts.len() };
                for &v in &hosts[..take] {
                    a1.push(add(&mut t, &[v]));
                }
            }
        }
    }
    // Stage 2: inside types of the outside-common vertices of X̄.
    if q.contains(&C) && !a1.is_empty() {
        if !q.contains(&I) {
            for &v in &a1.clone() {
                a2.push(add(&mut t, &[v]));
            }
        } else {
            a2.push(add(&mut t, &[a1[0]]));
            if a1.len() == 1 {
                // Trouble step: one more outside-common vertex of X̄, left inside-isolated.
                let host = t.neighbors(a1[0]).find(|v| y_prime.contains(v)).unwrap();
                let a = ins[y_prime.iter().position(|&v| v == host).unwrap()];
                let comps = components(&t);
                let size = |v: usize| comps.iter().find(|c| c.contains(&v)).map_or(0, |c| c.len());
                // Same type as the host: same inside letter and an outside neighbour.
                let same: Vec<usize> = (0..y_prime.len())
                    .filter(|&i| ins[i] == a && t.neighbors(y_prime[i]).any(|w| a1.contains(&w)))
                    .map(|i| y_prime[i])
                    .collect();
                let v = same.iter().copied().min_by_key(|&v| (size(v), v)).ok_or_else(unsupported)?;
                a3.push(add(&mut t, &[v]));
            }
        }
    }
    Ok(ResponsePlan { t, y_prime, a1, a2, a3 })
}

fn embed(host: &mut Host<'_>, plan: &ResponsePlan) -> Result<VertexSet, StrategyError> {
    let mut image = VertexSet::empty(host.h.n());
    for comp in components(&plan.t) {
        let (sub, keep) = plan.t.induced(&VertexSet::from_iter(plan.t.n(), comp.iter().copied()));
        let m = host
            .take(&sub)
            .ok_or_else(|| StrategyError::InsufficientRichness(alloc::format!("no component of size {} matching T", sub.n())))?;
        for (i, &tv) in keep.iter().enumerate() {
            if plan.y_prime.contains(&tv) {
                image.insert(m[i]);
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn host() -> Graph {
        rich_forest(7, 4).disjoint_union(&nine_vertex_tree().0).disjoint_union(&nine_vertex_tree().0)
    }

    fn check(g: &Graph, x: &VertexSet, h: &Graph) -> SetResponse {
        let r = plan_set_response(g, h, x).unwrap();
        if x.len() >= 2 && g.n() - x.len() >= 2 {
            assert_eq!(pair_type(h, &r.y).unwrap(), pair_type(g, x).unwrap());
        }
        r
    }

    #[test]
    fn tree_map_is_isomorphism() {
        let (t, _) = nine_vertex_tree();
        let q = t.permuted(&[4, 0, 8, 2, 1, 3, 5, 7, 6]);
        let m = tree_map(&t, &q).unwrap();
        for (u, v) in t.edges() {
            assert!(q.has_edge(m[u], m[v]));
        }
    }

    #[test]
    fn degenerate_sets() {
        let g = path(3).disjoint_union(&Graph::empty(2));
        let h = host();
        let r = check(&g, &VertexSet::empty(5), &h);
        assert!(r.y.is_empty());
        assert_eq!(r.method, ResponseMethod::Degenerate);
        let one = check(&g, &VertexSet::from_iter(5, [1]), &h);
        assert_eq!(one.y.len(), 1);
        assert_eq!(h.degree(one.y.first().unwrap()), 2);
    }

    #[test]
    fn coloring_case() {
        let g = path(2).disjoint_union(&path(2)).disjoint_union(&path(3)).disjoint_union(&Graph::empty(1));
        // One proper colour class of every nonempty component.
        let x = VertexSet::from_iter(8, [0, 2, 5]);
        let r = check(&g, &x, &host());
        assert_eq!(r.method, ResponseMethod::Coloring);
    }

    #[test]
    fn two_disjoint_edges_plan() {
        // X: two disjoint edges, each end with one neighbour outside; X̄ has
        // outside-common vertices of both inside kinds.
        let g = Graph::from_edges(
            20,
            &[(0, 1), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7), (4, 8), (9, 10), (11, 12), (12, 13), (14, 15)],
        )
        .unwrap();
        let x = VertexSet::from_iter(20, [0, 1, 2, 3]);
        let r = check(&g, &x, &host());
        assert_eq!(r.method, ResponseMethod::Staged);
        let plan = r.plan.unwrap();
        assert_eq!(plan.y_prime.len(), 4);
        assert_eq!(plan.a1.len(), 4);
        assert_eq!(plan.a2.len(), 1);
        let mut sizes: Vec<usize> = components(&plan.t).iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [4, 5]);
    }

    #[test]
    fn nine_vertex_plan() {
        // X is a P3 whose three vertices each have a pendant path of length two outside.
        let g = Graph::from_edges(
            16,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (1, 5), (5, 6), (2, 7), (7, 8), (9, 10), (11, 12), (12, 13)],
        )
        .unwrap();
        let x = VertexSet::from_iter(16, [0, 1, 2]);
        let r = check(&g, &x, &host());
        let plan = r.plan.unwrap();
        assert_eq!(plan.largest_component(), 9);
        assert_eq!(tree_code(&plan.t).unwrap(), tree_code(&nine_vertex_tree().0).unwrap());
    }
}
