//! Constructive Duplicator strategies for forests and for pair-type matching.

mod composed;
mod forest;
mod forest_search;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{is_forest, rooted_tree_code, Graph, VertexSet};
use crate::types::{classify_vertex, pair_type, TypesError};

pub use composed::{last_round_safe, ComposedStats, ComposedStrategy, ReplySource};
pub use forest::{mso_respond_set, plan_set_response, rich_forest, ResponseMethod, ResponsePlan, SetResponse};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyError {
    NotAForest,
    NotAdmissible(LeafDistanceSet),
    InsufficientRichness(String),
    NoValidResponse,
    PreconditionViolated(String),
    TypeMismatch,
    VertexOutOfRange { v: usize, n: usize },
    ListsOverlap(usize),
    Types(TypesError),
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::NotAForest => f.write_str("NotAForest"),
            StrategyError::NotAdmissible(l) => write!(f, "NotAdmissible: {l}"),
            StrategyError::InsufficientRichness(why) => write!(f, "InsufficientRichness: {why}"),
            StrategyError::NoValidResponse => f.write_str("NoValidResponse"),
            StrategyError::PreconditionViolated(why) => write!(f, "PreconditionViolated: {why}"),
            StrategyError::TypeMismatch => f.write_str("TypeMismatch: pair types differ"),
            StrategyError::VertexOutOfRange { v, n } => write!(f, "VertexOutOfRange: {v} not below {n}"),
            StrategyError::ListsOverlap(v) => write!(f, "ListsOverlap: vertex {v} in both lists"),
            StrategyError::Types(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StrategyError {}

impl From<TypesError> for StrategyError {
    fn from(e: TypesError) -> Self {
        StrategyError::Types(e)
    }
}

/// Distances from a vertex to the leaves of its tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeafDistanceSet {
    pub distances: BTreeSet<usize>,
}

impl LeafDistanceSet {
    pub fn new<I: IntoIterator<Item = usize>>(it: I) -> Self {
        LeafDistanceSet { distances: it.into_iter().collect() }
    }

    pub fn contains(&self, d: usize) -> bool {
        self.distances.contains(&d)
    }

    fn has_far(&self) -> bool {
        self.distances.iter().any(|&d| d >= 3)
    }
}

impl fmt::Display for LeafDistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.distances.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), StrategyError> {
    if v >= g.n() {
        return Err(StrategyError::VertexOutOfRange { v, n: g.n() });
    }
    Ok(())
}

fn check_forests(g: &Graph, h: &Graph) -> Result<(), StrategyError> {
    if !is_forest(g) || !is_forest(h) {
        return Err(StrategyError::NotAForest);
    }
    Ok(())
}

/// A vertex of degree at most one; the vertex of `K1` counts as a leaf.
fn is_leaf(g: &Graph, v: usize) -> bool {
    g.degree(v) <= 1
}

pub fn leaf_distances(t: &Graph, v: usize) -> Result<LeafDistanceSet, StrategyError> {
    check_vertex(t, v)?;
    if !is_forest(t) {
        return Err(StrategyError::NotAForest);
    }
    let d = t.distances_from(v);
    Ok(LeafDistanceSet::new((0..t.n()).filter(|&u| is_leaf(t, u)).filter_map(|u| d[u])))
}

/// Not admissible iff it holds both 0 and 1 and has at least three elements.
pub fn is_admissible(l: &LeafDistanceSet) -> bool {
    !(l.contains(0) && l.contains(1) && l.distances.len() >= 3)
}

/// A tree on at most 7 vertices and a vertex `v` with the same leaf distances
/// as `l` below 3, and a leaf at distance 3 iff `l` has an element above 2.
pub fn build_r(l: &LeafDistanceSet) -> Result<(Graph, usize), StrategyError> {
    if l.distances.is_empty() || !is_admissible(l) {
        return Err(StrategyError::NotAdmissible(l.clone()));
    }
    let mut g = Graph::empty(1);
    let grow = |g: &mut Graph, from: usize| {
        let v = g.n();
        *g = g.disjoint_union(&Graph::empty(1));
        g.add_edge(from, v);
        v
    };
    if l.contains(0) {
        // v is a leaf hanging from u; leaves at distance 2 and 3 hang off u.
        if l.contains(1) {
            grow(&mut g, 0);
            return Ok((g, 0));
        }
        if !l.contains(2) && !l.has_far() {
            return Ok((g, 0));
        }
        let u = grow(&mut g, 0);
        if l.contains(2) {
            grow(&mut g, u);
        }
        if l.has_far() {
            let a = grow(&mut g, u);
            grow(&mut g, a);
        }
        return Ok((g, 0));
    }
    let mut branches: Vec<usize> = Vec::new();
    if l.contains(1) {
        branches.push(1);
    }
    if l.contains(2) {
        branches.push(2);
    }
    if l.has_far() {
        branches.push(3);
    }
    if branches.len() == 1 {
        branches.push(branches[0]);
    }
    for len in branches {
        let mut at = 0;
        for _ in 0..len {
            at = grow(&mut g, at);
        }
    }
    Ok((g, 0))
}

/// Smallest vertex of `h` whose rooted component equals that of `x` in `g`.
fn matching_vertex(g: &Graph, x: usize, h: &Graph) -> Option<usize> {
    let code = rooted_tree_code(g, x);
    let size = crate::graph::components(g).into_iter().find(|c| c.contains(&x)).map_or(0, |c| c.len());
    let comps = crate::graph::components(h);
    comps
        .iter()
        .filter(|c| c.len() == size)
        .flat_map(|c| c.iter().copied())
        .filter(|&y| rooted_tree_code(h, y) == code)
        .min()
}

/// First FO round on forests: copy `x1`'s component if `h` has one, else use `R(L(x1))`.
pub fn fo_respond_round1(g: &Graph, h: &Graph, x1: usize) -> Result<usize, StrategyError> {
    check_vertex(g, x1)?;
    check_forests(g, h)?;
    if let Some(y) = matching_vertex(g, x1, h) {
        return Ok(y);
    }
    let l = leaf_distances(g, x1)?;
    let (r, v) = build_r(&l)?;
    matching_vertex(&r, v, h).ok_or_else(|| StrategyError::InsufficientRichness(alloc::format!("no component R({l})")))
}

/// Second FO round: match distance up to 2, leafness within distance 2, and isolation.
pub fn fo_respond_round2(g: &Graph, h: &Graph, x1: usize, y1: usize, x2: usize) -> Result<usize, StrategyError> {
    check_vertex(g, x1)?;
    check_vertex(g, x2)?;
    check_vertex(h, y1)?;
    check_forests(g, h)?;
    let dx = g.distances_from(x1)[x2].filter(|&d| d <= 2);
    let dy = h.distances_from(y1);
    let iso = g.degree(x2) == 0;
    // Any vertex meeting the conditions works; prefer one that looks like `x2`.
    let fits: Vec<usize> = (0..h.n())
        .filter(|&y| {
            (h.degree(y) == 0) == iso
                && match dx {
                    Some(d) => dy[y] == Some(d) && is_leaf(h, y) == is_leaf(g, x2),
                    None => dy[y].is_none(),
                }
        })
        .collect();
    let (same, other): (Vec<usize>, Vec<usize>) = fits.into_iter().partition(|&y| h.degree(y) == g.degree(x2));
    let code = rooted_tree_code(g, x2);
    let pick = |c: &[usize]| c.iter().copied().find(|&y| rooted_tree_code(h, y) == code).or(c.first().copied());
    pick(&same).or_else(|| pick(&other)).ok_or(StrategyError::NoValidResponse)
}

/// Cells of `g` and `h` that must agree on which of `x`, `x̄` they meet.
///
/// Each cell of `g` pairs with the cell of `h` at the same index. The reply
/// puts a whole cell on one side when the `g` cell is on one side, and splits
/// off the smallest vertex otherwise.
fn match_cells(h_n: usize, g_cells: &[VertexSet], h_cells: &[VertexSet], x: &VertexSet) -> Result<VertexSet, StrategyError> {
    let mut y = VertexSet::empty(h_n);
    for (gc, hc) in g_cells.iter().zip(h_cells) {
        let inside = gc.intersects(x);
        let outside = gc.difference(x).len() > 0;
        let need = inside as usize + outside as usize;
        if hc.len() < need || (need == 0 && !hc.is_empty()) {
            return Err(StrategyError::PreconditionViolated(alloc::format!(
                "cell of size {} cannot mirror one of size {}",
                hc.len(),
                gc.len()
            )));
        }
        match (inside, outside) {
            (true, true) => y.insert(hc.first().unwrap()),
            (true, false) => y = y.union(hc),
            _ => {}
        }
    }
    Ok(y)
}

/// Second-round set reply after vertices `x1`, `y1` were played.
pub fn respond_set_after_vertex(g: &Graph, h: &Graph, x1: usize, y1: usize, x2: &VertexSet) -> Result<VertexSet, StrategyError> {
    check_vertex(g, x1)?;
    check_vertex(h, y1)?;
    let (dg, dh) = (g.degree(x1), h.degree(y1));
    for i in 1..=2 {
        if (dg >= i) != (dh >= i) {
            return Err(StrategyError::PreconditionViolated(alloc::format!("degrees {dg} and {dh} differ at {i}")));
        }
    }
    let cap = g.n().min(h.n()).saturating_sub(4);
    if dg > cap || dh > cap || g.n().min(h.n()) < 4 {
        return Err(StrategyError::PreconditionViolated(alloc::format!("degrees {dg}, {dh} exceed {cap}")));
    }
    let cells = |gr: &Graph, v: usize| {
        let nb = gr.neighbor_set(v);
        let me = VertexSet::from_iter(gr.n(), [v]);
        [me.clone(), nb.clone(), nb.union(&me).complement()]
    };
    match_cells(h.n(), &cells(g, x1), &cells(h, y1), x2)
}

fn same_pair_type(g: &Graph, x: &VertexSet, h: &Graph, y: &VertexSet) -> Result<(), StrategyError> {
    if pair_type(g, x)? != pair_type(h, y)? {
        return Err(StrategyError::TypeMismatch);
    }
    Ok(())
}

/// Second-round set reply: the four cells of the two partitions meet in the same pattern.
pub fn respond_set_after_set(g: &Graph, h: &Graph, x: &VertexSet, y: &VertexSet, x2: &VertexSet) -> Result<VertexSet, StrategyError> {
    same_pair_type(g, x, h, y)?;
    match_cells(h.n(), &[x.clone(), x.complement()], &[y.clone(), y.complement()], x2)
}

/// Second-round vertex reply: the smallest vertex on the same side with the same type.
pub fn respond_vertex_after_set(g: &Graph, h: &Graph, x: &VertexSet, y: &VertexSet, v: usize) -> Result<usize, StrategyError> {
    check_vertex(g, v)?;
    same_pair_type(g, x, h, y)?;
    let t = classify_vertex(g, x, v)?;
    let side = x.contains(v);
    for w in 0..h.n() {
        if y.contains(w) == side && classify_vertex(h, y, w)? == t {
            return Ok(w);
        }
    }
    Err(StrategyError::NoValidResponse)
}

/// Smallest `z` outside both lists adjacent to all of `adjacent_to` and none of `avoid`.
///
/// With `private` set, `z` also shares no neighbour outside the lists with any listed vertex.
pub fn find_extension(g: &Graph, adjacent_to: &[usize], avoid: &[usize], private: bool) -> Result<Option<usize>, StrategyError> {
    for &v in adjacent_to.iter().chain(avoid) {
        check_vertex(g, v)?;
    }
    if let Some(&v) = adjacent_to.iter().find(|v| avoid.contains(v)) {
        return Err(StrategyError::ListsOverlap(v));
    }
    let listed = VertexSet::from_iter(g.n(), adjacent_to.iter().chain(avoid).copied());
    Ok((0..g.n()).find(|&z| {
        !listed.contains(z)
            && adjacent_to.iter().all(|&x| g.has_edge(z, x))
            && avoid.iter().all(|&x| !g.has_edge(z, x))
            && (!private || {
                let nz = g.neighbor_set(z).difference(&listed);
                listed.iter().all(|x| !nz.intersects(&g.neighbor_set(x)))
            })
    }))
}
