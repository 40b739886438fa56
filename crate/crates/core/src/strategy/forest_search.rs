//! Search for `Y` with a prescribed pair type, one colouring per component of `H`.
//!
//! With `|Y|` fixed every vertex type is decided inside its own component, so a
//! dynamic programme over components on (types seen, `|Y|`, special markers)
//! is exact. A separate mode covers the case where both sides are larger than
//! any degree and no dominating letter can occur.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::graph::{components, Graph, VertexSet};
use crate::types::{pair_type, Axis, PairType, Special, VertexType};

/// Above this size a component is only split in four ways.
const FULL_SPLIT_CAP: usize = 12;
/// Smallest sides tried with exact sizes.
const SMALL_SIDE: usize = 16;

fn axis_idx(a: Axis) -> u32 {
    match a {
        Axis::Dominating => 0,
        Axis::Common => 1,
        Axis::Isolated => 2,
    }
}

fn type_bit(in_y: bool, t: VertexType) -> u32 {
    1 << ((!in_y as u32) * 9 + axis_idx(t.inside) * 3 + axis_idx(t.outside))
}

fn target_mask(pt: &PairType) -> u32 {
    pt.x.iter().map(|&t| type_bit(true, t)).chain(pt.xbar.iter().map(|&t| type_bit(false, t))).fold(0, |a, b| a | b)
}

/// 0 none, 1 one Case1 marker, 2 one Case2 marker, 3 several.
fn sp_code(s: Special) -> u8 {
    match s {
        Special::None => 0,
        Special::Case1 => 1,
        Special::Case2 => 2,
        Special::Multiple => 3,
    }
}

fn sp_join(a: u8, b: u8) -> u8 {
    match (a, b) {
        (0, c) | (c, 0) => c,
        _ => 3,
    }
}

#[derive(Clone, Copy)]
enum Sizes {
    /// `|Y| = s` exactly.
    Exact(usize),
    /// Both sides hold at least this many vertices.
    Large(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    mask: u32,
    y: usize,
    ybar: usize,
    sp: u8,
}

struct Choice {
    mask: u32,
    y: usize,
    sp: u8,
    members: Vec<usize>,
}

fn split_options(h: &Graph, comp: &[usize], sizes: Sizes, target: u32) -> Vec<Choice> {
    let n = h.n();
    let k = comp.len();
    let pos = |v: usize| comp.iter().position(|&w| w == v).unwrap();
    let assignments: Vec<u64> = if k <= FULL_SPLIT_CAP {
        (0..1u64 << k).collect()
    } else {
        let d = h.distances_from(comp[0]);
        let even: u64 = comp.iter().enumerate().filter(|&(_, &v)| d[v].is_some_and(|x| x % 2 == 0)).fold(0, |a, (i, _)| a | 1 << i);
        let all = (1u64 << k) - 1;
        vec![0, all, even, all & !even]
    };
    let mut seen: HashMap<(u32, usize, u8), ()> = HashMap::new();
    let mut out = Vec::new();
    for a in assignments {
        let y = a.count_ones() as usize;
        if let Sizes::Exact(s) = sizes {
            if y > s {
                continue;
            }
        }
        let mut mask = 0u32;
        let mut sp = 0u8;
        let mut ok = true;
        for (i, &v) in comp.iter().enumerate() {
            let in_y = a >> i & 1 == 1;
            let (mut same, mut other) = (0, 0);
            for w in h.neighbors(v) {
                if (a >> pos(w) & 1 == 1) == in_y {
                    same += 1;
                } else {
                    other += 1;
                }
            }
            let t = match sizes {
                Sizes::Exact(s) => {
                    let (ys, yb) = (s, n - s);
                    let (own, oth) = if in_y { (ys - 1, yb) } else { (yb - 1, ys) };
                    VertexType::new(Axis::of(same, own), Axis::of(other, oth))
                }
                Sizes::Large(_) => VertexType::new(Axis::of(same, usize::MAX), Axis::of(other, usize::MAX)),
            };
            let bit = type_bit(in_y, t);
            if bit & target == 0 {
                ok = false;
                break;
            }
            mask |= bit;
            let (to_y, to_yb) = if in_y { (t.inside, t.outside) } else { (t.outside, t.inside) };
            match (to_y, to_yb) {
                (Axis::Isolated, Axis::Dominating) => sp = sp_join(sp, 1),
                (Axis::Dominating, Axis::Isolated) => sp = sp_join(sp, 2),
                _ => {}
            }
        }
        if ok && seen.insert((mask, y, sp), ()).is_none() {
            let members = comp.iter().enumerate().filter(|&(i, _)| a >> i & 1 == 1).map(|(_, &v)| v).collect();
            out.push(Choice { mask, y, sp, members });
        }
    }
    out
}

fn run(h: &Graph, target: &PairType, sizes: Sizes) -> Option<VertexSet> {
    let goal = target_mask(target);
    let want_sp = sp_code(target.special);
    let comps = components(h);
    let cap = match sizes {
        Sizes::Exact(s) => s,
        Sizes::Large(b) => b,
    };
    let mut layers: Vec<HashMap<State, (State, usize)>> = Vec::with_capacity(comps.len());
    let mut options: Vec<Vec<Choice>> = Vec::with_capacity(comps.len());
    let start = State { mask: 0, y: 0, ybar: 0, sp: 0 };
    let mut frontier: Vec<State> = vec![start];
    for comp in &comps {
        let opts = split_options(h, comp, sizes, goal);
        let mut next: HashMap<State, (State, usize)> = HashMap::new();
        for st in &frontier {
            for (j, c) in opts.iter().enumerate() {
                let sp = sp_join(st.sp, c.sp);
                if want_sp != 3 && sp != 0 && sp != want_sp {
                    continue;
                }
                let (y, ybar) = match sizes {
                    Sizes::Exact(_) => (st.y + c.y, 0),
                    Sizes::Large(b) => ((st.y + c.y).min(b), (st.ybar + comp.len() - c.y).min(b)),
                };
                if y > cap {
                    continue;
                }
                let ns = State { mask: st.mask | c.mask, y, ybar, sp };
                next.entry(ns).or_insert((*st, j));
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next.keys().copied().collect();
        frontier.sort_unstable_by_key(|s| (s.mask, s.y, s.ybar, s.sp));
        layers.push(next);
        options.push(opts);
    }
    let done = |s: &State| {
        s.mask == goal
            && s.sp == want_sp
            && match sizes {
                Sizes::Exact(k) => s.y == k,
                Sizes::Large(b) => s.y >= b && s.ybar >= b,
            }
    };
    let mut cur = *frontier.iter().find(|s| done(s))?;
    let mut y = VertexSet::empty(h.n());
    for (layer, opts) in layers.iter().zip(&options).rev() {
        let (prev, j) = layer[&cur];
        for &v in &opts[j].members {
            y.insert(v);
        }
        cur = prev;
    }
    Some(y)
}

/// A `Y` with `pair_type(h, Y) == target`, if one exists among per-component splits.
pub(super) fn search(h: &Graph, target: &PairType) -> Option<VertexSet> {
    let n = h.n();
    if n < 4 {
        return None;
    }
    let max_deg = (0..n).map(|v| h.degree(v)).max().unwrap_or(0);
    let bound = max_deg + 2;
    let mut modes = Vec::new();
    if 2 * bound <= n {
        modes.push(Sizes::Large(bound));
    }
    let small = SMALL_SIDE.min(n - 2);
    for s in 2..=small {
        modes.push(Sizes::Exact(s));
        if n - s > small {
            modes.push(Sizes::Exact(n - s));
        }
    }
    for m in modes {
        if let Some(y) = run(h, target, m) {
            if pair_type(h, &y).as_ref() == Ok(target) {
                return Some(y);
            }
        }
    }
    None
}
