//! Duplicator's three-round MSO strategy on forests assembled from the rule
//! operations, with the game solver as a fallback when a rule has no answer.

use alloc::format;
use alloc::vec::Vec;

use serde::Serialize;

use super::{
    fo_respond_round1, fo_respond_round2, mso_respond_set, respond_set_after_set, respond_set_after_vertex,
    respond_vertex_after_set, StrategyError,
};
use crate::game::{partial_iso, GameState, Limits, Logic, Move, Round, Side, Solver};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplySource {
    /// One of the constructive rules.
    Rule,
    /// One-ply search in the last round.
    Search,
    /// Game solver, after the rule for this move failed.
    Solver,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComposedStats {
    pub rule: u64,
    pub search: u64,
    pub solver: u64,
    /// Spoiler sequences that ended with Duplicator losing.
    pub losses: u64,
    /// Spoiler sequences examined by [`ComposedStrategy::validate`].
    pub sequences: u64,
}

impl ComposedStats {
    fn count(&mut self, s: ReplySource) {
        match s {
            ReplySource::Rule => self.rule += 1,
            ReplySource::Search => self.search += 1,
            ReplySource::Solver => self.solver += 1,
        }
    }
}

/// What an earlier round means for the rules.
enum Prior {
    None,
    Vertex(usize, usize),
    Set(VertexSet, VertexSet),
}

fn prior(g_move: &Move, h_move: &Move) -> Option<Prior> {
    Some(match (g_move, h_move) {
        (Move::Vertex(x), Move::Vertex(y)) => Prior::Vertex(*x, *y),
        (Move::Set(x), Move::Set(y)) => {
            let (nx, ny) = (x.universe(), y.universe());
            let (kx, ky) = (x.len(), y.len());
            // Sets with fewer than two vertices on one side are treated as
            // the vertex move (or no move) Duplicator answered them with.
            match ((kx, nx - kx), (ky, ny - ky)) {
                ((0, _), (0, _)) | ((_, 0), (_, 0)) => Prior::None,
                ((1, _), (1, _)) => Prior::Vertex(x.first()?, y.first()?),
                ((_, 1), (_, 1)) => Prior::Vertex(x.complement().first()?, y.complement().first()?),
                ((a, b), (c, d)) if a >= 2 && b >= 2 && c >= 2 && d >= 2 => Prior::Set(x.clone(), y.clone()),
                _ => return None,
            }
        }
        _ => return None,
    })
}

pub struct ComposedStrategy {
    solver: Solver,
    pub stats: ComposedStats,
}

impl Default for ComposedStrategy {
    fn default() -> Self {
        Self::new(Limits::with_mso_n(9))
    }
}

impl ComposedStrategy {
    pub fn new(limits: Limits) -> Self {
        ComposedStrategy { solver: Solver::new(Logic::Mso, limits), stats: ComposedStats::default() }
    }

    fn rule(&self, s: &GameState, side: Side, spoiler: &Move) -> Result<Move, StrategyError> {
        let (g, h) = (s.graph(side), s.graph(side.other()));
        let (gm, hm) = (s.moves_on(side), s.moves_on(side.other()));
        let earlier = match gm.len() {
            0 => Prior::None,
            1 => prior(&gm[0], &hm[0]).ok_or_else(|| StrategyError::PreconditionViolated("earlier round not from the rules".into()))?,
            r => return Err(StrategyError::PreconditionViolated(format!("no rule for round {}", r + 1))),
        };
        Ok(match (earlier, spoiler) {
            (Prior::None, Move::Vertex(x)) => Move::Vertex(fo_respond_round1(g, h, *x)?),
            (Prior::None, Move::Set(x)) => Move::Set(mso_respond_set(g, h, x)?),
            (Prior::Vertex(x1, y1), Move::Vertex(x2)) => Move::Vertex(fo_respond_round2(g, h, x1, y1, *x2)?),
            (Prior::Vertex(x1, y1), Move::Set(x2)) => Move::Set(respond_set_after_vertex(g, h, x1, y1, x2)?),
            (Prior::Set(x, y), Move::Set(x2)) => Move::Set(respond_set_after_set(g, h, &x, &y, x2)?),
            (Prior::Set(x, y), Move::Vertex(v)) => Move::Vertex(respond_vertex_after_set(g, h, &x, &y, *v)?),
        })
    }

    /// Last-round reply: any move that keeps the chosen vertices a partial isomorphism.
    fn last_round(&self, s: &GameState, side: Side, spoiler: &Move) -> Move {
        let h = s.graph(side.other());
        let pairs: Vec<(usize, usize)> = s
            .moves_on(side)
            .iter()
            .zip(s.moves_on(side.other()))
            .filter_map(|(a, b)| match (a, b) {
                (Move::Vertex(x), Move::Vertex(y)) => Some((*x, y)),
                _ => None,
            })
            .collect();
        match spoiler {
            Move::Set(x) => Move::Set(VertexSet::from_iter(h.n(), pairs.iter().filter(|p| x.contains(p.0)).map(|p| p.1))),
            Move::Vertex(x) => {
                let ok = |y: usize| {
                    let mut hist = s.history.clone();
                    hist.push(if side == Side::Left { Round::VertexPair(*x, y) } else { Round::VertexPair(y, *x) });
                    partial_iso(&s.a, &s.b, &hist)
                };
                Move::Vertex((0..h.n()).find(|&y| ok(y)).unwrap_or(0))
            }
        }
    }

    /// Duplicator's answer to `spoiler` played in graph `side`.
    pub fn reply(&mut self, s: &GameState, side: Side, spoiler: &Move) -> Result<(Move, ReplySource), StrategyError> {
        if s.rounds_left == 0 {
            return Err(StrategyError::PreconditionViolated("no rounds left".into()));
        }
        let (m, src) = if s.rounds_left == 1 {
            (self.last_round(s, side, spoiler), ReplySource::Search)
        } else {
            match self.rule(s, side, spoiler) {
                Ok(m) => (m, ReplySource::Rule),
                Err(_) => {
                    let m = self
                        .solver
                        .duplicator_reply(s, side, spoiler)
                        .map_err(|e| StrategyError::PreconditionViolated(format!("solver: {e}")))?
                        .ok_or(StrategyError::NoValidResponse)?;
                    (m, ReplySource::Solver)
                }
            }
        };
        self.stats.count(src);
        Ok((m, src))
    }

    /// Plays every Spoiler line of the three-round MSO game on `a`, `b`.
    ///
    /// Rounds one and two are answered by [`reply`](Self::reply). The last
    /// round is decided without enumerating it: a one-ply reply exists
    /// exactly when the position is a partial isomorphism and every vertex
    /// has a counterpart with the same relation to the chosen vertices and
    /// sets. Returns the number of lost lines.
    pub fn validate(&mut self, a: &Graph, b: &Graph) -> Result<u64, StrategyError> {
        let start = GameState::new(a.clone(), b.clone(), 3, Logic::Mso);
        let mut lost = 0;
        for s1 in [Side::Left, Side::Right] {
            for m1 in spoiler_moves(start.graph(s1)) {
                let st1 = match self.reply(&start, s1, &m1) {
                    Ok((r1, _)) => advance(&start, s1, m1.clone(), r1),
                    Err(_) => None,
                };
                let Some(st1) = st1 else {
                    let lines = (spoiler_moves(a).len() + spoiler_moves(b).len()) as u64;
                    lost += lines;
                    self.stats.sequences += lines;
                    continue;
                };
                for s2 in [Side::Left, Side::Right] {
                    for m2 in spoiler_moves(st1.graph(s2)) {
                        self.stats.sequences += 1;
                        let ok = match self.reply(&st1, s2, &m2) {
                            Ok((r2, _)) => advance(&st1, s2, m2, r2).is_some_and(|st2| last_round_safe(&st2)),
                            Err(_) => false,
                        };
                        if !ok {
                            lost += 1;
                        }
                    }
                }
            }
        }
        self.stats.losses += lost;
        Ok(lost)
    }
}

fn spoiler_moves(g: &Graph) -> Vec<Move> {
    let n = g.n();
    let mut out: Vec<Move> = (0..n).map(Move::Vertex).collect();
    out.extend((0..1u64 << n).map(|m| Move::Set(VertexSet::from_mask(n, m))));
    out
}

fn advance(s: &GameState, side: Side, spoiler: Move, dup: Move) -> Option<GameState> {
    crate::game::apply_move(s, side, spoiler, dup).ok()
}

/// Relation of `v` to the chosen vertices and sets, packed into bits.
fn profile(g: &Graph, moves: &[Move], v: usize) -> u64 {
    let mut p = 0u64;
    for (i, m) in moves.iter().enumerate() {
        let bits = match m {
            Move::Vertex(u) => (*u == v) as u64 | (g.has_edge(*u, v) as u64) << 1,
            Move::Set(x) => x.contains(v) as u64,
        };
        p |= bits << (2 * i);
    }
    p
}

/// Duplicator wins the last round from `s`, which has one round left.
pub fn last_round_safe(s: &GameState) -> bool {
    if !partial_iso(&s.a, &s.b, &s.history) {
        return false;
    }
    let (ma, mb) = (s.moves_on(Side::Left), s.moves_on(Side::Right));
    let pa: alloc::collections::BTreeSet<u64> = (0..s.a.n()).map(|v| profile(&s.a, &ma, v)).collect();
    let pb: alloc::collections::BTreeSet<u64> = (0..s.b.n()).map(|v| profile(&s.b, &mb, v)).collect();
    pa == pb
}
