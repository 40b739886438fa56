use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{GameError, GameState, Logic, Move, Side, Winner};
use crate::graph::{Graph, VertexSet};

/// Size limits for exhaustive solving.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub fo_max_n: usize,
    pub fo_max_k: usize,
    pub mso_max_n: usize,
    pub mso_max_k: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { fo_max_n: 12, fo_max_k: 4, mso_max_n: 8, mso_max_k: 3 }
    }
}

impl Limits {
    /// Default limits with a larger MSO vertex bound.
    pub fn with_mso_n(n: usize) -> Self {
        assert!(n < 64);
        Limits { mso_max_n: n, ..Limits::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum M {
    V(u32),
    S(u64),
}

const ATOMIC_TAG: u32 = 0x8000_0000;

/// Interning table of game types; ids are comparable across graphs.
pub struct Solver {
    logic: Logic,
    limits: Limits,
    table: HashMap<Vec<u32>, u32>,
}

fn atomic_key(g: &Graph, prefix: &[M]) -> Vec<u32> {
    let mut key = Vec::with_capacity(4);
    key.push(ATOMIC_TAG | prefix.len() as u32);
    let mut kinds = 0u32;
    let mut acc = 0u32;
    let mut used = 0u32;
    let mut bits: Vec<u32> = Vec::new();
    let mut push = |b: bool, bits: &mut Vec<u32>| {
        acc |= (b as u32) << used;
        used += 1;
        if used == 32 {
            bits.push(acc);
            acc = 0;
            used = 0;
        }
    };
    for (j, mj) in prefix.iter().enumerate() {
        match *mj {
            M::V(v) => {
                for mi in &prefix[..j] {
                    match *mi {
                        M::V(u) => {
                            push(u == v, &mut bits);
                            push(g.has_edge(u as usize, v as usize), &mut bits);
                        }
                        M::S(s) => push(s >> v & 1 == 1, &mut bits),
                    }
                }
            }
            M::S(s) => {
                kinds |= 1 << j;
                for mi in &prefix[..j] {
                    if let M::V(u) = *mi {
                        push(s >> u & 1 == 1, &mut bits);
                    }
                }
            }
        }
    }
    if used > 0 {
        bits.push(acc);
    }
    key.push(kinds);
    key.extend(bits);
    key
}

impl Solver {
    pub fn new(logic: Logic, limits: Limits) -> Self {
        Solver { logic, limits, table: HashMap::new() }
    }

    pub fn logic(&self) -> Logic {
        self.logic
    }

    /// Number of distinct types interned so far.
    pub fn table_size(&self) -> usize {
        self.table.len()
    }

    fn intern(&mut self, key: Vec<u32>) -> u32 {
        let next = self.table.len() as u32;
        *self.table.entry(key).or_insert(next)
    }

    pub fn check(&self, n: usize, k: usize) -> Result<(), GameError> {
        let (max_n, max_k) = match self.logic {
            Logic::Fo => (self.limits.fo_max_n, self.limits.fo_max_k),
            Logic::Mso => (self.limits.mso_max_n.min(63), self.limits.mso_max_k),
        };
        if n > max_n || k > max_k {
            return Err(GameError::TooLarge { n, k, logic: self.logic });
        }
        Ok(())
    }

    fn type_rec(&mut self, g: &Graph, prefix: &mut Vec<M>, r: usize) -> u32 {
        if r == 0 {
            let key = atomic_key(g, prefix);
            return self.intern(key);
        }
        let t0 = self.type_rec(g, prefix, 0);
        let mut kids = Vec::new();
        for v in 0..g.n() {
            prefix.push(M::V(v as u32));
            kids.push(self.type_rec(g, prefix, r - 1));
            prefix.pop();
        }
        // Last-round set moves realise every membership pattern allowed by
        // the equalities among chosen vertices, which `t0` already records.
        if self.logic == Logic::Mso && r > 1 {
            for s in 0..1u64 << g.n() {
                prefix.push(M::S(s));
                kids.push(self.type_rec(g, prefix, r - 1));
                prefix.pop();
            }
        }
        kids.sort_unstable();
        kids.dedup();
        let mut key = Vec::with_capacity(kids.len() + 2);
        key.push(r as u32);
        key.push(t0);
        key.extend(kids);
        self.intern(key)
    }

    fn lower(&self, g: &Graph, moves: &[Move]) -> Vec<M> {
        moves
            .iter()
            .map(|m| match m {
                Move::Vertex(v) => M::V(*v as u32),
                Move::Set(s) => {
                    debug_assert_eq!(s.universe(), g.n());
                    M::S(s.to_mask())
                }
            })
            .collect()
    }

    /// Type id of `g` with `moves` already played and `r` rounds to go.
    pub fn type_id(&mut self, g: &Graph, moves: &[Move], r: usize) -> Result<u32, GameError> {
        self.check(g.n(), r + moves.len())?;
        if self.logic == Logic::Fo && moves.iter().any(|m| matches!(m, Move::Set(_))) {
            return Err(GameError::SetMoveInFo);
        }
        let mut prefix = self.lower(g, moves);
        Ok(self.type_rec(g, &mut prefix, r))
    }

    pub fn solve(&mut self, a: &Graph, b: &Graph, k: usize) -> Result<Winner, GameError> {
        let ta = self.type_id(a, &[], k)?;
        let tb = self.type_id(b, &[], k)?;
        Ok(if ta == tb { Winner::Duplicator } else { Winner::Spoiler })
    }

    /// Value of the game from an arbitrary position.
    pub fn solve_state(&mut self, s: &GameState) -> Result<Winner, GameError> {
        let ta = self.type_id(&s.a, &s.moves_on(Side::Left), s.rounds_left)?;
        let tb = self.type_id(&s.b, &s.moves_on(Side::Right), s.rounds_left)?;
        Ok(if ta == tb { Winner::Duplicator } else { Winner::Spoiler })
    }

    fn candidates(&self, g: &Graph, like: &Move) -> Vec<Move> {
        match like {
            Move::Vertex(_) => (0..g.n()).map(Move::Vertex).collect(),
            Move::Set(_) => (0..1u64 << g.n()).map(|m| Move::Set(VertexSet::from_mask(g.n(), m))).collect(),
        }
    }

    /// Smallest Duplicator reply that keeps a winning position, if any.
    pub fn duplicator_reply(&mut self, s: &GameState, side: Side, spoiler: &Move) -> Result<Option<Move>, GameError> {
        if s.rounds_left == 0 {
            return Err(GameError::NoRoundsLeft);
        }
        let r = s.rounds_left - 1;
        let mut here = s.moves_on(side);
        here.push(spoiler.clone());
        let target = self.type_id(s.graph(side), &here, r)?;
        let other = s.graph(side.other());
        let mut there = s.moves_on(side.other());
        for c in self.candidates(other, spoiler) {
            there.push(c);
            let t = self.type_id(other, &there, r)?;
            let c = there.pop().unwrap();
            if t == target {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// A Spoiler move that Duplicator cannot answer, if one exists.
    pub fn spoiler_winning_move(&mut self, s: &GameState) -> Result<Option<(Side, Move)>, GameError> {
        for side in [Side::Left, Side::Right] {
            let g = s.graph(side).clone();
            let mut moves: Vec<Move> = (0..g.n()).map(Move::Vertex).collect();
            if self.logic == Logic::Mso {
                moves.extend((0..1u64 << g.n()).map(|m| Move::Set(VertexSet::from_mask(g.n(), m))));
            }
            for m in moves {
                if self.duplicator_reply(s, side, &m)?.is_none() {
                    return Ok(Some((side, m)));
                }
            }
        }
        Ok(None)
    }
}
