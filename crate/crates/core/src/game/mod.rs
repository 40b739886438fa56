//! Ehrenfeucht games EHR(A, B, k) for FO and MSO.
//!
//! The solver computes rank-`k` Hintikka types bottom-up and interns them in a
//! table shared by both graphs; Duplicator wins from a position iff both sides
//! have the same type.

mod solver;

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

pub use solver::{Limits, Solver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    Fo,
    Mso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    Spoiler,
    Duplicator,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Spoiler => "Spoiler",
            Winner::Duplicator => "Duplicator",
        })
    }
}

/// Which graph a move is made in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Vertex(usize),
    Set(VertexSet),
}

impl Move {
    fn same_kind(&self, o: &Move) -> bool {
        matches!((self, o), (Move::Vertex(_), Move::Vertex(_)) | (Move::Set(_), Move::Set(_)))
    }
}

/// One played round: the move in `A` and the move in `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Round {
    VertexPair(usize, usize),
    SetPair(VertexSet, VertexSet),
}

impl Round {
    pub fn left(&self) -> Move {
        match self {
            Round::VertexPair(x, _) => Move::Vertex(*x),
            Round::SetPair(x, _) => Move::Set(x.clone()),
        }
    }

    pub fn right(&self) -> Move {
        match self {
            Round::VertexPair(_, y) => Move::Vertex(*y),
            Round::SetPair(_, y) => Move::Set(y.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameError {
    NonTerminal,
    NoRoundsLeft,
    KindMismatch,
    SetMoveInFo,
    IllegalMove,
    TooLarge { n: usize, k: usize, logic: Logic },
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::NonTerminal => f.write_str("NonTerminal: rounds remain"),
            GameError::NoRoundsLeft => f.write_str("NoRoundsLeft"),
            GameError::KindMismatch => f.write_str("KindMismatch: reply kind differs from Spoiler's move"),
            GameError::SetMoveInFo => f.write_str("SetMoveInFo: set moves need the MSO game"),
            GameError::IllegalMove => f.write_str("IllegalMove: vertex or set outside the graph"),
            GameError::TooLarge { n, k, logic } => write!(f, "TooLarge: n = {n}, k = {k} for {logic:?}"),
        }
    }
}

impl core::error::Error for GameError {}

#[derive(Clone, Debug)]
pub struct GameState {
    pub a: Graph,
    pub b: Graph,
    pub logic: Logic,
    pub history: Vec<Round>,
    pub rounds_left: usize,
}

impl GameState {
    pub fn new(a: Graph, b: Graph, k: usize, logic: Logic) -> Self {
        GameState { a, b, logic, history: Vec::new(), rounds_left: k }
    }

    pub fn graph(&self, side: Side) -> &Graph {
        match side {
            Side::Left => &self.a,
            Side::Right => &self.b,
        }
    }

    pub fn moves_on(&self, side: Side) -> Vec<Move> {
        self.history.iter().map(|r| if side == Side::Left { r.left() } else { r.right() }).collect()
    }

    fn check_move(&self, side: Side, m: &Move) -> Result<(), GameError> {
        let n = self.graph(side).n();
        match m {
            Move::Vertex(v) if *v < n => Ok(()),
            Move::Set(s) if self.logic == Logic::Fo => {
                let _ = s;
                Err(GameError::SetMoveInFo)
            }
            Move::Set(s) if s.universe() == n => Ok(()),
            _ => Err(GameError::IllegalMove),
        }
    }
}

/// All moves available in graph `side`: every vertex, plus every subset for MSO.
pub fn legal_moves(s: &GameState, side: Side) -> Result<Vec<Move>, GameError> {
    if s.rounds_left == 0 {
        return Err(GameError::NoRoundsLeft);
    }
    let n = s.graph(side).n();
    let mut out: Vec<Move> = (0..n).map(Move::Vertex).collect();
    if s.logic == Logic::Mso {
        assert!(n < 64, "subset listing needs n < 64");
        out.extend((0..1u64 << n).map(|m| Move::Set(VertexSet::from_mask(n, m))));
    }
    Ok(out)
}

/// Spoiler plays `spoiler_move` in `side`, Duplicator answers in the other graph.
pub fn apply_move(s: &GameState, side: Side, spoiler_move: Move, duplicator_move: Move) -> Result<GameState, GameError> {
    if s.rounds_left == 0 {
        return Err(GameError::NoRoundsLeft);
    }
    if !spoiler_move.same_kind(&duplicator_move) {
        return Err(GameError::KindMismatch);
    }
    s.check_move(side, &spoiler_move)?;
    s.check_move(side.other(), &duplicator_move)?;
    let (in_a, in_b) = if side == Side::Left { (spoiler_move, duplicator_move) } else { (duplicator_move, spoiler_move) };
    let round = match (in_a, in_b) {
        (Move::Vertex(x), Move::Vertex(y)) => Round::VertexPair(x, y),
        (Move::Set(x), Move::Set(y)) => Round::SetPair(x, y),
        _ => unreachable!(),
    };
    let mut next = s.clone();
    next.history.push(round);
    next.rounds_left -= 1;
    Ok(next)
}

/// Chosen vertices span a partial isomorphism that respects all chosen sets.
pub fn partial_iso(a: &Graph, b: &Graph, history: &[Round]) -> bool {
    let verts: Vec<(usize, usize)> =
        history.iter().filter_map(|r| if let Round::VertexPair(x, y) = r { Some((*x, *y)) } else { None }).collect();
    for (i, &(x1, y1)) in verts.iter().enumerate() {
        for &(x2, y2) in &verts[..i] {
            if (x1 == x2) != (y1 == y2) || a.has_edge(x1, x2) != b.has_edge(y1, y2) {
                return false;
            }
        }
    }
    history.iter().all(|r| match r {
        Round::SetPair(xs, ys) => verts.iter().all(|&(x, y)| xs.contains(x) == ys.contains(y)),
        Round::VertexPair(..) => true,
    })
}

pub fn duplicator_wins_final(s: &GameState) -> Result<bool, GameError> {
    if s.rounds_left != 0 {
        return Err(GameError::NonTerminal);
    }
    Ok(partial_iso(&s.a, &s.b, &s.history))
}

/// Value of EHR(A, B, k) under the default size limits.
pub fn solve(a: &Graph, b: &Graph, k: usize, logic: Logic) -> Result<Winner, GameError> {
    Solver::new(logic, Limits::default()).solve(a, b, k)
}
