//! Vertex types, subset classes and pair types of `(X, X̄)`, with the α-range tables.

mod table;
mod witness;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{Graph, VertexSet};

pub use table::{
    table_lookup, table_row, AlphaRange, RowRef, SpecialRow, TableRow, TableVerdict, MAIN_TABLE, SPECIAL_TABLE,
};
pub use witness::{enumerate_pair_types, find_witness, sample_pair_types, ENUMERATE_CAP};

/// Adjacency of a vertex to a comparison set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Dominating,
    Common,
    Isolated,
}

impl Axis {
    pub fn letter(self) -> char {
        match self {
            Axis::Dominating => 'D',
            Axis::Common => 'C',
            Axis::Isolated => 'I',
        }
    }

    fn from_letter(c: char) -> Option<Axis> {
        Some(match c {
            'D' => Axis::Dominating,
            'C' => Axis::Common,
            'I' => Axis::Isolated,
            _ => return None,
        })
    }

    /// `hits` neighbours among `size` candidates; an empty set reads as isolated.
    pub(crate) fn of(hits: usize, size: usize) -> Axis {
        if hits == 0 {
            Axis::Isolated
        } else if hits == size {
            Axis::Dominating
        } else {
            Axis::Common
        }
    }
}

/// Inside axis (own side without the vertex) and outside axis (other side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexType {
    pub inside: Axis,
    pub outside: Axis,
}

impl VertexType {
    pub const fn new(inside: Axis, outside: Axis) -> Self {
        VertexType { inside, outside }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.inside.letter(), self.outside.letter())
    }
}

impl FromStr for VertexType {
    type Err = TypesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.chars();
        match (it.next().and_then(Axis::from_letter), it.next().and_then(Axis::from_letter), it.next()) {
            (Some(i), Some(o), None) => Ok(VertexType::new(i, o)),
            _ => Err(TypesError::BadTypeString(s.into())),
        }
    }
}

impl Serialize for VertexType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetClass {
    Complete,
    Dense,
    Sparse,
    Independent,
    Common,
}

/// Special-vertex flag of a pair.
///
/// `Case1`: some vertex has no neighbour in `X` and is adjacent to all of
/// `X̄` (itself excluded); `Case2` is the same with `X`, `X̄` swapped.
/// `Multiple` marks more than one special vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Special {
    None,
    Case1,
    Case2,
    Multiple,
}

impl Special {
    pub fn mirror(self) -> Special {
        match self {
            Special::Case1 => Special::Case2,
            Special::Case2 => Special::Case1,
            s => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairType {
    pub x: BTreeSet<VertexType>,
    pub xbar: BTreeSet<VertexType>,
    pub special: Special,
}

/// Class of a side of size at least two from the inside axes present on it.
pub fn class_of_types(types: &BTreeSet<VertexType>) -> SubsetClass {
    let all = |a: Axis| types.iter().all(|t| t.inside == a);
    let any = |a: Axis| types.iter().any(|t| t.inside == a);
    if all(Axis::Dominating) {
        SubsetClass::Complete
    } else if all(Axis::Isolated) {
        SubsetClass::Independent
    } else if any(Axis::Dominating) {
        SubsetClass::Dense
    } else if any(Axis::Isolated) {
        SubsetClass::Sparse
    } else {
        SubsetClass::Common
    }
}

impl PairType {
    pub fn mirror(&self) -> PairType {
        PairType { x: self.xbar.clone(), xbar: self.x.clone(), special: self.special.mirror() }
    }

    pub fn x_class(&self) -> SubsetClass {
        class_of_types(&self.x)
    }

    pub fn xbar_class(&self) -> SubsetClass {
        class_of_types(&self.xbar)
    }

    /// Equal as given or after swapping the two sides.
    pub fn matches_up_to_swap(&self, other: &PairType) -> bool {
        self == other || *self == other.mirror()
    }

    /// Both sides occupied, no side mixes inside-dominating with
    /// inside-isolated vertices, and the flag agrees with the listed types.
    pub fn is_consistent(&self) -> bool {
        use Axis::*;
        let mixed = |s: &BTreeSet<VertexType>| {
            s.iter().any(|t| t.inside == Dominating) && s.iter().any(|t| t.inside == Isolated)
        };
        if self.x.is_empty() || self.xbar.is_empty() || mixed(&self.x) || mixed(&self.xbar) {
            return false;
        }
        let id = VertexType::new(Isolated, Dominating);
        let di = VertexType::new(Dominating, Isolated);
        let case1 = self.x.contains(&id) || self.xbar.contains(&di);
        let case2 = self.x.contains(&di) || self.xbar.contains(&id);
        match self.special {
            Special::None => !case1 && !case2,
            Special::Case1 => case1 && !case2,
            Special::Case2 => case2 && !case1,
            Special::Multiple => case1 || case2,
        }
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &BTreeSet<VertexType>| s.iter().map(|t| alloc::format!("{t}")).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}} | {{{}}} special={:?}", side(&self.x), side(&self.xbar), self.special)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypesError {
    VertexOutOfRange { v: usize, n: usize },
    EmptySubset,
    DegenerateSubset { size: usize, complement: usize },
    AlphaOutOfRange,
    TooLarge { n: usize, cap: usize },
    BadTypeString(String),
}

impl fmt::Display for TypesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypesError::VertexOutOfRange { v, n } => write!(f, "VertexOutOfRange: {v} not below {n}"),
            TypesError::EmptySubset => f.write_str("EmptySubset"),
            TypesError::DegenerateSubset { size, complement } => {
                write!(f, "DegenerateSubset: |X| = {size}, |X̄| = {complement}")
            }
            TypesError::AlphaOutOfRange => f.write_str("AlphaOutOfRange: alpha must lie in (0,1)"),
            TypesError::TooLarge { n, cap } => write!(f, "TooLarge: n = {n} exceeds {cap}"),
            TypesError::BadTypeString(s) => write!(f, "BadTypeString: {s:?}"),
        }
    }
}

impl core::error::Error for TypesError {}

fn check_set(g: &Graph, x: &VertexSet) -> VertexSet {
    if x.universe() == g.n() {
        x.clone()
    } else {
        VertexSet::from_iter(g.n(), x.iter().filter(|&v| v < g.n()))
    }
}

/// Type of `v` relative to its own side (inside, `v` excluded) and the other side.
pub fn classify_vertex(g: &Graph, x: &VertexSet, v: usize) -> Result<VertexType, TypesError> {
    let n = g.n();
    if v >= n {
        return Err(TypesError::VertexOutOfRange { v, n });
    }
    let x = check_set(g, x);
    let in_x = g.degree_in(v, &x);
    let xs = x.len();
    let total = g.degree(v);
    let (own_hits, own_size, other_hits, other_size) =
        if x.contains(v) { (in_x, xs - 1, total - in_x, n - xs) } else { (total - in_x, n - xs - 1, in_x, xs) };
    Ok(VertexType::new(Axis::of(own_hits, own_size), Axis::of(other_hits, other_size)))
}

pub fn subset_class(g: &Graph, x: &VertexSet) -> Result<SubsetClass, TypesError> {
    let x = check_set(g, x);
    if x.is_empty() {
        return Err(TypesError::EmptySubset);
    }
    let k = x.len();
    let inner: usize = x.iter().map(|v| g.degree_in(v, &x)).sum::<usize>() / 2;
    if inner == 0 {
        return Ok(SubsetClass::Independent);
    }
    if inner == k * (k - 1) / 2 {
        return Ok(SubsetClass::Complete);
    }
    let types: BTreeSet<VertexType> = x.iter().map(|v| classify_vertex(g, &x, v).unwrap()).collect();
    Ok(class_of_types(&types))
}

fn nondegenerate(g: &Graph, x: &VertexSet) -> Result<VertexSet, TypesError> {
    let x = check_set(g, x);
    let (size, complement) = (x.len(), g.n() - x.len());
    if size < 2 || complement < 2 {
        return Err(TypesError::DegenerateSubset { size, complement });
    }
    Ok(x)
}

/// Vertices with no neighbour on one side and adjacent to all of the other.
pub fn special_vertices(g: &Graph, x: &VertexSet) -> Result<Vec<(usize, Special)>, TypesError> {
    let x = nondegenerate(g, x)?;
    let mut out = Vec::new();
    for v in 0..g.n() {
        let t = classify_vertex(g, &x, v)?;
        let (to_x, to_xbar) = if x.contains(v) { (t.inside, t.outside) } else { (t.outside, t.inside) };
        match (to_x, to_xbar) {
            (Axis::Isolated, Axis::Dominating) => out.push((v, Special::Case1)),
            (Axis::Dominating, Axis::Isolated) => out.push((v, Special::Case2)),
            _ => {}
        }
    }
    Ok(out)
}

pub fn pair_type(g: &Graph, x: &VertexSet) -> Result<PairType, TypesError> {
    let x = nondegenerate(g, x)?;
    let mut pt = PairType { x: BTreeSet::new(), xbar: BTreeSet::new(), special: Special::None };
    for v in 0..g.n() {
        let t = classify_vertex(g, &x, v)?;
        if x.contains(v) {
            pt.x.insert(t);
        } else {
            pt.xbar.insert(t);
        }
    }
    let sp = special_vertices(g, &x)?;
    pt.special = match sp.as_slice() {
        [] => Special::None,
        [(_, c)] => *c,
        _ => Special::Multiple,
    };
    Ok(pt)
}

fn axis_index(a: Axis) -> u32 {
    match a {
        Axis::Dominating => 0,
        Axis::Common => 1,
        Axis::Isolated => 2,
    }
}

const AXES: [Axis; 3] = [Axis::Dominating, Axis::Common, Axis::Isolated];

/// Packed pair type for `n <= 64` with `X` as a bit mask; no validation.
///
/// Bits 0..9 hold the types on `X`, 9..18 those on `X̄`, 18..20 the flag.
pub(crate) fn pair_code_mask(g: &Graph, x: u64) -> u32 {
    let n = g.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let xb = full & !x;
    let (xs, xbs) = (x.count_ones() as usize, xb.count_ones() as usize);
    let mut code = 0u32;
    let mut specials = 0;
    let mut last = 0u32;
    for v in 0..n {
        let row = g.mask(v);
        let hx = (row & x).count_ones() as usize;
        let hb = (row & xb).count_ones() as usize;
        let (to_x, to_xbar, shift) = if x >> v & 1 == 1 {
            let (a, b) = (Axis::of(hx, xs - 1), Axis::of(hb, xbs));
            (a, b, axis_index(a) * 3 + axis_index(b))
        } else {
            let (a, b) = (Axis::of(hx, xs), Axis::of(hb, xbs - 1));
            (a, b, 9 + axis_index(b) * 3 + axis_index(a))
        };
        code |= 1 << shift;
        match (to_x, to_xbar) {
            (Axis::Isolated, Axis::Dominating) => {
                specials += 1;
                last = 1;
            }
            (Axis::Dominating, Axis::Isolated) => {
                specials += 1;
                last = 2;
            }
            _ => {}
        }
    }
    code | (if specials > 1 { 3 } else if specials == 1 { last } else { 0 }) << 18
}

pub(crate) fn decode_pair_code(code: u32) -> PairType {
    let side = |base: u32| {
        (0..9).filter(|i| code >> (base + i) & 1 == 1).map(|i| VertexType::new(AXES[i as usize / 3], AXES[i as usize % 3])).collect()
    };
    let special = match code >> 18 {
        0 => Special::None,
        1 => Special::Case1,
        2 => Special::Case2,
        _ => Special::Multiple,
    };
    PairType { x: side(0), xbar: side(9), special }
}

#[cfg(test)]
pub(crate) fn pair_type_mask(g: &Graph, x: u64) -> PairType {
    decode_pair_code(pair_code_mask(g, x))
}
