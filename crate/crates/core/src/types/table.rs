use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::{class_of_types, Axis, PairType, Special, SubsetClass, TypesError, VertexType};
use crate::graph::Rational;

/// Interval of α, or the empty range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaRange {
    Empty,
    Interval { lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool },
}

impl AlphaRange {
    const fn open(lo: Rational, hi: Rational) -> Self {
        AlphaRange::Interval { lo, lo_closed: false, hi, hi_closed: false }
    }

    const fn half(lo: Rational, hi: Rational) -> Self {
        AlphaRange::Interval { lo, lo_closed: true, hi, hi_closed: false }
    }

    pub fn contains(&self, a: Rational) -> bool {
        match *self {
            AlphaRange::Empty => false,
            AlphaRange::Interval { lo, lo_closed, hi, hi_closed } => {
                (if lo_closed { a >= lo } else { a > lo }) && (if hi_closed { a <= hi } else { a < hi })
            }
        }
    }
}

impl fmt::Display for AlphaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaRange::Empty => f.write_str("∅"),
            AlphaRange::Interval { lo, lo_closed, hi, hi_closed } => {
                let end = |r: &Rational| {
                    if r.den() == 1 {
                        alloc::format!("{}", r.num())
                    } else {
                        alloc::format!("{r}")
                    }
                };
                let (l, h) = (if *lo_closed { '[' } else { '(' }, if *hi_closed { ']' } else { ')' });
                write!(f, "{l}{},{}{h}", end(lo), end(hi))
            }
        }
    }
}

/// Row with no special vertex: classes and outside axes of both sides.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub id: &'static str,
    pub x_class: SubsetClass,
    pub xbar_class: SubsetClass,
    pub x_outside: &'static [Axis],
    pub xbar_outside: &'static [Axis],
    pub range: AlphaRange,
}

/// Row with one special vertex `v ∈ X`; `x_outside` lists the other vertices of `X`.
#[derive(Clone, Copy, Debug)]
pub struct SpecialRow {
    pub id: &'static str,
    pub case: Special,
    pub xbar_class: SubsetClass,
    pub x_outside: &'static [Axis],
    pub xbar_outside: &'static [Axis],
    pub range: AlphaRange,
}

use Axis::{Common as C, Dominating as D, Isolated as I};
use SubsetClass::{Common as Cm, Complete as Kc, Dense as Dn, Independent as In, Sparse as Sp};

const Z: Rational = Rational::ZERO;
const ONE: Rational = Rational::ONE;

const fn r(n: i64, d: i64) -> Rational {
    Rational::of(n, d)
}

macro_rules! row {
    ($id:literal, $xc:ident, $bc:ident, [$($xo:ident),*], [$($bo:ident),*], $range:expr) => {
        TableRow { id: $id, x_class: $xc, xbar_class: $bc, x_outside: &[$($xo),*], xbar_outside: &[$($bo),*], range: $range }
    };
}

macro_rules! srow {
    ($id:literal, $case:ident, $bc:ident, [$($xo:ident),*], [$($bo:ident),*], $range:expr) => {
        SpecialRow { id: $id, case: Special::$case, xbar_class: $bc, x_outside: &[$($xo),*], xbar_outside: &[$($bo),*], range: $range }
    };
}

pub const MAIN_TABLE: [TableRow; 26] = [
    row!("1", Kc, Cm, [C], [D, I, C], AlphaRange::open(Z, ONE)),
    row!("2", Kc, Cm, [C], [I, C], AlphaRange::open(Z, ONE)),
    row!("3", Dn, Cm, [C], [D, I, C], AlphaRange::open(Z, r(4, 5))),
    row!("4", Dn, Cm, [C], [I, C], AlphaRange::open(Z, ONE)),
    row!("5", Dn, Cm, [C], [D, C], AlphaRange::open(Z, r(1, 3))),
    row!("6", Dn, Cm, [C], [C], AlphaRange::open(Z, r(1, 2))),
    row!("7", In, Cm, [C], [D, I, C], AlphaRange::open(Z, ONE)),
    row!("8", In, Cm, [C], [I, C], AlphaRange::open(Z, ONE)),
    row!("9", In, Cm, [C], [D, C], AlphaRange::open(Z, r(1, 3))),
    row!("10", In, Cm, [C], [C], AlphaRange::open(Z, ONE)),
    row!("11", In, Sp, [C], [I, C], AlphaRange::half(r(2, 3), ONE)),
    row!("12", In, Sp, [C], [C], AlphaRange::half(r(2, 3), ONE)),
    row!("13", Sp, Sp, [I, C], [I, C], AlphaRange::half(r(1, 2), ONE)),
    row!("14", Sp, Sp, [I, C], [C], AlphaRange::half(r(1, 2), ONE)),
    row!("15", Sp, Sp, [C], [C], AlphaRange::half(r(1, 2), ONE)),
    row!("16", Sp, Cm, [I, C], [I, C], AlphaRange::half(r(1, 2), ONE)),
    row!("17", Sp, Cm, [I, C], [C], AlphaRange::half(r(1, 2), ONE)),
    row!("18", Sp, Cm, [C], [C], AlphaRange::open(Z, ONE)),
    row!("19", Sp, Cm, [C], [I, C], AlphaRange::open(Z, ONE)),
    row!("20", Sp, Cm, [C], [D, C], AlphaRange::open(Z, r(1, 2))),
    row!("21", Sp, Cm, [C], [D, I, C], AlphaRange::open(Z, ONE)),
    row!("22", Cm, Cm, [I, C], [I, C], AlphaRange::half(r(1, 2), ONE)),
    row!("23", Cm, Cm, [C], [C], AlphaRange::open(Z, ONE)),
    row!("24", Cm, Cm, [C], [I, C], AlphaRange::open(Z, ONE)),
    row!("25", Cm, Cm, [C], [D, C], AlphaRange::open(Z, r(1, 2))),
    row!("26", Cm, Cm, [C], [D, I, C], AlphaRange::open(Z, r(5, 6))),
];

pub const SPECIAL_TABLE: [SpecialRow; 8] = [
    srow!("1.1", Case1, Sp, [C, I], [C], AlphaRange::half(r(1, 2), ONE)),
    srow!("1.2", Case1, Sp, [C], [C], AlphaRange::Empty),
    srow!("1.3", Case1, In, [C, I], [C], AlphaRange::half(r(2, 3), ONE)),
    srow!("1.4", Case1, In, [C], [C], AlphaRange::Empty),
    srow!("1.5", Case1, Cm, [C, I], [C], AlphaRange::Empty),
    srow!("1.6", Case1, Cm, [C], [C], AlphaRange::open(Z, r(1, 2))),
    srow!("2.1", Case2, Cm, [C], [C, I], AlphaRange::half(r(1, 2), ONE)),
    srow!("2.2", Case2, Cm, [C], [C], AlphaRange::open(Z, r(1, 2))),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableVerdict {
    AasPresent,
    AasAbsent,
    NotListed,
}

/// A table row together with whether the pair type is listed in it as given (`swapped == false`)
/// or after exchanging `X` and `X̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowRef {
    Main { index: usize, swapped: bool },
    Special { index: usize, swapped: bool },
}

impl RowRef {
    pub fn id(&self) -> &'static str {
        match *self {
            RowRef::Main { index, .. } => MAIN_TABLE[index].id,
            RowRef::Special { index, .. } => SPECIAL_TABLE[index].id,
        }
    }

    pub fn range(&self) -> AlphaRange {
        match *self {
            RowRef::Main { index, .. } => MAIN_TABLE[index].range,
            RowRef::Special { index, .. } => SPECIAL_TABLE[index].range,
        }
    }

    pub fn swapped(&self) -> bool {
        match *self {
            RowRef::Main { swapped, .. } | RowRef::Special { swapped, .. } => swapped,
        }
    }

    pub fn label(&self) -> String {
        alloc::format!("{}{}", self.id(), if self.swapped() { " (swapped)" } else { "" })
    }
}

fn outside(types: &BTreeSet<VertexType>) -> BTreeSet<Axis> {
    types.iter().map(|t| t.outside).collect()
}

fn same(set: &BTreeSet<Axis>, listed: &[Axis]) -> bool {
    set.len() == listed.len() && listed.iter().all(|a| set.contains(a))
}

fn main_row(pt: &PairType) -> Option<usize> {
    let (xc, bc) = (pt.x_class(), pt.xbar_class());
    let (xo, bo) = (outside(&pt.x), outside(&pt.xbar));
    MAIN_TABLE
        .iter()
        .position(|r| r.x_class == xc && r.xbar_class == bc && same(&xo, r.x_outside) && same(&bo, r.xbar_outside))
}

fn special_row(pt: &PairType) -> Option<usize> {
    let marker = match pt.special {
        Special::Case1 => VertexType::new(I, D),
        Special::Case2 => VertexType::new(D, I),
        _ => return None,
    };
    if !pt.x.contains(&marker) {
        return None;
    }
    let mut rest = pt.x.clone();
    rest.remove(&marker);
    let xo = outside(&rest);
    let bo = outside(&pt.xbar);
    let bc = class_of_types(&pt.xbar);
    SPECIAL_TABLE
        .iter()
        .position(|r| r.case == pt.special && r.xbar_class == bc && same(&xo, r.x_outside) && same(&bo, r.xbar_outside))
}

/// The row listing `pt`, trying both orientations of the pair.
pub fn table_row(pt: &PairType) -> Option<RowRef> {
    if !pt.is_consistent() {
        return None;
    }
    let m = pt.mirror();
    match pt.special {
        Special::None => main_row(pt)
            .map(|index| RowRef::Main { index, swapped: false })
            .or_else(|| main_row(&m).map(|index| RowRef::Main { index, swapped: true })),
        Special::Case1 | Special::Case2 => special_row(pt)
            .map(|index| RowRef::Special { index, swapped: false })
            .or_else(|| special_row(&m).map(|index| RowRef::Special { index, swapped: true })),
        Special::Multiple => None,
    }
}

/// Whether `pt` occurs in `G(n, n^{-α})` a.a.s.
///
/// Consistent pair types missing from both tables, including those with
/// several special vertices, are a.a.s. absent. `NotListed` is reserved for
/// pair types no graph can produce.
pub fn table_lookup(pt: &PairType, alpha: Rational) -> Result<TableVerdict, TypesError> {
    if !(alpha > Rational::ZERO && alpha < Rational::ONE) {
        return Err(TypesError::AlphaOutOfRange);
    }
    if !pt.is_consistent() {
        return Ok(TableVerdict::NotListed);
    }
    Ok(match table_row(pt) {
        Some(row) if row.range().contains(alpha) => TableVerdict::AasPresent,
        _ => TableVerdict::AasAbsent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{Graph, VertexSet};
    use crate::types::pair_type;

    fn types(list: &[&str]) -> BTreeSet<VertexType> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn pt(x: &[&str], xbar: &[&str], special: Special) -> PairType {
        PairType { x: types(x), xbar: types(xbar), special }
    }

    #[test]
    fn ranges() {
        assert_eq!(alloc::format!("{}", MAIN_TABLE[2].range), "(0,4/5)");
        assert_eq!(alloc::format!("{}", MAIN_TABLE[10].range), "[2/3,1)");
        assert_eq!(alloc::format!("{}", SPECIAL_TABLE[1].range), "∅");
        let empty = SPECIAL_TABLE.iter().filter(|r| r.range == AlphaRange::Empty).count();
        assert_eq!(empty, 3);
        assert!(MAIN_TABLE[12].range.contains(r(1, 2)));
        assert!(!MAIN_TABLE[12].range.contains(r(49, 100)));
        assert!(!MAIN_TABLE[2].range.contains(r(4, 5)));
    }

    #[test]
    fn row_three_pattern() {
        // Three vertices of an induced K4 minus an edge, in a background with all outside kinds.
        let p = pt(&["DC", "CC"], &["CD", "CI", "CC"], Special::None);
        assert_eq!(table_row(&p).unwrap().id(), "3");
        assert_eq!(table_lookup(&p, r(1, 2)).unwrap(), TableVerdict::AasPresent);
        assert_eq!(table_lookup(&p, r(9, 10)).unwrap(), TableVerdict::AasAbsent);
        assert_eq!(table_lookup(&p.mirror(), r(1, 2)).unwrap(), TableVerdict::AasPresent);
        assert_eq!(table_row(&p.mirror()).unwrap().label(), "3 (swapped)");
        assert_eq!(table_lookup(&p, Rational::ONE), Err(TypesError::AlphaOutOfRange));
        assert_eq!(table_lookup(&p, Rational::ZERO), Err(TypesError::AlphaOutOfRange));
    }

    #[test]
    fn special_case_one_sparse() {
        // v isolated from X, dominating X̄; X̄ sparse.
        let p = pt(&["ID", "CC", "CI"], &["CC", "IC"], Special::Case1);
        assert_eq!(table_row(&p).unwrap().id(), "1.1");
        assert_eq!(table_lookup(&p, r(3, 4)).unwrap(), TableVerdict::AasPresent);
        assert_eq!(table_lookup(&p, r(1, 4)).unwrap(), TableVerdict::AasAbsent);
        // Same pair seen from the other side: v ∈ X̄ shows as "DI" and the flag stays absolute.
        let m = p.mirror();
        assert_eq!(m.special, Special::Case2);
        assert_eq!(table_row(&m).unwrap().id(), "1.1");
    }

    #[test]
    fn small_graph_pairs() {
        let p3 = path(3);
        let x = VertexSet::from_iter(3, [0, 2]);
        assert!(matches!(pair_type(&p3, &x), Err(TypesError::DegenerateSubset { .. })));
        let k3 = complete(3);
        assert!(pair_type(&k3, &VertexSet::from_iter(3, [0, 1])).is_err());
        let k4 = complete(4);
        let q = pair_type(&k4, &VertexSet::from_iter(4, [0, 1])).unwrap();
        assert_eq!(q.x, types(&["DD"]));
        assert_eq!(table_lookup(&q, r(1, 2)).unwrap(), TableVerdict::AasAbsent);
        let e = pair_type(&Graph::empty(4), &VertexSet::from_iter(4, [0, 1])).unwrap();
        assert_eq!(e.x, types(&["II"]));
        assert_eq!(table_row(&e), None);
    }

    #[test]
    fn inconsistent_is_not_listed() {
        let bad = pt(&["DC", "IC"], &["CC"], Special::None);
        assert_eq!(table_lookup(&bad, r(1, 2)).unwrap(), TableVerdict::NotListed);
        let flag = pt(&["ID", "CC"], &["CC"], Special::None);
        assert_eq!(table_lookup(&flag, r(1, 2)).unwrap(), TableVerdict::NotListed);
        // Two non-adjacent vertices of X, both adjacent to all of X̄.
        let multi = pt(&["ID", "IC"], &["CC"], Special::Multiple);
        assert_eq!(table_lookup(&multi, r(1, 2)).unwrap(), TableVerdict::AasAbsent);
    }

    #[test]
    fn every_row_is_reachable_from_its_pattern() {
        for (i, row) in MAIN_TABLE.iter().enumerate() {
            let p = canonical_main(row);
            assert!(p.is_consistent(), "row {}", row.id);
            assert_eq!(table_row(&p), Some(RowRef::Main { index: i, swapped: false }), "row {}", row.id);
        }
        for (i, row) in SPECIAL_TABLE.iter().enumerate() {
            let p = canonical_special(row);
            assert!(p.is_consistent(), "row {}", row.id);
            let got = table_row(&p).unwrap();
            assert_eq!(got, RowRef::Special { index: i, swapped: false }, "row {}", row.id);
            let verdict = table_lookup(&p, r(3, 4)).unwrap();
            assert_eq!(verdict == TableVerdict::AasPresent, row.range.contains(r(3, 4)));
        }
    }

    fn inside_for(class: SubsetClass) -> &'static [Axis] {
        match class {
            SubsetClass::Complete => &[D],
            SubsetClass::Dense => &[D, C],
            SubsetClass::Sparse => &[I, C],
            SubsetClass::Independent => &[I],
            SubsetClass::Common => &[C],
        }
    }

    fn side(class: SubsetClass, outside: &[Axis]) -> BTreeSet<VertexType> {
        let ins = inside_for(class);
        let mut out = BTreeSet::new();
        for (j, &o) in outside.iter().enumerate() {
            out.insert(VertexType::new(ins[j % ins.len()], o));
        }
        for &i in ins {
            if !out.iter().any(|t| t.inside == i) {
                out.insert(VertexType::new(i, outside[0]));
            }
        }
        out
    }

    fn canonical_main(row: &TableRow) -> PairType {
        PairType { x: side(row.x_class, row.x_outside), xbar: side(row.xbar_class, row.xbar_outside), special: Special::None }
    }

    fn canonical_special(row: &SpecialRow) -> PairType {
        let marker = if row.case == Special::Case1 { VertexType::new(I, D) } else { VertexType::new(D, I) };
        let mut x: BTreeSet<VertexType> = row.x_outside.iter().map(|&o| VertexType::new(C, o)).collect();
        x.insert(marker);
        PairType { x, xbar: side(row.xbar_class, row.xbar_outside), special: row.case }
    }
}
