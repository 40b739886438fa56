use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinName {
    Conn,
    PhiInf,
    PhiFo,
    Fo3_1,
    Fo3_2,
    Fo3_3,
    Fo3_4,
    Fo3_5,
    Fo3_6,
    Mso98,
    Mso56,
    Mso45,
    TriangleFree,
}

use BuiltinName::*;

pub const ALL_BUILTINS: [BuiltinName; 13] =
    [Conn, PhiInf, PhiFo, Fo3_1, Fo3_2, Fo3_3, Fo3_4, Fo3_5, Fo3_6, Mso98, Mso56, Mso45, TriangleFree];

impl BuiltinName {
    pub fn as_str(self) -> &'static str {
        match self {
            Conn => "conn",
            PhiInf => "phi_inf",
            PhiFo => "phi_fo",
            Fo3_1 => "fo3_1",
            Fo3_2 => "fo3_2",
            Fo3_3 => "fo3_3",
            Fo3_4 => "fo3_4",
            Fo3_5 => "fo3_5",
            Fo3_6 => "fo3_6",
            Mso98 => "mso_98",
            Mso56 => "mso_56",
            Mso45 => "mso_45",
            TriangleFree => "triangle_free",
        }
    }

    /// `k` for the forest formulas `fo3_k`.
    pub fn fo3_index(self) -> Option<usize> {
        Some(match self {
            Fo3_1 => 1,
            Fo3_2 => 2,
            Fo3_3 => 3,
            Fo3_4 => 4,
            Fo3_5 => 5,
            Fo3_6 => 6,
            _ => return None,
        })
    }

    /// Source text of the formula, macros expanded.
    pub fn text(self) -> &'static str {
        match self {
            Conn => CONN,
            PhiInf => PHI_INF,
            PhiFo => PHI_FO,
            Fo3_1 => FO3_1,
            Fo3_2 => FO3_2,
            Fo3_3 => FO3_3,
            Fo3_4 => FO3_4,
            Fo3_5 => FO3_5,
            Fo3_6 => FO3_6,
            Mso98 => MSO_98,
            Mso56 => MSO_56,
            Mso45 => MSO_45,
            TriangleFree => TRIANGLE_FREE,
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinName {
    type Err = UnknownBuiltin;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_BUILTINS.into_iter().find(|b| b.as_str() == s).ok_or(UnknownBuiltin)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnknownBuiltin;

impl fmt::Display for UnknownBuiltin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown builtin formula")
    }
}

pub fn builtin(name: BuiltinName) -> Formula {
    parse(name.text()).expect("catalog formulas parse")
}

/// Quantifier depth of each catalog formula as written.
pub fn stated_depth(name: BuiltinName) -> usize {
    match name {
        PhiInf => 4,
        PhiFo => 5,
        Fo3_1 => 2,
        _ => 3,
    }
}

const CONN: &str = "forall X ((exists x1 exists x2 (X(x1) & !X(x2))) -> (exists y exists z (X(y) & !X(z) & y ~ z)))";

const PHI_INF: &str = "exists X ( \
    (exists x1 exists x2 forall x (X(x1) & !X(x2) & ((X(x) & !(x = x1)) <-> (x ~ x1 & x ~ x2)))) \
    & !(exists z forall x (X(x) -> exists v (v ~ z & v ~ x))) \
    & (exists x1 exists x2 exists x3 (X(x1) & X(x2) & X(x3) & x1 ~ x2 & x2 ~ x3 & x1 ~ x3)))";

const PHI_FO: &str = "exists x1 exists x2 ( x1 ~ x2 \
    & !(exists z forall x (((x ~ x1 & x ~ x2) | x = x1) -> exists v (v ~ z & v ~ x))) \
    & (exists y1 exists y2 (x1 ~ y1 & x1 ~ y2 & x2 ~ y1 & x2 ~ y2 & y1 ~ y2)))";

const FO3_1: &str = "exists x1 exists x2 (x1 ~ x2)";

// P2(x, y) := (exists z (x ~ z & y ~ z)) & !(x = y)
const FO3_2: &str = "exists x1 exists x2 ((exists z (x1 ~ z & x2 ~ z)) & !(x1 = x2))";

// S(x) := exists y exists z (x ~ y & x ~ z & !(y = z)), kept outside the scope of x2.
const FO3_3: &str = "exists x1 ((exists y exists z (x1 ~ y & x1 ~ z & !(y = z))) \
    & (exists x2 ((exists z (x1 ~ z & x2 ~ z)) & !(x1 = x2))))";

const FO3_4: &str = "exists x1 ((exists y exists z (x1 ~ y & x1 ~ z & !(y = z))) \
    & (forall x2 exists x3 (x2 ~ x1 -> (x2 ~ x3 & !(x3 = x1)))))";

const FO3_5: &str = "exists x1 ((exists y exists z (x1 ~ y & x1 ~ z & !(y = z))) \
    & (forall x2 exists x3 (x2 ~ x1 -> (x2 ~ x3 & !(x3 = x1)))) \
    & (exists x2 ((exists z (x1 ~ z & x2 ~ z)) & !(x1 = x2) & (exists x3 (!(x3 ~ x1) & x3 ~ x2)))))";

const FO3_6: &str = "exists x1 ((exists y exists z (x1 ~ y & x1 ~ z & !(y = z))) \
    & (forall x2 exists x3 (x2 ~ x1 -> (x2 ~ x3 & !(x3 = x1)))) \
    & (forall x2 (((exists z (x1 ~ z & x2 ~ z)) & !(x1 = x2)) -> (exists x3 (!(x3 ~ x1) & x3 ~ x2)))))";

const MSO_98: &str = "exists X ( \
    (exists x (X(x) & forall y ((X(y) & !(x = y)) -> x ~ y))) \
    & (forall x (X(x) -> exists y (!X(y) & x ~ y))) \
    & (forall y ((!X(y) & (exists x (X(x) & x ~ y))) -> exists z (!X(z) & y ~ z))))";

const MSO_56: &str = "exists X ( \
    (forall x (X(x) -> ((exists y (X(y) & x ~ y)) & (exists y (X(y) & !(x = y) & !(x ~ y)))))) \
    & (exists z (!X(z) & forall x (X(x) -> z ~ x))))";

const MSO_45: &str = "exists X ( \
    (exists x (X(x) & forall y ((X(y) & !(x = y)) -> x ~ y))) \
    & (exists x exists y (X(x) & X(y) & !(x = y) & !(x ~ y))) \
    & (exists z (!X(z) & forall x (X(x) -> z ~ x))))";

const TRIANGLE_FREE: &str = "!(exists x exists y exists z (x ~ y & y ~ z & x ~ z))";

#[cfg(test)]
mod tests {
    use super::super::{is_mso, is_sentence, quantifier_depth};
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn all_parse_with_expected_depth() {
        for b in ALL_BUILTINS {
            let f = builtin(b);
            assert!(is_sentence(&f), "{b}");
            assert_eq!(quantifier_depth(&f), stated_depth(b), "{b}");
            assert_eq!(b.as_str().parse::<BuiltinName>(), Ok(b));
            assert_eq!(super::super::parse(&f.to_string()).unwrap(), f, "{b}");
        }
    }

    #[test]
    fn mso_flags() {
        assert!(is_mso(&builtin(Conn)));
        assert!(!is_mso(&builtin(Fo3_4)));
        assert!(!is_mso(&builtin(PhiFo)));
        assert!(is_mso(&builtin(Mso45)));
    }

    #[test]
    fn fo3_1_matches_plain_text() {
        assert_eq!(builtin(Fo3_1), parse("exists x1 exists x2 (x1 ~ x2)").unwrap());
    }

    #[test]
    fn macros_expand_as_defined() {
        // P2(x1, x2) and S(x1) built by hand.
        let p2 = Formula::exists("z", Formula::adj("x1", "z").and(Formula::adj("x2", "z")))
            .and(Formula::eq("x1", "x2").not());
        assert_eq!(builtin(Fo3_2), Formula::exists("x1", Formula::exists("x2", p2.clone())));
        let s = Formula::exists(
            "y",
            Formula::exists("z", Formula::adj("x1", "y").and(Formula::adj("x1", "z")).and(Formula::eq("y", "z").not())),
        );
        assert_eq!(builtin(Fo3_3), Formula::exists("x1", s.and(Formula::exists("x2", p2))));
    }
}
