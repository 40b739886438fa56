//! FO/MSO formulas over `{~, =, membership}`: AST, parser, printer, catalog.

mod catalog;
mod parse;
mod print;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

pub use catalog::{builtin, stated_depth, BuiltinName, UnknownBuiltin, ALL_BUILTINS};
pub use parse::{parse, parse_open, parse_spanned, ParseError, Span};

/// Formula AST. Lowercase names are vertex variables, capitalised names set variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Adj(String, String),
    Eq(String, String),
    Member(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForallV(String, Box<Formula>),
    ExistsV(String, Box<Formula>),
    ForallS(String, Box<Formula>),
    ExistsS(String, Box<Formula>),
}

impl Formula {
    pub fn adj(a: &str, b: &str) -> Self {
        Formula::Adj(a.into(), b.into())
    }

    pub fn eq(a: &str, b: &str) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn member(s: &str, v: &str) -> Self {
        Formula::Member(s.into(), v.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, o: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(o))
    }

    pub fn or(self, o: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(o))
    }

    pub fn implies(self, o: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(o))
    }

    pub fn iff(self, o: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(o))
    }

    pub fn forall(v: &str, body: Formula) -> Self {
        if is_set_name(v) {
            Formula::ForallS(v.into(), Box::new(body))
        } else {
            Formula::ForallV(v.into(), Box::new(body))
        }
    }

    pub fn exists(v: &str, body: Formula) -> Self {
        if is_set_name(v) {
            Formula::ExistsS(v.into(), Box::new(body))
        } else {
            Formula::ExistsV(v.into(), Box::new(body))
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Adj(..) | Eq(..) | Member(..) => Vec::new(),
            Not(a) | ForallV(_, a) | ExistsV(_, a) | ForallS(_, a) | ExistsS(_, a) => alloc::vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => alloc::vec![a, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().into_iter().map(Formula::node_count).sum::<usize>()
    }
}

pub fn is_set_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// Longest chain of nested quantifiers.
pub fn quantifier_depth(phi: &Formula) -> usize {
    use Formula::*;
    match phi {
        ForallV(_, a) | ExistsV(_, a) | ForallS(_, a) | ExistsS(_, a) => 1 + quantifier_depth(a),
        _ => phi.children().into_iter().map(quantifier_depth).max().unwrap_or(0),
    }
}

/// True iff the formula has a set quantifier or a membership atom.
pub fn is_mso(phi: &Formula) -> bool {
    use Formula::*;
    match phi {
        ForallS(..) | ExistsS(..) | Member(..) => true,
        _ => phi.children().into_iter().any(is_mso),
    }
}

/// Free vertex and set variables.
pub fn free_variables(phi: &Formula) -> (BTreeSet<String>, BTreeSet<String>) {
    fn go(f: &Formula, bound: &mut Vec<String>, fv: &mut BTreeSet<String>, fs: &mut BTreeSet<String>) {
        use Formula::*;
        let note = |v: &String, set: bool, fv: &mut BTreeSet<String>, fs: &mut BTreeSet<String>| {
            if !bound.contains(v) {
                if set { fs.insert(v.clone()) } else { fv.insert(v.clone()) };
            }
        };
        match f {
            True | False => {}
            Adj(a, b) | Eq(a, b) => {
                note(a, false, fv, fs);
                note(b, false, fv, fs);
            }
            Member(s, v) => {
                note(s, true, fv, fs);
                note(v, false, fv, fs);
            }
            ForallV(v, a) | ExistsV(v, a) | ForallS(v, a) | ExistsS(v, a) => {
                bound.push(v.clone());
                go(a, bound, fv, fs);
                bound.pop();
            }
            _ => {
                for c in f.children() {
                    go(c, bound, fv, fs);
                }
            }
        }
    }
    let (mut fv, mut fs) = (BTreeSet::new(), BTreeSet::new());
    go(phi, &mut Vec::new(), &mut fv, &mut fs);
    (fv, fs)
}

pub fn is_sentence(phi: &Formula) -> bool {
    let (v, s) = free_variables(phi);
    v.is_empty() && s.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_of_atoms_and_nesting() {
        assert_eq!(quantifier_depth(&Formula::adj("x", "y")), 0);
        let f = Formula::exists("x", Formula::adj("x", "y")).and(Formula::forall("y", Formula::exists("z", Formula::True)));
        assert_eq!(quantifier_depth(&f), 2);
    }

    #[test]
    fn free_vars() {
        let f = Formula::exists("x", Formula::adj("x", "y").and(Formula::member("X", "x")));
        let (v, s) = free_variables(&f);
        assert_eq!(v.into_iter().collect::<Vec<_>>(), ["y"]);
        assert_eq!(s.into_iter().collect::<Vec<_>>(), ["X"]);
        assert!(!is_sentence(&f));
        assert!(is_mso(&f));
        assert!(!is_mso(&Formula::adj("a", "b")));
    }
}
