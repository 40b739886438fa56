use core::fmt::{self, Write};

use super::Formula;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        _ => 5,
    }
}

/// `open_tail`: something follows on the right, so a trailing quantifier body must be closed.
fn write_f(out: &mut fmt::Formatter<'_>, f: &Formula, open_tail: bool) -> fmt::Result {
    use Formula::*;
    match f {
        True => out.write_str("true"),
        False => out.write_str("false"),
        Adj(a, b) => write!(out, "{a} ~ {b}"),
        Eq(a, b) => write!(out, "{a} = {b}"),
        Member(s, v) => write!(out, "{s}({v})"),
        Not(a) => {
            out.write_char('!')?;
            if prec(a) < 5 {
                out.write_char('(')?;
                write_f(out, a, false)?;
                out.write_char(')')
            } else {
                write_f(out, a, open_tail)
            }
        }
        ForallV(v, a) | ExistsV(v, a) | ForallS(v, a) | ExistsS(v, a) => {
            if open_tail {
                out.write_char('(')?;
            }
            let q = if matches!(f, ForallV(..) | ForallS(..)) { "forall" } else { "exists" };
            write!(out, "{q} {v} ")?;
            if matches!(**a, ForallV(..) | ExistsV(..) | ForallS(..) | ExistsS(..)) {
                write_f(out, a, false)?;
            } else {
                out.write_char('(')?;
                write_f(out, a, false)?;
                out.write_char(')')?;
            }
            if open_tail {
                out.write_char(')')?;
            }
            Ok(())
        }
        And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
            let p = prec(f);
            let right_assoc = matches!(f, Implies(..));
            let (lp, rp) = (prec(a), prec(b));
            let l_paren = lp < p || (lp == p && right_assoc);
            let r_paren = rp < p || (rp == p && !right_assoc);
            let op = match f {
                And(..) => " & ",
                Or(..) => " | ",
                Implies(..) => " -> ",
                _ => " <-> ",
            };
            wrap(out, a, l_paren, true)?;
            out.write_str(op)?;
            wrap(out, b, r_paren, open_tail)
        }
    }
}

fn wrap(out: &mut fmt::Formatter<'_>, f: &Formula, paren: bool, open_tail: bool) -> fmt::Result {
    if paren {
        out.write_char('(')?;
        write_f(out, f, false)?;
        out.write_char(')')
    } else {
        write_f(out, f, open_tail)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_f(f, self, false)
    }
}
