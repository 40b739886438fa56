use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{is_set_name, Formula};

/// Byte range `[start, end)` in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    SyntaxError { position: usize, expected: Vec<&'static str> },
    UnboundVariable(String),
    Shadowing(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::SyntaxError { position, expected } => {
                write!(f, "SyntaxError at byte {position}: expected one of {}", expected.join(", "))
            }
            ParseError::UnboundVariable(v) => write!(f, "UnboundVariable: {v}"),
            ParseError::Shadowing(v) => write!(f, "Shadowing: {v} is already bound"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    True,
    False,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Adj,
    Eq,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            match &text[start..i] {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "true" => Tok::True,
                "false" => Tok::False,
                w => Tok::Ident(w.to_string()),
            }
        } else {
            let (t, len) = match c {
                b'!' => (Tok::Not, 1),
                b'&' => (Tok::And, 1),
                b'|' => (Tok::Or, 1),
                b'~' => (Tok::Adj, 1),
                b'=' => (Tok::Eq, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'-' if b.get(i + 1) == Some(&b'>') => (Tok::Imp, 2),
                b'<' if b.get(i + 1) == Some(&b'-') && b.get(i + 2) == Some(&b'>') => (Tok::Iff, 3),
                _ => {
                    return Err(ParseError::SyntaxError {
                        position: i,
                        expected: alloc::vec!["identifier", "operator", "parenthesis"],
                    })
                }
            };
            i += len;
            t
        };
        out.push((tok, Span { start, end: i }));
    }
    out.push((Tok::End, Span { start: b.len(), end: b.len() }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    bound: Vec<String>,
    // Preorder list of node spans, filled as nodes complete.
    spans: Vec<(usize, Span)>,
    counter: usize,
}

type Node = (Formula, Span, usize);

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError { position: self.here().start, expected: expected.to_vec() })
    }

    fn expect(&mut self, t: Tok, name: &'static str) -> Result<Span, ParseError> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.fail(&[name])
        }
    }

    fn reserve(&mut self) -> usize {
        self.counter += 1;
        self.counter - 1
    }

    fn finish(&mut self, slot: usize, f: Formula, span: Span) -> Node {
        self.spans.push((slot, span));
        (f, span, slot)
    }

    fn formula(&mut self) -> Result<Node, ParseError> {
        self.iff()
    }

    // Binary chains: the node slot is reserved before its operands so spans stay preorder.
    fn iff(&mut self) -> Result<Node, ParseError> {
        let mark = self.counter;
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            lhs = self.combine(mark, lhs, rhs, Formula::Iff);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Node, ParseError> {
        let mark = self.counter;
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(self.combine(mark, lhs, rhs, Formula::Implies));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Node, ParseError> {
        let mark = self.counter;
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = self.combine(mark, lhs, rhs, Formula::Or);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Node, ParseError> {
        let mark = self.counter;
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = self.combine(mark, lhs, rhs, Formula::And);
        }
        Ok(lhs)
    }

    /// Builds a binary node whose preorder slot precedes everything parsed since `mark`.
    fn combine(
        &mut self,
        mark: usize,
        lhs: Node,
        rhs: Node,
        mk: fn(Box<Formula>, Box<Formula>) -> Formula,
    ) -> Node {
        for (slot, _) in self.spans.iter_mut() {
            if *slot >= mark {
                *slot += 1;
            }
        }
        self.counter += 1;
        let span = Span { start: lhs.1.start, end: rhs.1.end };
        self.spans.push((mark, span));
        (mk(Box::new(lhs.0), Box::new(rhs.0)), span, mark)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let start = self.here();
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                let slot = self.reserve();
                let (inner, sp, _) = self.unary()?;
                Ok(self.finish(slot, Formula::Not(Box::new(inner)), Span { start: start.start, end: sp.end }))
            }
            Tok::Forall | Tok::Exists => {
                let (q, _) = self.bump();
                let slot = self.reserve();
                let name = match self.bump() {
                    (Tok::Ident(v), _) => v,
                    _ => {
                        self.pos -= 1;
                        return self.fail(&["identifier"]);
                    }
                };
                if self.bound.contains(&name) {
                    return Err(ParseError::Shadowing(name));
                }
                self.bound.push(name.clone());
                let (body, sp, _) = self.formula()?;
                self.bound.pop();
                let f = if q == Tok::Forall { Formula::forall(&name, body) } else { Formula::exists(&name, body) };
                Ok(self.finish(slot, f, Span { start: start.start, end: sp.end }))
            }
            Tok::LParen => {
                self.bump();
                let (f, _, slot) = self.formula()?;
                let close = self.expect(Tok::RParen, ")")?;
                let span = Span { start: start.start, end: close.end };
                if let Some(e) = self.spans.iter_mut().find(|(s, _)| *s == slot) {
                    e.1 = span;
                }
                Ok((f, span, slot))
            }
            Tok::True | Tok::False => {
                let (t, sp) = self.bump();
                let slot = self.reserve();
                Ok(self.finish(slot, if t == Tok::True { Formula::True } else { Formula::False }, sp))
            }
            Tok::Ident(name) => {
                self.bump();
                let slot = self.reserve();
                if is_set_name(&name) {
                    self.expect(Tok::LParen, "(")?;
                    let v = self.vertex_var()?;
                    let close = self.expect(Tok::RParen, ")")?;
                    self.check_bound(&name)?;
                    return Ok(self.finish(slot, Formula::Member(name, v), Span { start: start.start, end: close.end }));
                }
                self.check_bound(&name)?;
                let op = self.peek().clone();
                if op != Tok::Adj && op != Tok::Eq {
                    return self.fail(&["~", "="]);
                }
                self.bump();
                let end = self.here().end;
                let w = self.vertex_var()?;
                let f = if op == Tok::Adj { Formula::Adj(name, w) } else { Formula::Eq(name, w) };
                Ok(self.finish(slot, f, Span { start: start.start, end }))
            }
            _ => self.fail(&["!", "forall", "exists", "(", "identifier", "true", "false"]),
        }
    }

    fn vertex_var(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(v) if !is_set_name(&v) => {
                self.bump();
                self.check_bound(&v)?;
                Ok(v)
            }
            _ => self.fail(&["vertex variable"]),
        }
    }

    fn check_bound(&self, v: &str) -> Result<(), ParseError> {
        if self.bound.iter().any(|b| b == v) {
            Ok(())
        } else {
            Err(ParseError::UnboundVariable(v.to_string()))
        }
    }
}

/// Parses a formula with the given free variables; spans are in preorder.
pub fn parse_spanned(text: &str, free: &[&str]) -> Result<(Formula, Vec<Span>), ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        bound: free.iter().map(|s| s.to_string()).collect(),
        spans: Vec::new(),
        counter: 0,
    };
    let (f, _, _) = p.formula()?;
    if *p.peek() != Tok::End {
        return p.fail(&["end of input", "&", "|", "->", "<->"]);
    }
    p.spans.sort_by_key(|&(slot, _)| slot);
    Ok((f, p.spans.into_iter().map(|(_, s)| s).collect()))
}

/// Parses a formula whose free variables must be among `free`.
pub fn parse_open(text: &str, free: &[&str]) -> Result<Formula, ParseError> {
    parse_spanned(text, free).map(|r| r.0)
}

/// Parses a sentence: every variable must be bound.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_open(text, &[])
}
