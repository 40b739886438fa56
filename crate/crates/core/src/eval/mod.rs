//! Model checking of FO/MSO formulas and structural oracles for the catalog.

mod oracle;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::logic::Formula;

pub use oracle::{
    has_bowtie, has_diamond, has_induced_diamond, has_path_with, has_triangle, longest_path_vertices, oracle,
    tree_component_present,
};

/// Default bound on `n` for formulas with set quantifiers.
pub const MSO_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(String),
    GraphTooLargeForMSO { n: usize, cap: usize },
    VertexOutOfRange { v: usize, n: usize },
    NotAForest,
    NoOracle(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(v) => write!(f, "UnboundVariable: {v}"),
            EvalError::GraphTooLargeForMSO { n, cap } => write!(f, "GraphTooLargeForMSO: n = {n} exceeds cap {cap}"),
            EvalError::VertexOutOfRange { v, n } => write!(f, "VertexOutOfRange: {v} not below {n}"),
            EvalError::NotAForest => f.write_str("NotAForest"),
            EvalError::NoOracle(b) => write!(f, "NoOracle: {b}"),
        }
    }
}

impl From<GraphError> for EvalError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotAForest | GraphError::NotATree => EvalError::NotAForest,
            GraphError::VertexOutOfRange { v, n } => EvalError::VertexOutOfRange { v, n },
            other => EvalError::NoOracle(alloc::format!("{other}")),
        }
    }
}

/// Interpretation of free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub vertices: BTreeMap<String, usize>,
    pub sets: BTreeMap<String, VertexSet>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertex(mut self, name: &str, v: usize) -> Self {
        self.vertices.insert(name.into(), v);
        self
    }

    pub fn with_set(mut self, name: &str, s: VertexSet) -> Self {
        self.sets.insert(name.into(), s);
        self
    }
}

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Adj(u16, u16),
    Eq(u16, u16),
    Mem(u16, u16),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    ForallV(u16, Box<Node>),
    ExistsV(u16, Box<Node>),
    ForallS(u16, Box<Node>),
    ExistsS(u16, Box<Node>),
}

/// A formula with variables resolved to slots, reusable across graphs.
#[derive(Clone, Debug)]
pub struct Compiled {
    root: Node,
    free_vertices: Vec<String>,
    free_sets: Vec<String>,
    vertex_slots: usize,
    set_slots: usize,
    has_set_quantifier: bool,
    mso_cap: usize,
}

struct Scope<'a> {
    vs: Vec<&'a str>,
    ss: Vec<&'a str>,
    max_v: usize,
    max_s: usize,
    set_q: bool,
}

fn lookup(stack: &[&str], name: &str) -> Result<u16, EvalError> {
    stack.iter().rposition(|s| *s == name).map(|i| i as u16).ok_or_else(|| EvalError::UnboundVariable(name.into()))
}

fn compile<'a>(f: &'a Formula, sc: &mut Scope<'a>) -> Result<Node, EvalError> {
    use Formula::*;
    let bx = |n: Node| Box::new(n);
    Ok(match f {
        True => Node::Const(true),
        False => Node::Const(false),
        Adj(a, b) => Node::Adj(lookup(&sc.vs, a)?, lookup(&sc.vs, b)?),
        Formula::Eq(a, b) => Node::Eq(lookup(&sc.vs, a)?, lookup(&sc.vs, b)?),
        Member(s, v) => Node::Mem(lookup(&sc.ss, s)?, lookup(&sc.vs, v)?),
        Not(a) => Node::Not(bx(compile(a, sc)?)),
        And(a, b) => Node::And(bx(compile(a, sc)?), bx(compile(b, sc)?)),
        Or(a, b) => Node::Or(bx(compile(a, sc)?), bx(compile(b, sc)?)),
        Implies(a, b) => Node::Imp(bx(compile(a, sc)?), bx(compile(b, sc)?)),
        Iff(a, b) => Node::Iff(bx(compile(a, sc)?), bx(compile(b, sc)?)),
        ForallV(v, a) | ExistsV(v, a) => {
            let slot = sc.vs.len() as u16;
            sc.vs.push(v);
            sc.max_v = sc.max_v.max(sc.vs.len());
            let body = bx(compile(a, sc)?);
            sc.vs.pop();
            if matches!(f, ForallV(..)) { Node::ForallV(slot, body) } else { Node::ExistsV(slot, body) }
        }
        ForallS(v, a) | ExistsS(v, a) => {
            sc.set_q = true;
            let slot = sc.ss.len() as u16;
            sc.ss.push(v);
            sc.max_s = sc.max_s.max(sc.ss.len());
            let body = bx(compile(a, sc)?);
            sc.ss.pop();
            if matches!(f, ForallS(..)) { Node::ForallS(slot, body) } else { Node::ExistsS(slot, body) }
        }
    })
}

struct Ctx<'g> {
    g: &'g Graph,
    vs: Vec<usize>,
    ss: Vec<VertexSet>,
}

impl Ctx<'_> {
    fn run(&mut self, node: &Node) -> bool {
        match node {
            Node::Const(b) => *b,
            Node::Adj(a, b) => self.g.has_edge(self.vs[*a as usize], self.vs[*b as usize]),
            Node::Eq(a, b) => self.vs[*a as usize] == self.vs[*b as usize],
            Node::Mem(s, v) => self.ss[*s as usize].contains(self.vs[*v as usize]),
            Node::Not(a) => !self.run(a),
            Node::And(a, b) => self.run(a) && self.run(b),
            Node::Or(a, b) => self.run(a) || self.run(b),
            Node::Imp(a, b) => !self.run(a) || self.run(b),
            Node::Iff(a, b) => self.run(a) == self.run(b),
            Node::ForallV(slot, a) => (0..self.g.n()).all(|v| {
                self.vs[*slot as usize] = v;
                self.run(a)
            }),
            Node::ExistsV(slot, a) => (0..self.g.n()).any(|v| {
                self.vs[*slot as usize] = v;
                self.run(a)
            }),
            Node::ForallS(slot, a) => !self.some_subset(*slot as usize, a, false),
            Node::ExistsS(slot, a) => self.some_subset(*slot as usize, a, true),
        }
    }

    /// Gray-code walk over all subsets; true iff some subset gives `want`.
    fn some_subset(&mut self, slot: usize, body: &Node, want: bool) -> bool {
        let n = self.g.n();
        self.ss[slot] = VertexSet::empty(n);
        if self.run(body) == want {
            return true;
        }
        for i in 1u64..(1u64 << n) {
            self.ss[slot].toggle(i.trailing_zeros() as usize);
            if self.run(body) == want {
                return true;
            }
        }
        false
    }
}

impl Compiled {
    /// Resolves `phi` with the listed free variables bound to the first slots.
    pub fn new(phi: &Formula, free_vertices: &[&str], free_sets: &[&str]) -> Result<Self, EvalError> {
        let mut sc = Scope {
            vs: free_vertices.to_vec(),
            ss: free_sets.to_vec(),
            max_v: free_vertices.len(),
            max_s: free_sets.len(),
            set_q: false,
        };
        let root = compile(phi, &mut sc)?;
        Ok(Compiled {
            root,
            free_vertices: free_vertices.iter().map(|s| String::from(*s)).collect(),
            free_sets: free_sets.iter().map(|s| String::from(*s)).collect(),
            vertex_slots: sc.max_v,
            set_slots: sc.max_s,
            has_set_quantifier: sc.set_q,
            mso_cap: MSO_CAP,
        })
    }

    pub fn sentence(phi: &Formula) -> Result<Self, EvalError> {
        Self::new(phi, &[], &[])
    }

    pub fn with_mso_cap(mut self, cap: usize) -> Self {
        self.mso_cap = cap;
        self
    }

    pub fn free_vertices(&self) -> &[String] {
        &self.free_vertices
    }

    pub fn free_sets(&self) -> &[String] {
        &self.free_sets
    }

    /// Evaluates with free variables given positionally.
    pub fn eval_with(&self, g: &Graph, vertices: &[usize], sets: &[VertexSet]) -> Result<bool, EvalError> {
        assert_eq!(vertices.len(), self.free_vertices.len(), "free vertex count");
        assert_eq!(sets.len(), self.free_sets.len(), "free set count");
        let n = g.n();
        if self.has_set_quantifier && n > self.mso_cap.min(63) {
            return Err(EvalError::GraphTooLargeForMSO { n, cap: self.mso_cap.min(63) });
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(EvalError::VertexOutOfRange { v, n });
        }
        let mut ctx = Ctx { g, vs: alloc::vec![0; self.vertex_slots], ss: alloc::vec![VertexSet::empty(n); self.set_slots] };
        ctx.vs[..vertices.len()].copy_from_slice(vertices);
        for (i, s) in sets.iter().enumerate() {
            let mut s = s.clone();
            if s.universe() != n {
                s = VertexSet::from_iter(n, s.iter().filter(|&v| v < n));
            }
            ctx.ss[i] = s;
        }
        Ok(ctx.run(&self.root))
    }

    pub fn eval_sentence(&self, g: &Graph) -> Result<bool, EvalError> {
        self.eval_with(g, &[], &[])
    }
}

/// Evaluates `phi` on `g` under `a`; every free variable must be bound in `a`.
pub fn eval(g: &Graph, phi: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    let vnames: Vec<&str> = a.vertices.keys().map(String::as_str).collect();
    let snames: Vec<&str> = a.sets.keys().map(String::as_str).collect();
    let c = Compiled::new(phi, &vnames, &snames)?;
    let vs: Vec<usize> = a.vertices.values().copied().collect();
    let ss: Vec<VertexSet> = a.sets.values().cloned().collect();
    c.eval_with(g, &vs, &ss)
}

pub fn eval_sentence(g: &Graph, phi: &Formula) -> Result<bool, EvalError> {
    Compiled::sentence(phi)?.eval_sentence(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::logic::{builtin, parse, parse_open, BuiltinName::*};

    #[test]
    fn connectivity() {
        let conn = builtin(Conn);
        assert!(eval_sentence(&path(3), &conn).unwrap());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!eval_sentence(&two_edges, &conn).unwrap());
        assert!(eval_sentence(&Graph::empty(1), &conn).unwrap());
    }

    #[test]
    fn small_examples() {
        assert!(!eval_sentence(&complete(3), &builtin(TriangleFree)).unwrap());
        assert!(eval_sentence(&path(2), &builtin(Fo3_1)).unwrap());
        assert!(!eval_sentence(&Graph::empty(3), &builtin(Fo3_1)).unwrap());
        assert!(eval_sentence(&bowtie(), &builtin(Mso56)).unwrap());
        let (t, _) = nine_vertex_tree();
        assert!(eval_sentence(&t, &builtin(Mso98)).unwrap());
        assert!(!eval_sentence(&path(2), &builtin(Mso98)).unwrap());
        let unsat = parse("exists x (x ~ x & !(x ~ x))").unwrap();
        assert!(!eval_sentence(&complete(4), &unsat).unwrap());
    }

    #[test]
    fn assignments() {
        let f = parse_open("x ~ y & X(x)", &["x", "y", "X"]).unwrap();
        let g = path(3);
        let a = Assignment::new().with_vertex("x", 0).with_vertex("y", 1).with_set("X", VertexSet::from_iter(3, [0]));
        assert!(eval(&g, &f, &a).unwrap());
        let a = a.with_set("X", VertexSet::empty(3));
        assert!(!eval(&g, &f, &a).unwrap());
        let missing = Assignment::new().with_vertex("x", 0);
        assert_eq!(eval(&g, &f, &missing), Err(EvalError::UnboundVariable("y".into())));
        let bad = Assignment::new().with_vertex("x", 0).with_vertex("y", 7).with_set("X", VertexSet::empty(3));
        assert_eq!(eval(&g, &f, &bad), Err(EvalError::VertexOutOfRange { v: 7, n: 3 }));
    }

    #[test]
    fn mso_cap_is_enforced() {
        let conn = builtin(Conn);
        assert_eq!(
            eval_sentence(&Graph::empty(25), &conn),
            Err(EvalError::GraphTooLargeForMSO { n: 25, cap: 24 })
        );
        let c = Compiled::sentence(&conn).unwrap().with_mso_cap(3);
        assert!(c.eval_sentence(&path(4)).is_err());
        // FO formulas have no cap.
        assert!(!eval_sentence(&Graph::empty(100), &builtin(Fo3_1)).unwrap());
    }

    #[test]
    fn empty_graph_semantics() {
        let g = Graph::empty(0);
        assert!(eval_sentence(&g, &parse("forall x (x ~ x)").unwrap()).unwrap());
        assert!(!eval_sentence(&g, &parse("exists x (x = x)").unwrap()).unwrap());
        assert!(eval_sentence(&g, &parse("exists X (true)").unwrap()).unwrap());
    }
}
