//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! ```

use std::fmt;
use std::fs;
use std::path::Path;

use rgl_core::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    Io(String),
    MissingHeader,
    Malformed { line: usize, text: String },
    BadEdge { line: usize, u: usize, v: usize, n: usize },
    Duplicate { line: usize, u: usize, v: usize },
    CountMismatch { header: usize, found: usize },
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeListError::Io(e) => write!(f, "IoError: {e}"),
            EdgeListError::MissingHeader => f.write_str("EdgeListError: missing `n m` header"),
            EdgeListError::Malformed { line, text } => write!(f, "EdgeListError: line {line}: cannot read `{text}`"),
            EdgeListError::BadEdge { line, u, v, n } => write!(f, "EdgeListError: line {line}: need u < v < {n}, got {u} {v}"),
            EdgeListError::Duplicate { line, u, v } => write!(f, "EdgeListError: line {line}: edge {u} {v} repeated"),
            EdgeListError::CountMismatch { header, found } => write!(f, "EdgeListError: header says {header} edges, found {found}"),
        }
    }
}

impl std::error::Error for EdgeListError {}

fn numbers(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let bad = || EdgeListError::Malformed { line, text: text.to_string() };
    let mut it = text.split_ascii_whitespace();
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
    let (n, m) = numbers(hl, header)?;
    let mut g = Graph::empty(n);
    let mut found = 0;
    for (line, l) in lines {
        let (u, v) = numbers(line, l)?;
        if u >= v || v >= n {
            return Err(EdgeListError::BadEdge { line, u, v, n });
        }
        if g.has_edge(u, v) {
            return Err(EdgeListError::Duplicate { line, u, v });
        }
        g.add_edge(u, v);
        found += 1;
    }
    if found != m {
        return Err(EdgeListError::CountMismatch { header: m, found });
    }
    Ok(g)
}

pub fn read_edge_list(path: &Path) -> Result<Graph, EdgeListError> {
    let text = fs::read_to_string(path).map_err(|e| EdgeListError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}

pub fn edge_list_string(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (u, v) in edges {
        s += &format!("{u} {v}\n");
    }
    s
}

pub fn write_edge_list(g: &Graph) -> String {
    edge_list_string(g.n(), &g.edges())
}
