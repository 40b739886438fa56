//! Small named graphs used throughout.

use super::{Graph, VertexSet};

/// Path on `k` vertices `0-1-...-(k-1)`.
pub fn path(k: usize) -> Graph {
    let mut g = Graph::empty(k);
    for v in 1..k {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3);
    let mut g = path(k);
    g.add_edge(0, k - 1);
    g
}

pub fn complete(k: usize) -> Graph {
    let mut g = Graph::empty(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v);
        }
    }
    g
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v);
    }
    g
}

/// K4 minus the edge 0-1.
pub fn diamond() -> Graph {
    Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Triangles 0-1-2 and 0-3-4 sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
}

/// The 9-vertex tree with centre 0 and branches of lengths 3, 2, 3, with the
/// marked set {centre, first vertex of each long branch}.
pub fn nine_vertex_tree() -> (Graph, VertexSet) {
    let g = Graph::from_edges(9, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (0, 6), (6, 7), (7, 8)]).unwrap();
    (g, VertexSet::from_iter(9, [0, 1, 6]))
}

/// Minimal tree for the k-th counting formula (k = 1..=6) and the vertex
/// playing `x1` where the formula has one.
pub fn fo3_tree(k: usize) -> (Graph, Option<usize>) {
    match k {
        1 => (path(2), None),
        2 => (path(3), None),
        3 => (path(4), None),
        4 => (path(5), Some(2)),
        5 => (path(6), Some(2)),
        6 => (path(7), Some(3)),
        _ => panic!("no tree for formula {k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(star(3).degree(0), 3);
        assert_eq!(diamond().edge_count(), 5);
        assert_eq!(bowtie().edge_count(), 6);
        assert_eq!(cycle(5).edge_count(), 5);
        let (t, x) = nine_vertex_tree();
        assert_eq!((t.n(), t.edge_count(), x.len()), (9, 8, 3));
        assert_eq!(t.degree(0), 3);
    }
}
