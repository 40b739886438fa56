use alloc::string::ToString;
use alloc::vec::Vec;

use super::EvalError;
use crate::graph::{components, is_forest, named, tree_code, Graph};
use crate::logic::BuiltinName;

fn common_neighbors(g: &Graph, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
    let (a, b) = (g.row(u), g.row(v));
    (0..a.len()).flat_map(move |i| {
        let mut w = a[i] & b[i];
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

pub fn has_triangle(g: &Graph) -> bool {
    (0..g.n()).any(|u| g.neighbors(u).filter(|&v| v > u).any(|v| common_neighbors(g, u, v).next().is_some()))
}

/// Some edge has two common neighbours (a not necessarily induced diamond).
pub fn has_diamond(g: &Graph) -> bool {
    (0..g.n()).any(|u| g.neighbors(u).filter(|&v| v > u).any(|v| common_neighbors(g, u, v).nth(1).is_some()))
}

/// Some edge has two non-adjacent common neighbours.
pub fn has_induced_diamond(g: &Graph) -> bool {
    (0..g.n()).any(|u| {
        g.neighbors(u).filter(|&v| v > u).any(|v| {
            let c: Vec<usize> = common_neighbors(g, u, v).collect();
            c.iter().enumerate().any(|(i, &a)| c[i + 1..].iter().any(|&b| !g.has_edge(a, b)))
        })
    })
}

/// Two triangles sharing exactly one vertex (not necessarily induced).
pub fn has_bowtie(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nb: Vec<usize> = g.neighbors(c).collect();
        if nb.len() < 4 {
            return false;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    if edges.iter().any(|&(x, y)| x != a && x != b && y != a && y != b) {
                        return true;
                    }
                    edges.push((a, b));
                }
            }
        }
        false
    })
}

fn farthest(g: &Graph, s: usize) -> (usize, usize) {
    let d = g.distances_from(s);
    let mut best = (s, 0);
    for (v, dv) in d.iter().enumerate() {
        if let Some(dv) = *dv {
            if dv > best.1 {
                best = (v, dv);
            }
        }
    }
    best
}

/// Vertices on a longest path of a forest (0 for the empty graph).
pub fn longest_path_vertices(g: &Graph) -> Result<usize, EvalError> {
    if !is_forest(g) {
        return Err(EvalError::NotAForest);
    }
    Ok(components(g)
        .into_iter()
        .map(|c| {
            let (a, _) = farthest(g, c[0]);
            farthest(g, a).1 + 1
        })
        .max()
        .unwrap_or(0))
}

/// Forest contains the path on `k` vertices.
pub fn has_path_with(g: &Graph, k: usize) -> Result<bool, EvalError> {
    Ok(longest_path_vertices(g)? >= k)
}

/// Forest has a component isomorphic to `t`.
pub fn tree_component_present(g: &Graph, t: &Graph) -> Result<bool, EvalError> {
    if !is_forest(g) {
        return Err(EvalError::NotAForest);
    }
    let want = tree_code(t).map_err(|_| EvalError::NotAForest)?;
    let tn = t.n();
    Ok(components(g).into_iter().filter(|c| c.len() == tn).any(|c| {
        let (h, _) = g.induced(&crate::graph::VertexSet::from_iter(g.n(), c.iter().copied()));
        tree_code(&h).is_ok_and(|code| code == want)
    }))
}

/// Structural decision procedure for a catalog sentence, without formula evaluation.
///
/// `mso_45` is decided by an induced diamond: its witness needs two
/// non-adjacent vertices in `X`, so `K4` is not a model.
pub fn oracle(g: &Graph, name: BuiltinName) -> Result<bool, EvalError> {
    use BuiltinName::*;
    match name {
        Conn => Ok(components(g).len() <= 1),
        TriangleFree => Ok(!has_triangle(g)),
        Mso45 => Ok(has_induced_diamond(g)),
        Mso56 => Ok(has_bowtie(g)),
        Mso98 => tree_component_present(g, &named::nine_vertex_tree().0),
        Fo3_1 | Fo3_2 | Fo3_3 | Fo3_4 | Fo3_5 | Fo3_6 => has_path_with(g, name.fo3_index().unwrap() + 1),
        PhiInf | PhiFo => Err(EvalError::NoOracle(name.as_str().to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{contains_subgraph, enumerate::graphs_up_to_iso};

    #[test]
    fn detectors_match_subgraph_search() {
        let (d, b, k3) = (diamond(), bowtie(), complete(3));
        for n in 1..=6 {
            for g in graphs_up_to_iso(n) {
                assert_eq!(has_triangle(&g), contains_subgraph(&g, &k3, false).unwrap());
                assert_eq!(has_diamond(&g), contains_subgraph(&g, &d, false).unwrap());
                assert_eq!(has_induced_diamond(&g), contains_subgraph(&g, &d, true).unwrap());
                assert_eq!(has_bowtie(&g), contains_subgraph(&g, &b, false).unwrap());
            }
        }
    }

    #[test]
    fn examples() {
        assert!(oracle(&complete(5), BuiltinName::Mso56).unwrap());
        assert!(!oracle(&complete(4), BuiltinName::Mso56).unwrap());
        assert!(oracle(&path(7), BuiltinName::Fo3_6).unwrap());
        assert!(!oracle(&path(6), BuiltinName::Fo3_6).unwrap());
        assert_eq!(oracle(&complete(3), BuiltinName::Fo3_1), Err(EvalError::NotAForest));
        assert!(oracle(&nine_vertex_tree().0, BuiltinName::Mso98).unwrap());
        assert!(matches!(oracle(&path(2), BuiltinName::PhiFo), Err(EvalError::NoOracle(_))));
        assert_eq!(longest_path_vertices(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(longest_path_vertices(&star(3)).unwrap(), 3);
    }
}
