use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{components, is_tree, Graph, GraphError};

/// AHU code of the component of `root`, rooted at `root`.
pub fn rooted_tree_code(g: &Graph, root: usize) -> String {
    let mut parent = vec![usize::MAX; g.n()];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut codes: Vec<Option<String>> = vec![None; g.n()];
    let mut kids: Vec<Vec<String>> = vec![Vec::new(); g.n()];
    for &u in order.iter().rev() {
        let mut ch = core::mem::take(&mut kids[u]);
        ch.sort_unstable();
        let mut s = String::with_capacity(2 + ch.iter().map(String::len).sum::<usize>());
        s.push('(');
        for c in ch {
            s.push_str(&c);
        }
        s.push(')');
        if u != root {
            kids[parent[u]].push(s);
        } else {
            codes[u] = Some(s);
        }
    }
    codes[root].take().unwrap()
}

/// Centre(s) of a tree by repeated leaf stripping.
pub(crate) fn tree_centers(g: &Graph, verts: &[usize]) -> Vec<usize> {
    if verts.len() <= 2 {
        return verts.to_vec();
    }
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = verts.iter().copied().filter(|&v| deg[v] <= 1).collect();
    let mut left = verts.len();
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &u in &layer {
            for w in g.neighbors(u) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[u] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical code of a tree component containing `verts`.
pub(crate) fn component_code(g: &Graph, verts: &[usize]) -> String {
    tree_centers(g, verts).into_iter().map(|c| rooted_tree_code(g, c)).min().unwrap()
}

/// Centre-rooted canonical code: equal iff the trees are isomorphic.
pub fn tree_code(t: &Graph) -> Result<String, GraphError> {
    if !is_tree(t) {
        return Err(GraphError::NotATree);
    }
    let all: Vec<usize> = (0..t.n()).collect();
    Ok(component_code(t, &all))
}

/// Codes of all components of a forest, in component order.
pub fn component_codes(g: &Graph) -> Result<Vec<(String, Vec<usize>)>, GraphError> {
    if !super::is_forest(g) {
        return Err(GraphError::NotAForest);
    }
    Ok(components(g).into_iter().map(|c| (component_code(g, &c), c)).collect())
}
