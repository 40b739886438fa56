use proptest::prelude::*;

use rgl_core::graph::enumerate::trees_up_to_iso;
use rgl_core::graph::{contains_subgraph, density, gen_gnp, gen_gnp_edges, max_density, named, tree_code, Graph, Rational};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph_from_bits(n, &b)))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Brute force: some bijection maps edges onto edges.
fn brute_iso(a: &Graph, b: &Graph) -> bool {
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used[j] || a.degree(i) != b.degree(j) {
                continue;
            }
            if (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k])) {
                map.push(j);
                used[j] = true;
                if go(a, b, map, used) {
                    return true;
                }
                used[j] = false;
                map.pop();
            }
        }
        false
    }
    a.n() == b.n() && a.edge_count() == b.edge_count() && go(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

proptest! {
    #[test]
    fn constructed_graphs_are_symmetric_and_loopless(g in arb_graph(12)) {
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        prop_assert_eq!(g.edges().len(), g.edge_count());
    }

    #[test]
    fn generated_graphs_are_symmetric_and_loopless(n in 0usize..120, a in 1i64..12, seed in any::<u64>()) {
        let alpha = Rational::of(a, 6);
        let g = gen_gnp(n, alpha, seed);
        for u in 0..n {
            prop_assert!(!g.has_edge(u, u));
            for v in g.neighbors(u) {
                prop_assert!(g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn density_at_most_max_density(g in arb_graph(9)) {
        prop_assert!(density(&g).unwrap() <= max_density(&g).unwrap());
    }

    #[test]
    fn containment_is_invariant_under_relabelling(
        (g, pg) in arb_graph(8).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_perm(n)) }),
        (h, ph) in arb_graph(4).prop_flat_map(|h| { let n = h.n(); (Just(h), arb_perm(n)) }),
        induced in any::<bool>(),
    ) {
        let want = contains_subgraph(&g, &h, induced).unwrap();
        prop_assert_eq!(contains_subgraph(&g.permuted(&pg), &h, induced).unwrap(), want);
        prop_assert_eq!(contains_subgraph(&g, &h.permuted(&ph), induced).unwrap(), want);
    }

    #[test]
    fn gnp_is_a_function_of_its_inputs(n in 0usize..300, a in 1i64..16, seed in any::<u64>()) {
        let alpha = Rational::of(a, 8);
        prop_assert_eq!(gen_gnp_edges(n, alpha, seed), gen_gnp_edges(n, alpha, seed));
    }

    #[test]
    fn tree_code_is_label_free((i, p) in (0usize..48).prop_flat_map(|i| (Just(i), arb_perm(8)))) {
        let trees: Vec<Graph> = (1..=8).flat_map(trees_up_to_iso).collect();
        let t = &trees[i % trees.len()];
        let mut perm = p;
        perm.retain(|&v| v < t.n());
        prop_assert_eq!(tree_code(&t.permuted(&perm)).unwrap(), tree_code(t).unwrap());
    }
}

#[test]
fn tree_code_agrees_with_brute_force_on_small_trees() {
    let trees: Vec<Graph> = (1..=8).flat_map(trees_up_to_iso).collect();
    assert_eq!(trees.len(), 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23);
    // Relabel each tree so equal codes are not just equal edge lists.
    let relabeled: Vec<Graph> = trees
        .iter()
        .map(|t| {
            let perm: Vec<usize> = (0..t.n()).rev().collect();
            t.permuted(&perm)
        })
        .collect();
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in relabeled.iter().enumerate() {
            let same_code = tree_code(a).unwrap() == tree_code(b).unwrap();
            assert_eq!(same_code, brute_iso(a, b), "{i} {j}");
            assert_eq!(same_code, i == j);
        }
    }
}

#[test]
fn named_graph_densities() {
    assert_eq!(max_density(&named::diamond()).unwrap(), Rational::of(5, 4));
    assert_eq!(max_density(&named::bowtie()).unwrap(), Rational::of(6, 5));
    assert_eq!(max_density(&named::nine_vertex_tree().0).unwrap(), Rational::of(8, 9));
}
