use proptest::prelude::*;

use rgl_core::game::{apply_move, GameState, Limits, Logic, Move, Side, Solver, Winner};
use rgl_core::graph::{Graph, Rational, VertexSet};
use rgl_core::rng::mix64;
use rgl_core::strategy::{respond_set_after_set, respond_vertex_after_set};
use rgl_core::types::{
    classify_vertex, find_witness, pair_type, table_lookup, AlphaRange, Axis, Special, TableVerdict, MAIN_TABLE, SPECIAL_TABLE,
};

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> k & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

fn axis(g: &Graph, v: usize, side: impl Iterator<Item = usize>) -> Axis {
    let (mut hit, mut miss) = (false, false);
    for u in side {
        if g.has_edge(u, v) { hit = true } else { miss = true }
    }
    match (hit, miss) {
        (true, false) => Axis::Dominating,
        (true, true) => Axis::Common,
        _ => Axis::Isolated,
    }
}

fn arb_instance() -> impl Strategy<Value = (Graph, VertexSet)> {
    (1usize..=8, any::<u64>(), any::<u64>()).prop_map(|(n, b, m)| (graph_from_bits(n, b), VertexSet::from_mask(n, m & ((1 << n) - 1))))
}

proptest! {
    #[test]
    fn classification_reads_both_sides((g, x) in arb_instance()) {
        for v in 0..g.n() {
            let t = classify_vertex(&g, &x, v).unwrap();
            let own = (0..g.n()).filter(|&u| u != v && x.contains(u) == x.contains(v));
            let other = (0..g.n()).filter(|&u| x.contains(u) != x.contains(v));
            prop_assert_eq!(t.inside, axis(&g, v, own));
            prop_assert_eq!(t.outside, axis(&g, v, other));
        }
    }

    #[test]
    fn complement_mirrors_the_pair_type((g, x) in arb_instance()) {
        match pair_type(&g, &x) {
            Ok(pt) => {
                let back = pair_type(&g, &x.complement()).unwrap();
                prop_assert_eq!(&back, &pt.mirror());
                prop_assert_eq!(back.special, pt.special.mirror());
            }
            Err(_) => prop_assert!(x.len() < 2 || g.n() - x.len() < 2),
        }
    }

    #[test]
    fn lookup_is_total((g, x) in arb_instance(), num in 1i64..100) {
        if let Ok(pt) = pair_type(&g, &x) {
            let v = table_lookup(&pt, Rational::new(num, 100).unwrap()).unwrap();
            prop_assert!(v != TableVerdict::NotListed);
        }
    }
}

#[test]
fn tables_have_the_expected_row_counts() {
    assert_eq!(MAIN_TABLE.len(), 26);
    assert_eq!(SPECIAL_TABLE.len(), 8);
    assert!(MAIN_TABLE.iter().all(|r| r.range != AlphaRange::Empty));
    let empty: Vec<&str> = SPECIAL_TABLE.iter().filter(|r| r.range == AlphaRange::Empty).map(|r| r.id).collect();
    assert_eq!(empty, ["1.2", "1.4", "1.5"]);
    assert!(SPECIAL_TABLE.iter().all(|r| matches!(r.case, Special::Case1 | Special::Case2)));
}

/// Random nondegenerate `(G, X)` with `n <= 6`.
fn draw(seed: u64, i: u64) -> (Graph, VertexSet) {
    for j in 0.. {
        let h = mix64(mix64(seed, i), j);
        let n = 4 + (h % 3) as usize;
        let g = graph_from_bits(n, mix64(h, 1));
        let x = VertexSet::from_mask(n, mix64(h, 2) & ((1 << n) - 1));
        if x.len() >= 2 && n - x.len() >= 2 {
            return (g, x);
        }
    }
    unreachable!()
}

#[test]
fn equal_pair_types_win_the_last_two_rounds() {
    let mut solver = Solver::new(Logic::Mso, Limits::default());
    let (mut found, mut tries) = (0, 0u64);
    while found < 200 {
        tries += 1;
        assert!(tries < 200_000, "only {found} quadruples");
        let (g, x) = draw(11, tries);
        let (h, _) = draw(12, tries);
        let pt = pair_type(&g, &x).unwrap();
        let Some(y) = find_witness(&h, &pt).unwrap() else { continue };
        assert_eq!(pair_type(&h, &y).unwrap(), pt);
        let s = apply_move(&GameState::new(g.clone(), h.clone(), 3, Logic::Mso), Side::Left, Move::Set(x.clone()), Move::Set(y.clone())).unwrap();
        assert_eq!(solver.solve_state(&s).unwrap(), Winner::Duplicator, "G {:?} X {:?} H {:?} Y {:?}", g.edges(), x, h.edges(), y);

        // The type-based replies keep the win for one more round.
        let v = (mix64(13, tries) % g.n() as u64) as usize;
        let w = respond_vertex_after_set(&g, &h, &x, &y, v).unwrap();
        let t = apply_move(&s, Side::Left, Move::Vertex(v), Move::Vertex(w)).unwrap();
        assert_eq!(solver.solve_state(&t).unwrap(), Winner::Duplicator);
        let x2 = VertexSet::from_mask(g.n(), mix64(14, tries) & ((1 << g.n()) - 1));
        let y2 = respond_set_after_set(&g, &h, &x, &y, &x2).unwrap();
        let t = apply_move(&s, Side::Left, Move::Set(x2), Move::Set(y2)).unwrap();
        assert_eq!(solver.solve_state(&t).unwrap(), Winner::Duplicator);
        found += 1;
    }
}
