use proptest::prelude::*;

use rgl_core::eval::Compiled;
use rgl_core::game::{apply_move, duplicator_wins_final, legal_moves, GameState, Limits, Logic, Move, Side, Solver, Winner};
use rgl_core::graph::enumerate::graphs_up_to_iso;
use rgl_core::graph::Graph;
use rgl_core::logic::{builtin, is_mso, quantifier_depth, ALL_BUILTINS};

/// Plain minimax over the full game tree.
fn naive(s: &GameState) -> bool {
    if s.rounds_left == 0 {
        return duplicator_wins_final(s).unwrap();
    }
    [Side::Left, Side::Right].into_iter().all(|side| {
        let replies = legal_moves(s, side.other()).unwrap();
        legal_moves(s, side).unwrap().into_iter().all(|m| {
            replies.iter().any(|r| apply_move(s, side, m.clone(), r.clone()).is_ok_and(|t| naive(&t)))
        })
    })
}

fn upto(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(graphs_up_to_iso).collect()
}

fn winner(dup: bool) -> Winner {
    if dup { Winner::Duplicator } else { Winner::Spoiler }
}

#[test]
fn solver_matches_plain_minimax() {
    let mut fo = Solver::new(Logic::Fo, Limits::default());
    let small = upto(4);
    for a in &small {
        for b in &small {
            for k in 0..=3 {
                let s = GameState::new(a.clone(), b.clone(), k, Logic::Fo);
                assert_eq!(fo.solve(a, b, k).unwrap(), winner(naive(&s)), "FO k={k} {:?} {:?}", a.edges(), b.edges());
            }
        }
    }
    let mut mso = Solver::new(Logic::Mso, Limits::default());
    let tiny = upto(3);
    for a in &tiny {
        for b in &tiny {
            for k in 0..=2 {
                let s = GameState::new(a.clone(), b.clone(), k, Logic::Mso);
                assert_eq!(mso.solve(a, b, k).unwrap(), winner(naive(&s)), "MSO k={k} {:?} {:?}", a.edges(), b.edges());
            }
        }
    }
}

#[test]
fn distinguishing_sentences_mean_spoiler_wins() {
    let graphs = upto(6);
    for name in ALL_BUILTINS {
        let phi = builtin(name);
        let k = quantifier_depth(&phi);
        if k > 3 {
            continue;
        }
        let logic = if is_mso(&phi) { Logic::Mso } else { Logic::Fo };
        let c = Compiled::sentence(&phi).unwrap();
        let mut solver = Solver::new(logic, Limits::default());
        let truth: Vec<bool> = graphs.iter().map(|g| c.eval_sentence(g).unwrap()).collect();
        let types: Vec<u32> = graphs.iter().map(|g| solver.type_id(g, &[], k).unwrap()).collect();
        for i in 0..graphs.len() {
            for j in 0..graphs.len() {
                if truth[i] != truth[j] {
                    assert_ne!(types[i], types[j], "{name:?} separates {:?} and {:?}", graphs[i].edges(), graphs[j].edges());
                }
            }
        }
    }
}

#[test]
fn every_graph_is_equivalent_to_itself() {
    let graphs = upto(5);
    for logic in [Logic::Fo, Logic::Mso] {
        let mut solver = Solver::new(logic, Limits::default());
        for g in &graphs {
            for k in 0..=3 {
                assert_eq!(solver.solve(g, g, k).unwrap(), Winner::Duplicator);
            }
        }
    }
}

#[test]
fn more_rounds_only_help_spoiler() {
    let graphs = upto(4);
    for (logic, top) in [(Logic::Fo, 4), (Logic::Mso, 3)] {
        let mut solver = Solver::new(logic, Limits::default());
        for a in &graphs {
            for b in &graphs {
                let mut spoiler = false;
                for k in 0..=top {
                    let w = solver.solve(a, b, k).unwrap() == Winner::Spoiler;
                    assert!(w || !spoiler, "{logic:?} k={k}");
                    spoiler = w;
                }
            }
        }
    }
}

#[test]
fn mso_separates_at_least_what_fo_does() {
    let graphs = upto(4);
    let mut fo = Solver::new(Logic::Fo, Limits::default());
    let mut mso = Solver::new(Logic::Mso, Limits::default());
    for a in &graphs {
        for b in &graphs {
            for k in 0..=3 {
                if fo.solve(a, b, k).unwrap() == Winner::Spoiler {
                    assert_eq!(mso.solve(a, b, k).unwrap(), Winner::Spoiler);
                }
            }
        }
    }
}

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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solving_is_symmetric(na in 1usize..=6, ba in any::<u64>(), nb in 1usize..=6, bb in any::<u64>(), k in 0usize..=3, mso in any::<bool>()) {
        let (a, b) = (graph_from_bits(na, ba), graph_from_bits(nb, bb));
        let logic = if mso { Logic::Mso } else { Logic::Fo };
        let mut s1 = Solver::new(logic, Limits::default());
        let mut s2 = Solver::new(logic, Limits::default());
        prop_assert_eq!(s1.solve(&a, &b, k).unwrap(), s2.solve(&b, &a, k).unwrap());
    }

    #[test]
    fn solver_reply_keeps_duplicator_winning(n in 2usize..=5, bits in any::<u64>(), perm_seed in any::<u64>(), v in 0usize..5) {
        // A relabelled copy: Duplicator always has an answer that keeps the win.
        let a = graph_from_bits(n, bits);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| rgl_core::rng::mix64(perm_seed, i as u64));
        let b = a.permuted(&perm);
        let s = GameState::new(a, b, 3, Logic::Fo);
        let mut solver = Solver::new(Logic::Fo, Limits::default());
        let m = Move::Vertex(v % n);
        let r = solver.duplicator_reply(&s, Side::Left, &m).unwrap().unwrap();
        let t = apply_move(&s, Side::Left, m, r).unwrap();
        prop_assert_eq!(solver.solve_state(&t).unwrap(), Winner::Duplicator);
    }
}
