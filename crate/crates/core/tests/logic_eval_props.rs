use proptest::prelude::*;

use rgl_core::eval::{eval, eval_sentence, Assignment};
use rgl_core::graph::{Graph, VertexSet};
use rgl_core::logic::{builtin, parse, parse_open, quantifier_depth, stated_depth, Formula, ALL_BUILTINS};

#[derive(Clone, Debug)]
enum Shape {
    Const(bool),
    Atom(u8, u8, u8),
    Not(Box<Shape>),
    Bin(u8, Box<Shape>, Box<Shape>),
    Quant(bool, bool, Box<Shape>),
}

fn arb_shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![any::<bool>().prop_map(Shape::Const), (0u8..3, any::<u8>(), any::<u8>()).prop_map(|(k, i, j)| Shape::Atom(k, i, j))];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|s| Shape::Not(Box::new(s))),
            (0u8..4, inner.clone(), inner.clone()).prop_map(|(k, a, b)| Shape::Bin(k, Box::new(a), Box::new(b))),
            (any::<bool>(), any::<bool>(), inner).prop_map(|(set, all, b)| Shape::Quant(set, all, Box::new(b))),
        ]
    })
}

/// Free variables `a`, `b`, `X`; each quantifier binds a fresh name.
fn build(s: &Shape, vs: &mut Vec<String>, ss: &mut Vec<String>, fresh: &mut usize) -> Formula {
    match s {
        Shape::Const(true) => Formula::True,
        Shape::Const(false) => Formula::False,
        Shape::Atom(k, i, j) => {
            let v = |x: &u8| vs[*x as usize % vs.len()].clone();
            match k {
                0 => Formula::Adj(v(i), v(j)),
                1 => Formula::Eq(v(i), v(j)),
                _ => Formula::Member(ss[*i as usize % ss.len()].clone(), v(j)),
            }
        }
        Shape::Not(a) => Formula::Not(Box::new(build(a, vs, ss, fresh))),
        Shape::Bin(k, a, b) => {
            let (a, b) = (Box::new(build(a, vs, ss, fresh)), Box::new(build(b, vs, ss, fresh)));
            match k {
                0 => Formula::And(a, b),
                1 => Formula::Or(a, b),
                2 => Formula::Implies(a, b),
                _ => Formula::Iff(a, b),
            }
        }
        Shape::Quant(set, all, body) => {
            *fresh += 1;
            if *set {
                let name = format!("S{fresh}");
                ss.push(name.clone());
                let b = Box::new(build(body, vs, ss, fresh));
                ss.pop();
                if *all { Formula::ForallS(name, b) } else { Formula::ExistsS(name, b) }
            } else {
                let name = format!("x{fresh}");
                vs.push(name.clone());
                let b = Box::new(build(body, vs, ss, fresh));
                vs.pop();
                if *all { Formula::ForallV(name, b) } else { Formula::ExistsV(name, b) }
            }
        }
    }
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    arb_shape().prop_map(|s| build(&s, &mut vec!["a".into(), "b".into()], &mut vec!["X".into()], &mut 0))
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

fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, any::<u64>()).prop_map(|(n, b)| graph_from_bits(n, b))
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(phi in arb_formula()) {
        let text = phi.to_string();
        prop_assert_eq!(parse_open(&text, &["a", "b", "X"]).unwrap(), phi, "{}", text);
    }

    #[test]
    fn negation_flips_the_value(phi in arb_formula(), g in arb_graph(1, 5), a in 0usize..5, b in 0usize..5, x in any::<u64>()) {
        let n = g.n();
        let asg = Assignment::new().with_vertex("a", a % n).with_vertex("b", b % n).with_set("X", VertexSet::from_mask(n, x & ((1 << n) - 1)));
        let v = eval(&g, &phi, &asg).unwrap();
        prop_assert_eq!(eval(&g, &Formula::Not(Box::new(phi)), &asg).unwrap(), !v);
    }

    #[test]
    fn catalog_sentences_ignore_labels((g, perm) in arb_graph(1, 8).prop_flat_map(|g| { let n = g.n(); (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle()) })) {
        let h = g.permuted(&perm);
        for b in ALL_BUILTINS {
            let phi = builtin(b);
            prop_assert_eq!(eval_sentence(&g, &phi).unwrap(), eval_sentence(&h, &phi).unwrap(), "{:?}", b);
        }
    }
}

#[test]
fn catalog_round_trips_and_depths() {
    for b in ALL_BUILTINS {
        let phi = builtin(b);
        assert_eq!(parse(&phi.to_string()).unwrap(), phi, "{b:?}");
        assert_eq!(quantifier_depth(&phi), stated_depth(b), "{b:?}");
    }
}
