use proptest::prelude::*;

use rgl_core::graph::named::{bowtie, complete, diamond, nine_vertex_tree};
use rgl_core::graph::{edge_probability, Graph, Rational};
use rgl_core::spectrum::{estimate, poisson_lambda, poisson_limit, run_trial, sweep, wilson, PoissonKind, Target};

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b).unwrap()
}

/// Automorphisms by trying every permutation.
fn brute_aut(g: &Graph) -> u64 {
    fn go(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let k = perm.len();
        if k == g.n() {
            return 1;
        }
        let mut total = 0;
        for c in 0..g.n() {
            if used[c] || (0..k).any(|u| g.has_edge(u, k) != g.has_edge(perm[u], c)) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            total += go(g, perm, used);
            perm.pop();
            used[c] = false;
        }
        total
    }
    go(g, &mut Vec::new(), &mut vec![false; g.n()])
}

#[test]
fn poisson_constants_match_brute_force_symmetry() {
    let cases = [
        (PoissonKind::SubgraphCopies(complete(3)), r(1, 1), complete(3)),
        (PoissonKind::SubgraphCopies(diamond()), r(4, 5), diamond()),
        (PoissonKind::SubgraphCopies(bowtie()), r(5, 6), bowtie()),
        (PoissonKind::TreeComponent(nine_vertex_tree().0), r(9, 8), nine_vertex_tree().0),
    ];
    for (kind, alpha, g) in cases {
        let lambda = 1.0 / brute_aut(&g) as f64;
        assert!((poisson_lambda(&kind, alpha).unwrap() - lambda).abs() < 1e-12);
        assert!((poisson_limit(&kind, alpha).unwrap() - (-lambda).exp()).abs() < 1e-12);
    }
    assert_eq!(brute_aut(&nine_vertex_tree().0), 2);
}

fn choose(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// Expected number of components isomorphic to a `k`-vertex tree with `aut` automorphisms.
fn tree_component_mean(n: usize, alpha: Rational, k: usize, aut: u64) -> f64 {
    let p = edge_probability(n, alpha);
    let labelled = (1..=k).map(|i| i as f64).product::<f64>() / aut as f64;
    let closed = k * (n - k) + k * (k - 1) / 2 - (k - 1);
    choose(n, k) * labelled * p.powi(k as i32 - 1) * (1.0 - p).powf(closed as f64)
}

// At n = 5000 the isolation factor is far from 1, so the estimate follows
// the finite-n mean and not the limit 1 - e^(-1/2).
#[test]
fn tree_component_estimate_follows_the_finite_n_mean() {
    let alpha = r(9, 8);
    let target = Target::parse("oracle:mso_98").unwrap();
    let e = estimate(&target, alpha, 5000, 1000, 3).unwrap();
    let finite = 1.0 - (-tree_component_mean(5000, alpha, 9, 2)).exp();
    let limit = 1.0 - poisson_limit(&PoissonKind::TreeComponent(nine_vertex_tree().0), alpha).unwrap();
    assert!(e.ci_contains(finite), "{} [{}, {}] vs {finite}", e.p_hat(), e.ci_low, e.ci_high);
    assert!(!e.ci_contains(limit));
}

#[test]
fn sweeps_are_reproducible() {
    let targets = [Target::parse("triangle_free").unwrap(), Target::parse("oracle:mso_45").unwrap()];
    let a = sweep(&targets, &[r(1, 1), r(4, 5)], &[30, 60], 40, 9).unwrap();
    let b = sweep(&targets, &[r(1, 1), r(4, 5)], &[30, 60], 40, 9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trials_do_not_depend_on_order(seed in any::<u64>(), n in 5usize..60, trials in 1u64..40) {
        let t = Target::parse("triangle_free").unwrap();
        let forward: u64 = (0..trials).map(|i| run_trial(&t, r(1, 1), n, seed, i).unwrap() as u64).sum();
        let backward: u64 = (0..trials).rev().map(|i| run_trial(&t, r(1, 1), n, seed, i).unwrap() as u64).sum();
        prop_assert_eq!(forward, backward);
        prop_assert_eq!(estimate(&t, r(1, 1), n, trials, seed).unwrap().successes, forward);
    }

    #[test]
    fn wilson_interval_is_ordered(t in 1u64..10_000, frac in 0.0f64..=1.0) {
        let s = (t as f64 * frac) as u64;
        let (lo, hi) = wilson(s, t);
        let p = s as f64 / t as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }
}
