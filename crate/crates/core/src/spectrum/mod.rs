//! Monte Carlo estimates of `P(G(n, n^-alpha) has a property)` with Wilson
//! intervals, Poisson limits at subgraph thresholds, and parameter sweeps.

mod probe;
mod sample;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::eval::{has_triangle, oracle, Compiled, EvalError};
use crate::graph::{automorphism_count, components, density, is_tree, max_density, named, tree_code, Graph, GraphError, Rational, VertexSet};
use crate::logic::{builtin, BuiltinName};
use crate::rng::mix64;

pub use probe::{independence_at_least, independence_bounds, independence_number, probe_catalog, probe_names, Probe, ALL_PROBES, DEGREE_C, INDEPENDENCE_C, OUTSIDE_COMMON_SUBSETS};
pub use sample::{Sample, UnionFind};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumError {
    Eval(EvalError),
    Graph(GraphError),
    UnknownProbe(String),
    ProbeOutOfRange(String),
    NotAtThreshold { alpha: Rational, threshold: Rational },
    NotStrictlyBalanced,
    NotATree,
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::Eval(e) => write!(f, "{e}"),
            SpectrumError::Graph(e) => write!(f, "{e}"),
            SpectrumError::UnknownProbe(p) => write!(f, "UnknownProbe: {p}"),
            SpectrumError::ProbeOutOfRange(m) => write!(f, "ProbeOutOfRange: {m}"),
            SpectrumError::NotAtThreshold { alpha, threshold } => write!(f, "NotAtThreshold: alpha = {alpha}, threshold {threshold}"),
            SpectrumError::NotStrictlyBalanced => f.write_str("NotStrictlyBalanced"),
            SpectrumError::NotATree => f.write_str("NotATree"),
        }
    }
}

impl core::error::Error for SpectrumError {}

impl From<EvalError> for SpectrumError {
    fn from(e: EvalError) -> Self {
        SpectrumError::Eval(e)
    }
}

impl From<GraphError> for SpectrumError {
    fn from(e: GraphError) -> Self {
        SpectrumError::Graph(e)
    }
}

/// 95% Wilson score interval; `[0, 1]` for no trials.
pub fn wilson(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z95 * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    // Clamp so the interval always contains p_hat despite rounding.
    ((centre - half).max(0.0).min(p), (centre + half).min(1.0).max(p))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumEstimate {
    pub alpha: Rational,
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl SpectrumEstimate {
    pub fn from_counts(alpha: Rational, n: usize, trials: u64, successes: u64, seed: u64) -> Self {
        assert!(successes <= trials);
        let (ci_low, ci_high) = wilson(successes, trials);
        SpectrumEstimate { alpha, n, trials, successes, ci_low, ci_high, seed }
    }

    pub fn p_hat(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn ci_contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// What a trial checks on the sampled graph.
#[derive(Clone)]
pub enum Target {
    Formula { name: String, compiled: Compiled },
    Oracle(BuiltinName),
    Probe(Probe),
}

impl fmt::Debug for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Target {
    pub fn builtin(name: BuiltinName) -> Result<Self, SpectrumError> {
        Ok(Target::Formula { name: name.as_str().to_string(), compiled: Compiled::sentence(&builtin(name))? })
    }

    /// `NAME` or `builtin:NAME` for a catalog formula, `oracle:NAME`, `probe:NAME`.
    pub fn parse(spec: &str) -> Result<Self, SpectrumError> {
        let unknown = || SpectrumError::UnknownProbe(spec.to_string());
        let name = |s: &str| s.parse::<BuiltinName>().map_err(|_| unknown());
        if let Some(p) = spec.strip_prefix("probe:") {
            return Ok(Target::Probe(probe_catalog(p)?));
        }
        if let Some(o) = spec.strip_prefix("oracle:") {
            return Ok(Target::Oracle(name(o)?));
        }
        Target::builtin(name(spec.strip_prefix("builtin:").unwrap_or(spec))?)
    }

    pub fn name(&self) -> String {
        match self {
            Target::Formula { name, .. } => name.clone(),
            Target::Oracle(b) => alloc::format!("oracle:{}", b.as_str()),
            Target::Probe(p) => alloc::format!("probe:{}", p.name()),
        }
    }

    pub fn eval(&self, s: &Sample) -> Result<bool, SpectrumError> {
        match self {
            Target::Formula { compiled, .. } => Ok(compiled.eval_sentence(s.graph())?),
            Target::Oracle(BuiltinName::TriangleFree) => Ok(!has_triangle(s.graph())),
            Target::Oracle(BuiltinName::Mso98) => Ok(has_tree_component(s, &named::nine_vertex_tree().0)),
            Target::Oracle(b) => Ok(oracle(s.graph(), *b)?),
            Target::Probe(p) => p.eval(s),
        }
    }
}

/// Some component of the sample is a tree isomorphic to `t`; any graph is accepted.
pub fn has_tree_component(s: &Sample, t: &Graph) -> bool {
    let Ok(want) = tree_code(t) else { return false };
    let k = t.n();
    let (comp, sizes, edges) = s.components();
    let adj = s.adjacency();
    (0..sizes.len()).filter(|&c| sizes[c] == k && edges[c] + 1 == k).any(|c| {
        let verts: Vec<usize> = (0..s.n).filter(|&v| comp[v] == c).collect();
        let mut h = Graph::empty(k);
        for (i, &v) in verts.iter().enumerate() {
            for &w in &adj[v] {
                if let Ok(j) = verts.binary_search(&w) {
                    if i < j {
                        h.add_edge(i, j);
                    }
                }
            }
        }
        tree_code(&h).is_ok_and(|c| c == want)
    })
}

/// Outcome of trial `index`: the graph is drawn with seed `mix64(seed, index)`.
pub fn run_trial(target: &Target, alpha: Rational, n: usize, seed: u64, index: u64) -> Result<bool, SpectrumError> {
    target.eval(&Sample::draw(n, alpha, mix64(seed, index)))
}

pub fn estimate(target: &Target, alpha: Rational, n: usize, trials: u64, seed: u64) -> Result<SpectrumEstimate, SpectrumError> {
    let mut successes = 0;
    for i in 0..trials {
        successes += run_trial(target, alpha, n, seed, i)? as u64;
    }
    Ok(SpectrumEstimate::from_counts(alpha, n, trials, successes, seed))
}

#[derive(Clone, Debug)]
pub enum PoissonKind {
    /// Not necessarily induced copies of a strictly balanced graph.
    SubgraphCopies(Graph),
    /// Components isomorphic to a tree.
    TreeComponent(Graph),
}

fn strictly_balanced(h: &Graph) -> Result<bool, SpectrumError> {
    let rho = density(h)?;
    let n = h.n();
    if n > crate::graph::MAX_DENSITY_CAP {
        return Err(GraphError::TooLarge { n, cap: crate::graph::MAX_DENSITY_CAP }.into());
    }
    // Induced subgraphs are the densest on their vertex sets.
    Ok((1u64..(1 << n) - 1).all(|m| {
        let (sub, _) = h.induced(&VertexSet::from_mask(n, m));
        density(&sub).is_ok_and(|d| d < rho)
    }))
}

/// Mean number of copies at the threshold, `1/|Aut|`.
pub fn poisson_lambda(kind: &PoissonKind, alpha: Rational) -> Result<f64, SpectrumError> {
    let h = match kind {
        PoissonKind::SubgraphCopies(h) => {
            let threshold = max_density(h)?.recip().ok_or(GraphError::EmptyGraph)?;
            if !strictly_balanced(h)? {
                return Err(SpectrumError::NotStrictlyBalanced);
            }
            if alpha != threshold {
                return Err(SpectrumError::NotAtThreshold { alpha, threshold });
            }
            h
        }
        PoissonKind::TreeComponent(t) => {
            if !is_tree(t) || t.n() < 2 {
                return Err(SpectrumError::NotATree);
            }
            let threshold = Rational::of(t.n() as i64, t.n() as i64 - 1);
            if alpha != threshold {
                return Err(SpectrumError::NotAtThreshold { alpha, threshold });
            }
            t
        }
    };
    Ok(1.0 / automorphism_count(h)? as f64)
}

/// Limit of `P(no copy)`, `exp(-lambda)`. The isolation factor of tree components tends to 1 and is left out.
pub fn poisson_limit(kind: &PoissonKind, alpha: Rational) -> Result<f64, SpectrumError> {
    Ok(libm::exp(-poisson_lambda(kind, alpha)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub target: String,
    pub alpha_num: i64,
    pub alpha_den: i64,
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl SweepRow {
    pub fn new(target: &Target, e: &SpectrumEstimate) -> Self {
        SweepRow {
            target: target.name(),
            alpha_num: e.alpha.num(),
            alpha_den: e.alpha.den(),
            n: e.n,
            trials: e.trials,
            successes: e.successes,
            p_hat: e.p_hat(),
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            seed: e.seed,
        }
    }
}

/// Every (target, alpha, n) cell in that nesting order, all with the same seed.
pub fn sweep(targets: &[Target], alphas: &[Rational], ns: &[usize], trials: u64, seed: u64) -> Result<Vec<SweepRow>, SpectrumError> {
    let mut rows = Vec::new();
    for t in targets {
        for &a in alphas {
            for &n in ns {
                rows.push(SweepRow::new(t, &estimate(t, a, n, trials, seed)?));
            }
        }
    }
    Ok(rows)
}

/// Count of strictly increasing (or strictly decreasing) consecutive steps in `ps`.
pub fn monotone_steps(ps: &[f64], rising: bool) -> usize {
    ps.windows(2).filter(|w| if rising { w[1] > w[0] } else { w[1] < w[0] }).count()
}

/// Nonempty components of the sample, largest first.
pub fn component_sizes(g: &Graph) -> Vec<usize> {
    let mut s: Vec<usize> = components(g).into_iter().map(|c| c.len()).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}
