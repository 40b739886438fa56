//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a computation fails (the error name is
//! printed on stderr), 2 for usage errors.

use std::fmt;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rgl_core::eval::{eval_sentence, oracle};
use rgl_core::game::{apply_move, partial_iso, GameState, Limits, Logic, Move, Side, Solver, Winner};
use rgl_core::graph::{Graph, Rational, VertexSet};
use rgl_core::logic::{builtin, parse, BuiltinName, Formula};
use rgl_core::spectrum::{Sample, SweepRow, Target};
use rgl_core::strategy::plan_set_response;
use rgl_core::types::{classify_vertex, pair_type, special_vertices, subset_class, table_lookup, table_row, PairType, TableVerdict};

use crate::io::{edge_list_string, read_edge_list};
use crate::par;

#[derive(Parser, Debug)]
#[command(name = "rgl", version, about = "Logic, games and sparse random graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every stochastic command.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a sentence on a graph.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        /// A formula file or `builtin:NAME`.
        #[arg(long)]
        formula: String,
        /// Use the combinatorial oracle of a builtin instead of the evaluator.
        #[arg(long)]
        oracle: bool,
    },
    /// Ehrenfeucht games.
    #[command(subcommand)]
    Game(GameCommand),
    /// Vertex types and pair type of a subset.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex indices of X.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
    /// Look a pair type up in the tables.
    Table {
        /// Pair type as JSON, e.g. {"x":["CC"],"xbar":["CC"],"special":"none"}.
        #[arg(long)]
        pairtype: String,
        #[arg(long, value_parser = parse_alpha)]
        alpha: Rational,
    },
    /// Duplicator strategy operations.
    #[command(subcommand)]
    Strategy(StrategyCommand),
    /// Draw one graph G(n, n^-alpha) and print it as an edge list.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_alpha)]
        alpha: Rational,
    },
    /// Monte Carlo estimate of the probability of a target.
    Estimate(EstimateArgs),
    /// Estimates over a grid of targets, alphas and sizes.
    Sweep {
        /// Comma-separated targets.
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
        /// Comma-separated fractions.
        #[arg(long, value_delimiter = ',', value_parser = parse_alpha, required = true)]
        alphas: Vec<Rational>,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long)]
        trials: u64,
    },
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    /// `NAME` or `builtin:NAME` (formula), `oracle:NAME`, or `probe:NAME`.
    #[arg(long)]
    pub target: String,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: Rational,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub trials: u64,
}

#[derive(Subcommand, Debug)]
pub enum GameCommand {
    /// Value of the k-round game.
    Solve(GameArgs),
    /// Play against the engine on stdin.
    Play {
        #[command(flatten)]
        game: GameArgs,
        /// The side you play.
        #[arg(long, value_enum)]
        role: Role,
        /// Transcript file, rewritten after every round.
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct GameArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    #[arg(long)]
    pub rounds: usize,
    #[arg(long, value_enum)]
    pub logic: LogicArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicArg {
    Fo,
    Mso,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Self {
        match l {
            LogicArg::Fo => Logic::Fo,
            LogicArg::Mso => Logic::Mso,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Spoiler,
    Duplicator,
}

#[derive(Subcommand, Debug)]
pub enum StrategyCommand {
    /// Duplicator's answer in the right forest to a set played in the left one.
    RespondSet {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
}

/// Exact `A/B` (or integer); decimals are rejected.
pub fn parse_alpha(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| format!("expected a fraction A/B: {e}"))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

fn compute<E: fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Compute(format!("IoError: {e}"))
}

type Res<T> = Result<T, CliError>;

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn run<I, S>(argv: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, input, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => 2,
                CliError::Compute(_) => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Res<()> {
    let fmt = cli.format;
    let text = match &cli.command {
        Command::Eval { graph, formula, oracle } => cmd_eval(fmt, graph, formula, *oracle)?,
        Command::Game(GameCommand::Solve(a)) => cmd_solve(fmt, a)?,
        Command::Game(GameCommand::Play { game, role, log }) => {
            no_csv(fmt, "game play")?;
            return cmd_play(game, *role, log.as_deref(), input, out);
        }
        Command::Classify { graph, subset } => cmd_classify(fmt, graph, subset)?,
        Command::Table { pairtype, alpha } => cmd_table(fmt, pairtype, *alpha)?,
        Command::Strategy(StrategyCommand::RespondSet { left, right, subset }) => cmd_respond(fmt, left, right, subset)?,
        Command::Sample { n, alpha } => cmd_sample(fmt, *n, *alpha, cli.seed)?,
        Command::Estimate(a) => {
            let t = target(&a.target)?;
            let e = par::estimate(&t, a.alpha, a.n, a.trials, cli.seed, par::thread_count()).map_err(compute)?;
            rows_out(fmt, &[SweepRow::new(&t, &e)])?
        }
        Command::Sweep { targets, alphas, ns, trials } => {
            let ts = targets.iter().map(|s| target(s)).collect::<Res<Vec<_>>>()?;
            rows_out(fmt, &par::sweep(&ts, alphas, ns, *trials, cli.seed, par::thread_count()).map_err(compute)?)?
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn no_csv(fmt: Format, what: &str) -> Res<()> {
    if fmt == Format::Csv {
        return Err(CliError::Usage(format!("--format csv is not available for {what}")));
    }
    Ok(())
}

fn graph(path: &Path) -> Res<Graph> {
    read_edge_list(path).map_err(compute)
}

fn target(spec: &str) -> Res<Target> {
    Target::parse(spec).map_err(|e| CliError::Usage(e.to_string()))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Res<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(compute)?;
    }
    String::from_utf8(w.into_inner().map_err(compute)?).map_err(compute)
}

fn subset(spec: &str, n: usize) -> Res<VertexSet> {
    let mut s = VertexSet::empty(n);
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().map_err(|_| CliError::Usage(format!("bad vertex index `{part}` in subset")))?;
        if v >= n {
            return Err(CliError::Usage(format!("vertex {v} out of range for a graph on {n} vertices")));
        }
        s.insert(v);
    }
    Ok(s)
}

fn formula(spec: &str) -> Res<(String, Formula, Option<BuiltinName>)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let b: BuiltinName = name.parse().map_err(|_| CliError::Usage(format!("unknown builtin `{name}`")))?;
        return Ok((b.as_str().to_string(), builtin(b), Some(b)));
    }
    let text = fs::read_to_string(spec).map_err(|e| CliError::Compute(format!("IoError: {spec}: {e}")))?;
    Ok((spec.to_string(), parse(&text).map_err(compute)?, None))
}

#[derive(Serialize)]
struct EvalOut {
    formula: String,
    n: usize,
    method: &'static str,
    value: bool,
}

fn cmd_eval(fmt: Format, g: &Path, f: &str, use_oracle: bool) -> Res<String> {
    let g = graph(g)?;
    let (name, phi, b) = formula(f)?;
    let (value, method) = if use_oracle {
        let b = b.ok_or_else(|| CliError::Usage("--oracle needs a builtin formula".into()))?;
        (oracle(&g, b).map_err(compute)?, "oracle")
    } else {
        (eval_sentence(&g, &phi).map_err(compute)?, "formula")
    };
    let o = EvalOut { formula: name, n: g.n(), method, value };
    Ok(match fmt {
        Format::Text => format!("{value}\n"),
        Format::Json => json(&o),
        Format::Csv => csv_rows(&[o])?,
    })
}

#[derive(Serialize)]
struct SolveOut {
    winner: Winner,
    rounds: usize,
    logic: Logic,
    left_n: usize,
    right_n: usize,
}

fn cmd_solve(fmt: Format, a: &GameArgs) -> Res<String> {
    let (l, r) = (graph(&a.left)?, graph(&a.right)?);
    let logic = Logic::from(a.logic);
    let w = Solver::new(logic, Limits::default()).solve(&l, &r, a.rounds).map_err(compute)?;
    let o = SolveOut { winner: w, rounds: a.rounds, logic, left_n: l.n(), right_n: r.n() };
    Ok(match fmt {
        Format::Text => format!("{w}\n"),
        Format::Json => json(&o),
        Format::Csv => csv_rows(&[o])?,
    })
}

#[derive(Serialize)]
struct VertexRow {
    v: usize,
    in_x: bool,
    #[serde(rename = "type")]
    ty: String,
}

#[derive(Serialize)]
struct ClassifyOut {
    vertices: Vec<VertexRow>,
    x_class: Option<String>,
    xbar_class: Option<String>,
    special_vertices: Vec<(usize, String)>,
    pair_type: Option<PairType>,
    table_row: Option<String>,
}

fn lower<T: fmt::Debug>(t: T) -> String {
    format!("{t:?}").to_lowercase()
}

fn cmd_classify(fmt: Format, g: &Path, spec: &str) -> Res<String> {
    let g = graph(g)?;
    let x = subset(spec, g.n())?;
    let vertices = (0..g.n())
        .map(|v| Ok(VertexRow { v, in_x: x.contains(v), ty: classify_vertex(&g, &x, v).map_err(compute)?.to_string() }))
        .collect::<Res<Vec<_>>>()?;
    let nontrivial = x.len() >= 2 && g.n() - x.len() >= 2;
    let (x_class, xbar_class) = if nontrivial {
        (Some(lower(subset_class(&g, &x).map_err(compute)?)), Some(lower(subset_class(&g, &x.complement()).map_err(compute)?)))
    } else {
        (None, None)
    };
    let (special, pt) = if nontrivial {
        let sp = special_vertices(&g, &x).map_err(compute)?.into_iter().map(|(v, s)| (v, lower(s))).collect();
        (sp, Some(pair_type(&g, &x).map_err(compute)?))
    } else {
        (Vec::new(), None)
    };
    let row = pt.as_ref().and_then(table_row).map(|r| r.label());
    let o = ClassifyOut { vertices, x_class, xbar_class, special_vertices: special, pair_type: pt, table_row: row };
    Ok(match fmt {
        Format::Json => json(&o),
        Format::Csv => csv_rows(&o.vertices)?,
        Format::Text => {
            let mut s = String::new();
            for r in &o.vertices {
                s += &format!("{} {} {}\n", r.v, if r.in_x { "X" } else { "Xbar" }, r.ty);
            }
            if let (Some(a), Some(b)) = (&o.x_class, &o.xbar_class) {
                s += &format!("classes: X {a}, Xbar {b}\n");
            }
            for (v, k) in &o.special_vertices {
                s += &format!("special: {v} {k}\n");
            }
            if let Some(pt) = &o.pair_type {
                s += &format!("pair type: {pt}\n");
            }
            s += &format!("table row: {}\n", o.table_row.as_deref().unwrap_or("none"));
            s
        }
    })
}

#[derive(Serialize)]
struct TableOut {
    verdict: TableVerdict,
    row: Option<String>,
    alpha: String,
}

fn verdict_name(v: TableVerdict) -> &'static str {
    match v {
        TableVerdict::AasPresent => "AasPresent",
        TableVerdict::AasAbsent => "AasAbsent",
        TableVerdict::NotListed => "NotListed",
    }
}

fn cmd_table(fmt: Format, spec: &str, alpha: Rational) -> Res<String> {
    let pt: PairType = serde_json::from_str(spec).map_err(|e| CliError::Usage(format!("bad pair type JSON: {e}")))?;
    let v = table_lookup(&pt, alpha).map_err(compute)?;
    let o = TableOut { verdict: v, row: table_row(&pt).map(|r| r.label()), alpha: alpha.to_string() };
    Ok(match fmt {
        Format::Text => format!("{}\n", verdict_name(v)),
        Format::Json => json(&o),
        Format::Csv => csv_rows(&[o])?,
    })
}

#[derive(Serialize)]
struct RespondOut {
    y: Vec<usize>,
    #[serde(flatten)]
    rest: serde_json::Value,
}

fn cmd_respond(fmt: Format, left: &Path, right: &Path, spec: &str) -> Res<String> {
    no_csv(fmt, "strategy respond-set")?;
    let (g, h) = (graph(left)?, graph(right)?);
    let x = subset(spec, g.n())?;
    let r = plan_set_response(&g, &h, &x).map_err(compute)?;
    let y = r.y.to_vec();
    Ok(match fmt {
        Format::Json => {
            let mut rest = serde_json::to_value(&r).map_err(compute)?;
            if let Some(m) = rest.as_object_mut() {
                m.remove("y");
            }
            json(&RespondOut { y, rest })
        }
        _ => {
            let list: Vec<String> = y.iter().map(|v| v.to_string()).collect();
            format!("Y = {{{}}}\nmethod: {}\n", list.join(","), lower(r.method))
        }
    })
}

#[derive(Serialize)]
struct SampleOut {
    n: usize,
    alpha: String,
    seed: u64,
    edges: Vec<(usize, usize)>,
}

fn cmd_sample(fmt: Format, n: usize, alpha: Rational, seed: u64) -> Res<String> {
    no_csv(fmt, "sample")?;
    let s = Sample::draw(n, alpha, seed);
    Ok(match fmt {
        Format::Json => json(&SampleOut { n, alpha: alpha.to_string(), seed, edges: s.edges.clone() }),
        _ => edge_list_string(n, &s.edges),
    })
}

fn rows_out(fmt: Format, rows: &[SweepRow]) -> Res<String> {
    Ok(match fmt {
        Format::Csv => {
            if rows.is_empty() {
                "target,alpha_num,alpha_den,n,trials,successes,p_hat,ci_low,ci_high,seed\n".to_string()
            } else {
                csv_rows(rows)?
            }
        }
        Format::Json => json(&rows),
        Format::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "{} alpha={}/{} n={}: {:.4} [{:.4}, {:.4}] ({}/{})\n",
                    r.target, r.alpha_num, r.alpha_den, r.n, r.p_hat, r.ci_low, r.ci_high, r.successes, r.trials
                )
            })
            .collect(),
    })
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "L",
        Side::Right => "R",
    }
}

fn move_text(m: &Move) -> String {
    match m {
        Move::Vertex(v) => v.to_string(),
        Move::Set(s) => format!("{{{}}}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
    }
}

/// `3` or `{0,2}` in a graph on `n` vertices.
fn parse_move(text: &str, n: usize, logic: Logic) -> Result<Move, String> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        if logic == Logic::Fo {
            return Err("set moves need --logic mso".into());
        }
        let mut s = VertexSet::empty(n);
        for p in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let v: usize = p.parse().map_err(|_| format!("bad index `{p}`"))?;
            if v >= n {
                return Err(format!("vertex {v} out of range (n = {n})"));
            }
            s.insert(v);
        }
        return Ok(Move::Set(s));
    }
    let v: usize = t.parse().map_err(|_| format!("expected a vertex or {{set}}, got `{t}`"))?;
    if v >= n {
        return Err(format!("vertex {v} out of range (n = {n})"));
    }
    Ok(Move::Vertex(v))
}

fn parse_side(t: &str) -> Result<Side, String> {
    match t {
        "L" | "l" | "left" => Ok(Side::Left),
        "R" | "r" | "right" => Ok(Side::Right),
        _ => Err(format!("expected L or R, got `{t}`")),
    }
}

/// A Duplicator answer that does not lose at once when no winning one exists.
fn fallback_reply(s: &GameState, side: Side, spoiler: &Move) -> Move {
    let h = s.graph(side.other());
    match spoiler {
        Move::Set(_) => Move::Set(VertexSet::empty(h.n())),
        Move::Vertex(_) => {
            let ok = |y: usize| apply_move(s, side, spoiler.clone(), Move::Vertex(y)).is_ok_and(|t| partial_iso(&t.a, &t.b, &t.history));
            Move::Vertex((0..h.n()).find(|&y| ok(y)).unwrap_or(0))
        }
    }
}

fn cmd_play(a: &GameArgs, role: Role, log: Option<&Path>, input: &mut dyn BufRead, out: &mut dyn Write) -> Res<()> {
    let (l, r) = (graph(&a.left)?, graph(&a.right)?);
    let logic = Logic::from(a.logic);
    let mut solver = Solver::new(logic, Limits::default());
    solver.check(l.n().max(r.n()), a.rounds).map_err(compute)?;
    let mut s = GameState::new(l, r, a.rounds, logic);
    let mut transcript = vec![format!(
        "# rgl game play --left {} --right {} --rounds {} --logic {} --role {}",
        a.left.display(),
        a.right.display(),
        a.rounds,
        lower(logic),
        lower(role)
    )];
    let say = |out: &mut dyn Write, m: String| out.write_all(m.as_bytes()).map_err(io_err);
    let mut read_line = |out: &mut dyn Write, prompt: &str| -> Res<String> {
        say(out, prompt.to_string())?;
        out.flush().map_err(io_err)?;
        let mut line = String::new();
        if input.read_line(&mut line).map_err(io_err)? == 0 {
            return Err(CliError::Compute("UnexpectedEof: input ended during the game".into()));
        }
        Ok(line.trim().to_string())
    };
    let start = solver.solve(&s.a, &s.b, a.rounds).map_err(compute)?;
    say(out, format!("value of the game: {start} wins with best play\n"))?;
    for round in 1..=a.rounds {
        let (side, sp, dup) = match role {
            Role::Spoiler => {
                let (side, sp) = loop {
                    let line = read_line(out, &format!("round {round}, your move (L|R vertex or {{set}}): "))?;
                    let Some((st, mt)) = line.split_once(char::is_whitespace) else {
                        say(out, "expected a side and a move\n".into())?;
                        continue;
                    };
                    match parse_side(st).and_then(|side| Ok((side, parse_move(mt, s.graph(side).n(), logic)?))) {
                        Ok(v) => break v,
                        Err(e) => say(out, format!("invalid move: {e}\n"))?,
                    }
                };
                let dup = match solver.duplicator_reply(&s, side, &sp).map_err(compute)? {
                    Some(m) => m,
                    None => fallback_reply(&s, side, &sp),
                };
                say(out, format!("Duplicator answers {} {}\n", side_name(side.other()), move_text(&dup)))?;
                (side, sp, dup)
            }
            Role::Duplicator => {
                let (side, sp) = match solver.spoiler_winning_move(&s).map_err(compute)? {
                    Some(x) => x,
                    None => (Side::Left, Move::Vertex(0)),
                };
                say(out, format!("Spoiler plays {} {}\n", side_name(side), move_text(&sp)))?;
                let other = side.other();
                let dup = loop {
                    let line = read_line(out, &format!("round {round}, your answer in {}: ", side_name(other)))?;
                    match parse_move(&line, s.graph(other).n(), logic) {
                        Ok(m) if std::mem::discriminant(&m) == std::mem::discriminant(&sp) => break m,
                        Ok(_) => say(out, "invalid move: answer with the same kind of move\n".into())?,
                        Err(e) => say(out, format!("invalid move: {e}\n"))?,
                    }
                };
                (side, sp, dup)
            }
        };
        transcript.push(format!("{round} {} {} -> {} {}", side_name(side), move_text(&sp), side_name(side.other()), move_text(&dup)));
        s = apply_move(&s, side, sp, dup).map_err(compute)?;
        if let Some(p) = log {
            fs::write(p, transcript.join("\n") + "\n").map_err(io_err)?;
        }
    }
    let winner = if partial_iso(&s.a, &s.b, &s.history) { Winner::Duplicator } else { Winner::Spoiler };
    transcript.push(format!("winner {winner}"));
    if let Some(p) = log {
        fs::write(p, transcript.join("\n") + "\n").map_err(io_err)?;
    }
    say(out, format!("{winner} wins\n"))
}
