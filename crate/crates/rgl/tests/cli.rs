use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::io::Write;

use rgl::io::write_edge_list;
use rgl_core::graph::VertexSet;
use rgl_core::strategy::rich_forest;
use rgl_core::types::pair_type;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn rgl(args: &[&str]) -> Output {
    rgl_env(args, &[])
}

fn rgl_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rgl"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("run rgl")
}

fn rgl_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rgl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn rgl");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares with `tests/golden/NAME`; `RGL_BLESS=1` rewrites the file.
fn golden(name: &str, got: &str) {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("RGL_BLESS").is_some() {
        std::fs::write(&path, got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "golden {name}");
}

#[test]
fn eval_triangle_free_on_triangle() {
    let o = rgl(&["eval", "--graph", &data("triangle.txt"), "--formula", "builtin:triangle_free"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "false\n");
    let o = rgl(&["eval", "--graph", &data("triangle.txt"), "--formula", "builtin:triangle_free", "--oracle"]);
    assert_eq!(stdout(&o), "false\n");
    let o = rgl(&["eval", "--graph", &data("2k1.txt"), "--formula", &data("has_edge.fo")]);
    assert_eq!(stdout(&o), "false\n");
    let o = rgl(&["eval", "--graph", &data("k2.txt"), "--formula", &data("has_edge.fo"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], true);
}

#[test]
fn game_solve_k2_against_two_points() {
    let o = rgl(&["game", "solve", "--left", &data("k2.txt"), "--right", &data("2k1.txt"), "--rounds", "2", "--logic", "fo"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "Spoiler\n"));
    let o = rgl(&["game", "solve", "--left", &data("k2.txt"), "--right", &data("2k1.txt"), "--rounds", "1", "--logic", "fo"]);
    assert_eq!(stdout(&o), "Duplicator\n");
    let o = rgl(&["game", "solve", "--left", &data("k2.txt"), "--right", &data("2k1.txt"), "--rounds", "2", "--logic", "fo", "--format", "json"]);
    golden("solve.json", &stdout(&o));
}

const ROW3: &str = r#"{"x":["DC","CC"],"xbar":["CD","CI","CC"],"special":"none"}"#;

#[test]
fn table_row_three() {
    let o = rgl(&["table", "--pairtype", ROW3, "--alpha", "9/10"]);
    assert_eq!(stdout(&o), "AasAbsent\n");
    let o = rgl(&["table", "--pairtype", ROW3, "--alpha", "3/4"]);
    assert_eq!(stdout(&o), "AasPresent\n");
    let o = rgl(&["table", "--pairtype", ROW3, "--alpha", "3/4", "--format", "json"]);
    golden("table_row3.json", &stdout(&o));
}

#[test]
fn classify_path() {
    let o = rgl(&["classify", "--graph", &data("p5.txt"), "--subset", "0,1,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    golden("classify_p5.json", &stdout(&o));
    let o = rgl(&["classify", "--graph", &data("p5.txt"), "--subset", "0,1,2", "--format", "csv"]);
    golden("classify_p5.csv", &stdout(&o));
    let o = rgl(&["classify", "--graph", &data("p5.txt"), "--subset", "0,1,2"]);
    golden("classify_p5.txt", &stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table", "--pairtype", ROW3, "--alpha", "0.9"],
        vec!["frobnicate"],
        vec!["game", "solve", "--left", "a", "--right", "b", "--rounds", "2", "--logic", "so"],
        vec!["estimate", "--target", "probe:nothing", "--alpha", "1", "--n", "10", "--trials", "1"],
        vec!["table", "--pairtype", "{", "--alpha", "1/2"],
    ] {
        let o = rgl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    let o = rgl(&["classify", "--graph", &data("p5.txt"), "--subset", "0,9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rgl(&["sample", "--n", "5", "--alpha", "1/2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one_with_name() {
    let o = rgl(&["eval", "--graph", "/nonexistent/g.txt", "--formula", "builtin:conn"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("IoError"));
    let o = rgl(&["table", "--pairtype", ROW3, "--alpha", "3/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("AlphaOutOfRange"), "{}", stderr(&o));
    let o = rgl(&["eval", "--graph", &data("triangle.txt"), "--formula", "builtin:mso_98", "--oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotAForest"));
    let o = rgl(&["strategy", "respond-set", "--left", &data("forest6.txt"), "--right", &data("p5.txt"), "--subset", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("InsufficientRichness"), "{}", stderr(&o));
}

#[test]
fn sweep_csv_is_stable_and_thread_independent() {
    let args = [
        "sweep", "--targets", "oracle:triangle_free,fo3_1", "--alphas", "1,2", "--ns", "30,60", "--trials", "200", "--seed", "17", "--format", "csv",
    ];
    let one = rgl_env(&args, &[("RGL_THREADS", "1")]);
    let three = rgl_env(&args, &[("RGL_THREADS", "3")]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, rgl_env(&args, &[("RGL_THREADS", "1")]).stdout);
    let text = stdout(&one);
    assert!(text.starts_with("target,alpha_num,alpha_den,n,trials,successes,p_hat,ci_low,ci_high,seed\n"));
    assert_eq!(text.lines().count(), 1 + 8);
    golden("sweep.csv", &text);
    let empty = rgl(&["sweep", "--targets", "fo3_1", "--alphas", "1", "--ns", "30", "--trials", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&empty)).unwrap();
    assert_eq!((v[0]["successes"].as_u64(), v[0]["ci_low"].as_f64(), v[0]["ci_high"].as_f64()), (Some(0), Some(0.0), Some(1.0)));
}

#[test]
fn seed_flows_to_sample_and_estimate() {
    let a = rgl(&["sample", "--n", "40", "--alpha", "1/2", "--seed", "5"]);
    let b = rgl(&["sample", "--n", "40", "--alpha", "1/2", "--seed", "5"]);
    let c = rgl(&["sample", "--n", "40", "--alpha", "1/2", "--seed", "6"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let g = rgl::io::parse_edge_list(&stdout(&a)).unwrap();
    assert_eq!(g.n(), 40);
    let j = rgl(&["sample", "--n", "8", "--alpha", "1/2", "--seed", "5", "--format", "json"]);
    golden("sample.json", &stdout(&j));
    let e = rgl(&["estimate", "--target", "probe:indep_neighborhood_vertex", "--alpha", "1/2", "--n", "50", "--trials", "40", "--seed", "2", "--format", "json"]);
    golden("estimate.json", &stdout(&e));
}

#[test]
fn respond_set_matches_pair_type() {
    let dir = tempfile::tempdir().unwrap();
    let h = rich_forest(7, 4);
    let g = rgl_core::graph::named::path(6).disjoint_union(&rgl_core::graph::named::star(3)).disjoint_union(&rgl_core::graph::Graph::empty(2));
    let (gp, hp) = (dir.path().join("g.txt"), dir.path().join("h.txt"));
    std::fs::write(&gp, write_edge_list(&g)).unwrap();
    std::fs::write(&hp, write_edge_list(&h)).unwrap();
    let o = rgl(&["strategy", "respond-set", "--left", gp.to_str().unwrap(), "--right", hp.to_str().unwrap(), "--subset", "0,2,4,6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let y: Vec<usize> = v["y"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    let x = VertexSet::from_iter(g.n(), [0, 2, 4, 6]);
    assert_eq!(pair_type(&h, &VertexSet::from_iter(h.n(), y)).unwrap(), pair_type(&g, &x).unwrap());
    assert!(v["method"].is_string());
    let t = rgl(&["strategy", "respond-set", "--left", gp.to_str().unwrap(), "--right", hp.to_str().unwrap(), "--subset", "0,2,4,6"]);
    assert!(stdout(&t).starts_with("Y = {"));
}

#[test]
fn scripted_play_and_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("play.log");
    let args = [
        "game", "play", "--role", "spoiler", "--left", &data("k2.txt"), "--right", &data("2k1.txt"), "--rounds", "2", "--logic", "fo", "--log",
        log.to_str().unwrap(),
    ];
    let o = rgl_stdin(&args, "X 1\nL 7\nL 0\nR 1\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("invalid move"));
    assert!(out.ends_with("Spoiler wins\n"));
    let t = std::fs::read_to_string(&log).unwrap();
    assert!(t.lines().last() == Some("winner Spoiler"), "{t}");
    assert_eq!(t.lines().filter(|l| l.contains("->")).count(), 2);
    // Duplicator side: the engine finds the winning Spoiler line.
    let o = rgl_stdin(&["game", "play", "--role", "duplicator", "--left", &data("k2.txt"), "--right", &data("2k1.txt"), "--rounds", "2", "--logic", "fo"], "0\n1\n");
    assert!(stdout(&o).ends_with("Spoiler wins\n"));
    let o = rgl_stdin(&["game", "play", "--role", "duplicator", "--left", &data("k2.txt"), "--right", &data("k2.txt"), "--rounds", "2", "--logic", "mso"], "{}\n0\n0\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = rgl_stdin(&args, "L 0\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UnexpectedEof"));
}

#[test]
fn help_exits_zero() {
    let o = rgl(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sweep"));
}

