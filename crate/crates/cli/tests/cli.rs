use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn symrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symrep")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn gen(dir: &TempDir, file: &str, spec: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut args = vec!["gen"];
    args.extend_from_slice(spec);
    args.extend(["--out", path.to_str().unwrap()]);
    assert!(symrep(&args).status.success());
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn rep_triangles_in_k4() {
    let dir = TempDir::new().unwrap();
    let k4 = gen(&dir, "k4.graph", &["complete", "n=4"]);
    let c3 = gen(&dir, "c3.graph", &["cycle", "l=3"]);
    let out = symrep(&["--json", "rep", "--host", s(&k4), "--pattern", s(&c3), "--mode", "vertex", "--symmetric"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["value"].as_u64(), r["symmetric_value"].as_u64()), (Some(2), Some(4)));
    assert_eq!(r["bound_factor"], 3);
    assert_eq!(r["mode"], "vertex");

    let plain = symrep(&["rep", "--host", s(&k4), "--pattern", s(&c3)]);
    assert!(stdout(&plain).starts_with("value 2\n"));
}

#[test]
fn check_theorem1_passes() {
    let dir = TempDir::new().unwrap();
    let c3 = gen(&dir, "c3.graph", &["cycle", "l=3"]);
    let out = symrep(&["check", "theorem1", "--k", s(&c3), "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("verdict: pass\n"));
    let r = json(&symrep(&["--json", "check", "theorem1", "--k", s(&c3), "--m", "2", "--connected"]));
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["quantities"]["symmetric_value"], 6);
}

#[test]
fn symmetrize_z6() {
    let dir = TempDir::new().unwrap();
    let z6 = write(
        &dir,
        "z6.json",
        r#"{"points": 6, "generators": [[1, 2, 3, 4, 5, 0]], "family": [[0, 3], [1, 4], [2, 5]], "transversal": [0, 1, 2]}"#,
    );
    let out = symrep(&["--json", "symmetrize", "--action", s(&z6)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["y"].as_array().unwrap().len(), 6);
    assert!(r["neumann_sums"].as_array().unwrap().iter().all(|t| t["sum"] == "1"));
}

#[test]
fn symmetrize_without_transversal_uses_a_minimum_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.json", r#"{"points": 4, "generators": [[1, 0, 2, 3]], "family": [[0, 2], [1, 2]]}"#);
    let r = json(&symrep(&["--json", "symmetrize", "--action", s(&f)]));
    assert_eq!(r["x_size"], 1);
    assert_eq!(r["y"], serde_json::json!([2]));
}

#[test]
fn input_errors_exit_2_and_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.graph", "graph undirected loops=0 n=3\ne 0 1\ne 0 9\n");
    let c3 = gen(&dir, "c3.graph", &["cycle", "l=3"]);
    let out = symrep(&["rep", "--host", s(&bad), "--pattern", s(&c3)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let not_transversal = write(&dir, "x.json", r#"{"points": 2, "family": [[0], [1]], "transversal": [0]}"#);
    assert_eq!(symrep(&["symmetrize", "--action", s(&not_transversal)]).status.code(), Some(2));
    let bad_gen = write(&dir, "g.json", r#"{"points": 2, "generators": [[0, 0]]}"#);
    let out = symrep(&["orbits", "--action", s(&bad_gen)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators[0]"));

    assert_eq!(symrep(&["check", "2k2", "--m", "1"]).status.code(), Some(2));
    assert_eq!(symrep(&["gen", "nonsense"]).status.code(), Some(2));
    assert_eq!(symrep(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(symrep(&["rep", "--host", "/nonexistent", "--pattern", s(&c3)]).status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "p.graph", &["path", "l=6"]);
    assert_eq!(symrep(&["check", "theorem2", "--host", s(&path)]).status.code(), Some(2));
    assert_eq!(symrep(&["mars-demo", "--host", s(&path)]).status.code(), Some(2));
}

#[test]
fn bundled_checks_pass() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(&dir, "c4.graph", &["cycle", "l=4"]);
    let edge = gen(&dir, "e.graph", &["path", "l=1"]);
    let host = gen(&dir, "k24.graph", &["complete-bipartite", "m=2", "l=4"]);
    let petersen = gen(&dir, "pet.graph", &["petersen"]);
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "corollary1", "--host", s(&petersen), "--pattern", s(&c4), "--mode", "edge"],
        vec!["check", "disconnected-bound", "--k1", s(&edge), "--k2", s(&edge), "--host", s(&host)],
        vec!["check", "lemma1", "--nmax", "5"],
        vec!["check", "find-lemma1", "--nmax", "5"],
        vec!["check", "theorem2", "--host", s(&petersen)],
        vec!["check", "theorem2", "--catalog"],
        vec!["check", "proposition1", "--case", "directed-star", "--l", "3", "--m", "2"],
        vec!["check", "proposition1", "--case", "path-star", "--l", "2", "--m", "4"],
        vec!["check", "proposition1", "--case", "claw-honeycomb", "--n", "3"],
        vec!["check", "proposition1", "--case", "large-star", "--l", "5", "--m", "2"],
        vec!["check", "proposition1", "--case", "no-hanging-edges", "--k", s(&c4), "--m", "2", "--connected"],
        vec!["check", "2k2", "--m", "3"],
    ];
    for args in cases {
        let out = symrep(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let mut with_json = vec!["--json"];
        with_json.extend(&args);
        let r = json(&symrep(&with_json));
        let reports = if r.is_array() { r.as_array().unwrap().clone() } else { vec![r] };
        for r in reports {
            assert_eq!(r["verdict"], "pass", "{args:?}");
            for key in ["check", "instance", "relation", "quantities", "witnesses"] {
                assert!(r.get(key).is_some(), "{args:?} lacks {key}");
            }
        }
    }
}

#[test]
fn mars_demo_on_edgeless_digraph() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "e6.graph", &["edgeless-digraph", "n=6"]);
    let out = symrep(&["--json", "mars-demo", "--host", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["quantities"]["x"].as_u64(), r["quantities"]["y"].as_u64()), (Some(2), Some(6)));
}

#[test]
fn aut_orbits_occ_classify() {
    let dir = TempDir::new().unwrap();
    let petersen = gen(&dir, "pet.graph", &["petersen"]);
    let r = json(&symrep(&["--json", "aut", "--graph", s(&petersen)]));
    assert_eq!(r["order"], "120");
    assert_eq!(r["vertex_orbits"]["classes"].as_array().unwrap().len(), 1);

    let path = gen(&dir, "p.graph", &["path", "l=2"]);
    let r = json(&symrep(&["--json", "orbits", "--graph", s(&path)]));
    assert_eq!(r["vertex_orbits"]["classes"], serde_json::json!([[0, 2], [1]]));

    let k4 = gen(&dir, "k4.graph", &["complete", "n=4"]);
    let c3 = gen(&dir, "c3.graph", &["cycle", "l=3"]);
    let r = json(&symrep(&["--json", "occ", "--host", s(&k4), "--pattern", s(&c3)]));
    assert_eq!(r["count"], 4);

    let chair = gen(&dir, "chair.graph", &["chair"]);
    assert_eq!(json(&symrep(&["--json", "classify", "--graph", s(&chair)]))["class"], "ContainsD5");
    assert_eq!(stdout(&symrep(&["classify", "--graph", s(&path)])), "Chain\n");
}

#[test]
fn gen_round_trips_and_reports_are_stable() {
    let dir = TempDir::new().unwrap();
    let h = gen(&dir, "h.graph", &["honeycomb", "n=3"]);
    let text = std::fs::read_to_string(&h).unwrap();
    assert!(text.starts_with("graph undirected loops=0 n=18\n"));
    assert_eq!(stdout(&symrep(&["gen", "honeycomb", "n=3"])), text);
    let a = stdout(&symrep(&["--json", "check", "theorem2", "--catalog"]));
    let b = stdout(&symrep(&["--json", "check", "theorem2", "--catalog"]));
    assert_eq!(a, b);
    assert!(stdout(&symrep(&["gen", "--list"])).contains("star-ladder"));
}
