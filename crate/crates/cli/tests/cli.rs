use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use posetpow::io::{parse_poset, WitnessDocument};
use posetpow::{are_isomorphic, standard, verify_witness, StandardKind};
use tempfile::TempDir;

fn posetpow() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_posetpow"));
    cmd.env_remove("POSETPOW_GUARD").env_remove("POSETPOW_DENSE_GUARD");
    cmd
}

fn run(args: &[&str]) -> Output {
    posetpow().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Writes `build <kind> [size]` output into `dir/name.json`.
fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_emits_documents() {
    let out = run(&["build", "crown", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"n":4,"covers":[[0,2],[0,3],[1,2],[1,3]]}"#);
    assert_eq!(stdout(&run(&["build", "chain", "2"])).trim(), r#"{"n":2,"covers":[[0,1]]}"#);
    assert_eq!(run(&["build", "crown", "3"]).status.code(), Some(2));
}

#[test]
fn crown_power_stats_and_dot() {
    let dir = TempDir::new().unwrap();
    let crown = build(dir.path(), "crown", &["crown", "4"]);
    let c2 = build(dir.path(), "c2", &["chain", "2"]);
    let out = run(&["expo", s(&crown), s(&c2), "--stats"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "size=8 connected=true |D|=4 |C|=8");

    let expo = dir.path().join("expo.json");
    assert!(run(&["expo", s(&crown), s(&c2), "-o", s(&expo)]).status.success());
    let power = parse_poset(&std::fs::read_to_string(&expo).unwrap()).unwrap();
    assert_eq!(power.len(), 8);

    let dot = stdout(&run(&["expo", s(&crown), s(&c2), "--dot", "--map-labels"]));
    assert!(dot.starts_with("digraph hasse {"));
    assert_eq!(dot.matches(" -> ").count(), power.covers().len());
    assert!(dot.contains("label=\"(0,2)\""));

    let render = stdout(&run(&["render", s(&expo)]));
    assert_eq!(render.matches(" -> ").count(), 8);
}

#[test]
fn empty_exponent_reports_undefined_c() {
    let dir = TempDir::new().unwrap();
    let c2 = build(dir.path(), "c2", &["chain", "2"]);
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"n":0,"covers":[]}"#).unwrap();
    let out = run(&["expo", s(&c2), s(&empty), "--stats"]);
    assert!(stdout(&out).contains("|C|=undefined"), "{}", stdout(&out));
}

#[test]
fn iso_exit_codes() {
    let dir = TempDir::new().unwrap();
    let crown = build(dir.path(), "crown", &["crown", "4"]);
    let c4 = build(dir.path(), "c4", &["chain", "4"]);
    let shuffled = dir.path().join("shuffled.json");
    std::fs::write(&shuffled, r#"{"n":4,"covers":[[3,0],[3,1],[2,0],[2,1]]}"#).unwrap();

    let yes = run(&["iso", s(&crown), s(&shuffled)]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("isomorphic\nbijection "));
    let no = run(&["iso", s(&crown), s(&c4)]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no).trim(), "not isomorphic");
}

#[test]
fn product_sum_and_catalog() {
    let dir = TempDir::new().unwrap();
    let c2 = build(dir.path(), "c2", &["chain", "2"]);
    let grid = parse_poset(&stdout(&run(&["product", s(&c2), s(&c2)]))).unwrap();
    let sum = parse_poset(&stdout(&run(&["sum", s(&c2), s(&c2)]))).unwrap();
    assert_eq!((grid.len(), grid.is_connected()), (4, true));
    assert_eq!((sum.len(), sum.is_connected()), (4, false));
    assert_eq!(stdout(&run(&["catalog", "4"])).lines().count(), 16);
    assert_eq!(stdout(&run(&["catalog", "4", "--connected"])).lines().count(), 10);
}

#[test]
fn retract_and_factor() {
    let dir = TempDir::new().unwrap();
    let c3 = build(dir.path(), "c3", &["chain", "3"]);
    let crown = build(dir.path(), "crown", &["crown", "4"]);
    let yes = run(&["retract", s(&c3), "--onto", "0,2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("map 0->0 1->0 2->2"));
    assert_eq!(run(&["retract", s(&crown), "--onto", "0,1"]).status.code(), Some(1));

    let facts = stdout(&run(&["factor", s(&crown)]));
    assert_eq!(facts.lines().count(), 2);
}

#[test]
fn refine_prints_a_verifiable_witness() {
    let dir = TempDir::new().unwrap();
    let c2 = build(dir.path(), "c2", &["chain", "2"]);
    let a = dir.path().join("a.json");
    let d = dir.path().join("d.json");
    assert!(run(&["expo", s(&c2), s(&c2), "-o", s(&a)]).status.success());
    std::fs::write(&d, stdout(&run(&["product", s(&c2), s(&c2)]))).unwrap();

    let out = run(&["--json", "refine", s(&a), s(&c2), s(&c2), s(&d), "--timeout", "60"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: WitnessDocument = serde_json::from_str(stdout(&out).trim()).unwrap();
    let w = doc.to_witness().unwrap();
    let read = |p: &Path| parse_poset(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert!(verify_witness(&read(&a), &read(&c2), &read(&c2), &read(&d), &w));
    assert!(are_isomorphic(&w.e, &standard(StandardKind::Chain(2)).unwrap()).is_some());

    let exhausted = run(&["refine", s(&a), s(&c2), s(&c2), s(&d), "--max-e", "1"]);
    assert_eq!(exhausted.status.code(), Some(1));
    assert!(stdout(&exhausted).contains("not a counterexample"));

    let bad = run(&["refine", s(&a), s(&a), s(&c2), s(&d)]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lemma_suite_reports_zero_counterexamples() {
    let out = run(&["lemmas", "--max-size", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["lemma1", "lemma2", "lemma3", "prop4", "lemma5"] {
        assert!(text.lines().any(|l| l.starts_with(name) && l.contains("counterexamples=0")), "{text}");
    }
    assert!(text.contains("0 counterexamples"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["expo", "/nonexistent/a.json", "/nonexistent/b.json"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "not json").unwrap();
    let out = run(&["render", s(&junk)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn guard_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let crown = build(dir.path(), "crown", &["crown", "4"]);
    let c2 = build(dir.path(), "c2", &["chain", "2"]);
    let capped = posetpow().env("POSETPOW_GUARD", "2").args(["expo", s(&crown), s(&c2)]).output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("guard"));
    let flag = run(&["--guard", "2", "expo", s(&crown), s(&c2)]);
    assert_eq!(flag.status.code(), Some(2));
    let roomy = posetpow().env("POSETPOW_GUARD", "100").args(["expo", s(&crown), s(&c2)]).output().unwrap();
    assert_eq!(roomy.status.code(), Some(0));
}
