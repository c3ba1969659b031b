use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden").join(name)
}

fn mubar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubar")).args(args).output().expect("binary runs")
}

fn compute_json(args: &[&str]) -> Value {
    let out = mubar(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn borromean_report() {
    let v = compute_json(&["compute", p(&golden("br.braid")), "--max-len", "4"]);
    let s = &v["obstruction"];
    assert_eq!(s["first_nonvanishing"], 3);
    assert_eq!(s["witness"], "123");
    assert_eq!(s["excluded_solvable_from"], 0);
    assert_eq!(s["value"].as_str().unwrap().trim_start_matches('-'), "1");
}

#[test]
fn unlink_vanishes() {
    let v = compute_json(&["compute", p(&golden("unlink3.pd")), "--max-len", "6"]);
    assert_eq!(v["table"]["summary"]["all_vanish_up_to"], 6);
    assert!(v["obstruction"]["first_nonvanishing"].is_null());
}

#[test]
fn single_index() {
    let v = compute_json(&["compute", p(&golden("commutator.braid")), "--index", "313323"]);
    let e = &v["entries"][0];
    assert_eq!(e["I"], "313323");
    // the length-6 value computed here; see the README on the published value
    assert_eq!(e["mu"], 0);
    let v = compute_json(&["compute", p(&golden("commutator.braid")), "--index", "112232"]);
    assert_eq!(v["entries"][0]["mu"], 1);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let input = golden("bd-hopf.pd");
    for (path, extra) in [(&a, &["--sequential"][..]), (&b, &[][..])] {
        let mut args = vec!["compute", p(&input), "--output", p(path)];
        args.extend_from_slice(extra);
        let out = mubar(&args);
        assert!(out.status.success());
        assert!(String::from_utf8_lossy(&out.stdout).contains("mu-bar"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn bing_then_compute() {
    let dir = tempfile::tempdir().unwrap();
    let bd = dir.path().join("bd.pd");
    let out = mubar(&["op", "bing", p(&golden("hopf.pd")), "--output", p(&bd)]);
    assert!(out.status.success());
    let v = compute_json(&["compute", p(&bd)]);
    assert_eq!(v["components"], 4);
    assert_eq!(v["obstruction"]["first_nonvanishing"], 4);
    assert_eq!(std::fs::read_to_string(&bd).unwrap(), std::fs::read_to_string(golden("bd-hopf.pd")).unwrap());
}

#[test]
fn iterated_double_is_out_of_budget() {
    let dir = tempfile::tempdir().unwrap();
    let bd2 = dir.path().join("bd2.pd");
    let out = mubar(&["op", "bing", "--times", "2", p(&golden("br.braid")), "--output", p(&bd2)]);
    assert!(out.status.success());
    let v = compute_json(&["compute", p(&bd2), "--index", "12"]);
    assert_eq!(v["components"], 12);
    assert!(v["linking_numbers"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == 0));
    let out = mubar(&["compute", p(&bd2), "--max-len", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = mubar(&["op", "bing", "--times", "2", p(&golden("br.braid")), "--cap", "100"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn stacking_doubles() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.braid");
    let br = golden("br.braid");
    assert!(mubar(&["op", "stack", p(&br), p(&br), "--output", p(&s)]).status.success());
    let one = compute_json(&["compute", p(&br), "--index", "123"])["entries"][0]["mu"].as_i64().unwrap();
    let two = compute_json(&["compute", p(&s), "--index", "123"])["entries"][0]["mu"].as_i64().unwrap();
    assert_eq!(two, 2 * one);
}

#[test]
fn whitehead_and_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.pd");
    assert!(mubar(&["op", "whitehead", "--twist", "-2", "--output", p(&w)]).status.success());
    let v = compute_json(&["compute", p(&w), "--index", "1122", "--index", "1212"]);
    assert_eq!(v["entries"][0]["mu"], 2);
    assert_eq!(v["entries"][1]["mu"], -4);
    let v = compute_json(&["compute", p(&golden("hopf.pd")), "--orientation", "+-", "--index", "12"]);
    assert_eq!(v["entries"][0]["mu"], -1);
    let out = mubar(&["compute", p(&golden("hopf.pd")), "--orientation", "+"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pd");
    std::fs::write(&bad, r#"{"type": "braid", "strands": 2, "word": "s1"}"#).unwrap();
    assert_eq!(mubar(&["compute", p(&bad)]).status.code(), Some(2));
    assert_eq!(mubar(&["compute", "/nonexistent.pd"]).status.code(), Some(2));
    let out = mubar(&["compute", p(&golden("hopf.pd")), "--index", "13"]);
    assert_eq!(out.status.code(), Some(6));
    let out = mubar(&["compute", p(&golden("bd-br.pd")), "--max-len", "6", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_matrix() {
    let out = mubar(&["verify"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
    let out = mubar(&["verify", "--only", "magnus"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success());
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}

#[test]
fn verify_names_a_perturbed_file() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(golden("")).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let path = dir.path().join("whitehead.pd");
    let text = std::fs::read_to_string(&path).unwrap().replacen("\"sign\": 1", "\"sign\": -1", 1);
    std::fs::write(&path, text).unwrap();
    let out = mubar(&["verify", "--golden-dir", p(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("FAIL") && l.contains("whitehead.pd")), "{stdout}");
}
