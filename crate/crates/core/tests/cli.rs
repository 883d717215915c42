use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matgroup-interp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passes_and_is_byte_stable() {
    let a = run(&["verify", "steinberg", "--ring", "gf:5", "--n", "3"]);
    let b = run(&["verify", "steinberg", "--ring", "gf:5", "--n", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = stdout_json(&a);
    assert_eq!(r["pass"], true);
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn verify_seeded_suite_is_byte_stable() {
    let a = run(&["verify", "decompose", "--ring", "gf:3", "--seed", "7"]);
    let b = run(&["verify", "decompose", "--ring", "gf:3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["parameters"]["seed"], 7);
}

#[test]
fn suite_flag_matches_positional() {
    let a = run(&["verify", "a4", "--ring", "gf:7"]);
    let b = run(&["verify", "--suite", "a4", "--ring", "gf:7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_flag_adds_wall_time() {
    let o = run(&["verify", "steinberg", "--timing"]);
    assert!(stdout_json(&o)["wall_time_ms"].is_u64());
}

#[test]
fn out_formats_and_file() {
    let csv = run(&["verify", "steinberg", "--out", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("suite,check,"));
    let md = run(&["verify", "steinberg", "--out", "md"]);
    assert!(String::from_utf8(md.stdout).unwrap().starts_with("# steinberg"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = run(&["verify", "steinberg", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("suite,check,"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "steinberg", "--ring", "gf:4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "/nonexistent/m.json"]).status.code(), Some(2));
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"ring\": \"gf:3\",\n \"n\": 2,\n \"entries\": [[1,0],[0,1]\n}").unwrap();
    let o = run(&["decompose", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn decompose_identity_is_empty_word() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.json", &json!({"ring": "gf:5", "n": 3, "entries": [[1,0,0],[0,1,0],[0,0,1]]}));
    let o = run(&["decompose", &f]);
    assert_eq!(o.status.code(), Some(0));
    let w = stdout_json(&o);
    assert_eq!(w["letters"], json!([]));
}

#[test]
fn decompose_errors_exit_one_with_name() {
    let dir = tempfile::tempdir().unwrap();
    let singular = write(dir.path(), "s.json", &json!({"ring": "gf:3", "n": 2, "entries": [[1,1],[1,1]]}));
    let o = run(&["decompose", &singular]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("NotInvertible"));

    let det2 = write(dir.path(), "d.json", &json!({"ring": "gf:5", "n": 2, "entries": [[2,0],[0,1]]}));
    let o = run(&["decompose", &det2]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("DetNotOne"));
    let o = run(&["decompose", &det2, "--gl"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout_json(&o)["diag"].is_object());
}

#[test]
fn interpret_mul_and_add() {
    let o = run(&["interpret", "--ring", "gf:7", "--n", "3", "--op", "mul", "--x", "2", "--y", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["value"], "6");
    let o = run(&["interpret", "--ring", "gf:7", "--carrier", "2,1", "--op", "add", "--x", "5", "--y", "4"]);
    let v = stdout_json(&o);
    assert_eq!(v["value"], "2");
    assert_eq!(v["carrier"], json!([2, 1]));
}

#[test]
fn interpret_lambda_decodes_input() {
    let dir = tempfile::tempdir().unwrap();
    let m = json!({"ring": "gf:2", "n": 3, "entries": [[0,1,0],[0,0,1],[1,0,0]]});
    let f = write(dir.path(), "g.json", &m);
    let o = run(&["interpret", "--ring", "gf:2", "--host", "sl", "--op", "lambda", "--matrix", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["decoded"], m);
}

#[test]
fn interpret_bad_carrier_is_usage_error() {
    let o = run(&["interpret", "--op", "mul", "--x", "1", "--y", "1", "--carrier", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deform_build_tn_and_gl() {
    let dir = tempfile::tempdir().unwrap();
    let tn = write(
        dir.path(),
        "tn.json",
        &json!({"ring": "gf:3", "n": 3, "Z": [2], "cocycle": {"table": {
            "(1,0)|(1,0)": "(1)", "(1,0)|(1,1)": "(1)", "(1,1)|(1,0)": "(1)", "(1,1)|(1,1)": "(1)"
        }}}),
    );
    let o = run(&["deform", "build", &tn, "--check", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    assert_eq!(r["parameters"]["order"], 216);
    assert_eq!(r["pass"], true);

    let gl = write(
        dir.path(),
        "gl.json",
        &json!({"kind": "gl", "ring": "gf:7", "n": 3, "B": [3], "h": {"table": {"(1)|(2)": "(1)", "(2)|(1)": "(1)", "(2)|(2)": "(1)"}}}),
    );
    let o = run(&["deform", "build", &gl, "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["pass"], true);
}
