use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_folnerlab"))
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn assert_valid(schema: &str, v: &Value) {
    let text = fs::read_to_string(schema_dir().join(schema)).unwrap();
    let s: Value = serde_json::from_str(&text).unwrap();
    let compiled = JSONSchema::compile(&s).unwrap();
    if let Err(errors) = compiled.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{schema}: {msgs:?}");
    };
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = bin().args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8(out.stderr).unwrap())
}

fn group_element(dir: &TempDir, name: &str, ring: &str, terms: &[(&str, &str)]) -> String {
    let terms: Vec<String> = terms
        .iter()
        .map(|(l, c)| format!(r#"{{"irrep":{l},"row":1,"col":1,"re":"{c}","im":"0"}}"#))
        .collect();
    let text = format!(r#"{{"algebra":"{ring}","mode":"exact","terms":[{}]}}"#, terms.join(","));
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn folner_su2_certificate() {
    let (code, v, _) = run(&["folner", "--ring", "su2", "--S", "1", "--epsilon", "1/2", "--max-radius", "64"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "folner_certificate");
    assert_valid("folner.schema.json", &v);
    // strictness re-checked here: |∂sym| · 2 < |F|
    let b: u128 = v["boundary_weight"].as_str().unwrap().parse().unwrap();
    let f: u128 = v["window_weight"].as_str().unwrap().parse().unwrap();
    assert!(2 * b < f);
}

#[test]
fn folner_exhaustion_exits_two() {
    let (code, v, _) = run(&["folner", "--ring", "su2", "--S", "1", "--epsilon", "1/100", "--max-radius", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["kind"], "exhaustion_report");
    assert_valid("folner.schema.json", &v);
}

#[test]
fn float_epsilon_is_rejected() {
    let (code, _, err) = run(&["folner", "--ring", "su2", "--S", "1", "--epsilon", "0.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("p/q"), "{err}");
}

#[test]
fn unknown_flag_is_rejected() {
    let (code, _, _) = run(&["folner", "--ring", "su2", "--S", "1", "--epsilon", "1/2", "--bogus", "1"]);
    assert_ne!(code, 0);
}

#[test]
fn profile_csv_has_exact_columns() {
    let out = bin()
        .args(["profile", "--ring", "group:Z", "--S", "1,-1", "--max-radius", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "radius,window_weight,boundary_weight,symmetric_boundary_weight,ratio,ratio_decimal");
    assert!(lines[2].starts_with("1,3,2,4,4/3,"));
    let (code, v, _) = run(&["profile", "--ring", "su2", "--S", "1", "--max-radius", "5", "--format", "json"]);
    assert_eq!(code, 0);
    assert_valid("profile.schema.json", &v);
    let last = &v["rows"][5];
    assert_eq!(
        (&last["window_weight"], &last["boundary_weight"], &last["symmetric_boundary_weight"]),
        (&Value::from("91"), &Value::from("36"), &Value::from("85"))
    );
}

#[test]
fn kernel_dim_of_laplacian() {
    let dir = TempDir::new().unwrap();
    let lap = group_element(&dir, "lap.json", "group:Z", &[("-1", "-1"), ("0", "2"), ("1", "-1")]);
    let (code, v, _) = run(&["kernel-dim", "--ring", "group:Z", "--matrix", &lap, "--window", "20"]);
    assert_eq!(code, 0);
    assert_valid("kernel-dim.schema.json", &v);
    assert_eq!(v["estimate"]["lower"], "0");
    assert_eq!(v["estimate"]["upper"], "2/41");
    assert_eq!(v["estimate"]["window_weight"], "41");
}

#[test]
fn ring_mismatch_is_an_error() {
    let dir = TempDir::new().unwrap();
    let lap = group_element(&dir, "lap.json", "group:Z", &[("0", "1")]);
    let (code, _, err) = run(&["kernel-dim", "--ring", "group:Z^2", "--matrix", &lap, "--window", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("does not match"), "{err}");
}

#[test]
fn schema_violation_reports_path() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(
        &p,
        r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":2,"col":1,"re":"1","im":"0"}]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["zero-divisor", "--ring", "group:Z", "--element", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("out of range"), "{err}");
    fs::write(&p, r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":1,"col":1,"re":0.5,"im":"0"}]}"#)
        .unwrap();
    let (code, _, err) = run(&["zero-divisor", "--ring", "group:Z", "--element", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("$.terms[0].re"), "{err}");
}

#[test]
fn zero_divisor_outcomes() {
    let dir = TempDir::new().unwrap();
    let g = group_element(&dir, "g.json", "group:Z", &[("0", "1"), ("1", "-1")]);
    let (code, v, _) = run(&["zero-divisor", "--ring", "group:Z", "--element", &g, "--max-radius", "10"]);
    assert_eq!(code, 2);
    assert_valid("zero-divisor.schema.json", &v);
    let et = group_element(&dir, "et.json", "group:ZxZ/2", &[("[0,0]", "1"), ("[0,1]", "-1")]);
    let (code, v, _) = run(&["zero-divisor", "--ring", "group:ZxZ/2", "--element", &et, "--max-radius", "2"]);
    assert_eq!(code, 0);
    assert_valid("zero-divisor.schema.json", &v);
    assert_eq!(v["verification"]["vanishes"], true);
}

#[test]
fn ore_pair_on_heisenberg() {
    let dir = TempDir::new().unwrap();
    let a = group_element(&dir, "a.json", "group:heisenberg", &[("[0,0,0]", "1"), ("[1,0,0]", "-1")]);
    let s = group_element(&dir, "s.json", "group:heisenberg", &[("[0,0,0]", "1"), ("[0,1,0]", "-1")]);
    let (code, v, _) = run(&["ore-pair", "--ring", "group:heisenberg", "--a", &a, "--s", &s]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "ore_pair");
    assert_valid("ore-pair.schema.json", &v);
    let (code, v, _) = run(&["ore-pair", "--ring", "group:heisenberg", "--a", &a, "--s", &s, "--max-radius", "0"]);
    assert_eq!(code, 2);
    assert_valid("ore-pair.schema.json", &v);
}

#[test]
fn tower_report_and_out_file() {
    let dir = TempDir::new().unwrap();
    let g = group_element(&dir, "g.json", "group:Z", &[("0", "1"), ("1", "-1")]);
    let out = dir.path().join("tower.json");
    let (code, _, _) = run(&[
        "tower", "--ring", "group:Z", "--moduli", "3,9,27,81", "--matrix", &g, "--window", "3", "--haar", &g, "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_valid("tower.schema.json", &v);
    let dims: Vec<&str> = v["levels"].as_array().unwrap().iter().map(|l| l["quotient_dim"].as_str().unwrap()).collect();
    assert_eq!(dims, ["1/3", "1/9", "1/27", "1/81"]);
    assert_eq!(v["identities_hold"], true);
    let (code, _, _) = run(&["tower", "--ring", "group:Z", "--moduli", "3,4", "--matrix", &g, "--window", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn check_axioms_reports() {
    for ring in ["finite:S3", "group:Z/6", "su2", "group:heisenberg"] {
        let (code, v, _) = run(&["check-axioms", "--ring", ring, "--radius", "2"]);
        assert_eq!(code, 0, "{ring}");
        assert_valid("check-axioms.schema.json", &v);
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn thread_cap_and_determinism() {
    let args = ["folner", "--ring", "group:Z^2", "--S", "[[1,0],[0,1]]", "--epsilon", "1/5", "--max-radius", "40"];
    let a = bin().args(args).env("FOLNERLAB_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("FOLNERLAB_THREADS", "4").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = bin().args(args).env("FOLNERLAB_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn element_schema_accepts_library_output() {
    let dir = TempDir::new().unwrap();
    let p = group_element(&dir, "x.json", "group:ZxZ/2", &[("[1,1]", "-3/4")]);
    let v: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
    assert_valid("element.schema.json", &v);
    let m = serde_json::json!({"n": 1, "entries": [[v]]});
    assert_valid("matrix.schema.json", &m);
}
