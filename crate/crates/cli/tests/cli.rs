use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;
use toric4::charpair::{parse_edges_json, CharacteristicPair};

struct Scratch {
    dir: TempDir,
}

impl Scratch {
    fn new() -> Self {
        Scratch { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn pair(&self, name: &str, edges: &str) -> PathBuf {
        self.file(name, &format!(r#"{{"edges":{edges}}}"#))
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric4")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const NO_SMOOTH: &str = "[[1,2],[1,0],[-1,2],[-3,-2]]";

#[test]
fn validate_cp2() {
    let s = Scratch::new();
    let f = s.pair("cp2.json", "[[1,1],[1,0],[0,1]]");
    let out = run(&["validate", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"valid":true,"smooth_pairs":[1,2,3],"k":1}"#);
}

#[test]
fn validate_reports_violations() {
    let s = Scratch::new();
    let f = s.pair("bad.json", "[[2,2],[1,0],[1,0]]");
    let out = run(&["validate", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out), json!({"valid": false, "violations": ["NonPrimitive(1)", "AdjacentDependent(2,3)"]}));
    let f = s.pair("short.json", "[[1,0],[0,1]]");
    assert_eq!(run(&["validate", p(&f)]).status.code(), Some(1));
    let f = s.file("junk.json", "{\"edges\": 3}");
    assert_eq!(run(&["validate", p(&f)]).status.code(), Some(1));
}

#[test]
fn cup_weighted_triangle() {
    let s = Scratch::new();
    let f = s.pair("wp.json", "[[1,2],[1,0],[-1,2]]");
    let out = run(&["cup", p(&f), "--ring", "z"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"theorem":"1.2","k":2,"c":4,"sign_freedom":true}"#
    );
}

#[test]
fn cup_smooth_and_sign_flags() {
    let s = Scratch::new();
    let f = s.pair("s2s2.json", "[[1,0],[0,1],[1,0],[0,1]]");
    let v = json_of(&run(&["cup", p(&f)]));
    assert_eq!(v["theorem"], "1.1");
    assert_eq!(v["matrix"], json!([[0, 1], [1, 0]]));
    assert_eq!(v["sign_freedom"], false);
    let g = s.pair("ns.json", NO_SMOOTH);
    let v = json_of(&run(&["cup", p(&g), "--ring", "q"]));
    assert_eq!(v["theorem"], "1.3");
    assert_eq!(v["sign_freedom"], true);
    assert!(v["matrix"][0].as_array().unwrap().iter().all(Value::is_string));
}

#[test]
fn cup_pid_matches_library() {
    use toric4::cohomology::{cup_matrix_pid, RingSpec};
    let s = Scratch::new();
    let g = s.pair("ns.json", NO_SMOOTH);
    let pair = CharacteristicPair::validate(parse_edges_json(&format!(r#"{{"edges":{NO_SMOOTH}}}"#)).unwrap()).unwrap();
    let np = pair.normalize_half(None, None).unwrap();
    for ring in ["q", "zmod:7"] {
        let want = cup_matrix_pid(&np, ring.parse::<RingSpec>().unwrap()).unwrap().to_json();
        let got = json_of(&run(&["cup", p(&g), "--ring", ring]));
        assert_eq!(got["matrix"], want["matrix"], "ring {ring}");
    }
    let got = json_of(&run(&["cup", p(&g), "--ring", "zmod:7"]));
    assert_eq!(got["matrix"]["mod"], 7);
    assert!(got["matrix"]["entries"].is_array());
}

#[test]
fn precondition_failures_exit_two() {
    let s = Scratch::new();
    let wp = s.pair("wp.json", "[[1,2],[1,0],[-1,2]]");
    let out = run(&["cup", p(&wp), "--theorem", "smooth"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("determinant"));
    let t = s.pair("t.json", "[[1,3],[1,0],[1,2]]");
    let out = run(&["cup", p(&t), "--theorem", "pid", "--ring", "zmod:4", "--index", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not invertible"));
    assert_eq!(run(&["cup", p(&t), "--theorem", "pid", "--ring", "zmod:4", "--index", "3"]).status.code(), Some(0));
    let z = s.pair("z.json", "[[1,0],[1,1],[1,0],[0,1]]");
    assert_eq!(run(&["oracle", p(&z)]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    let s = Scratch::new();
    let f = s.pair("cp2.json", "[[1,1],[1,0],[0,1]]");
    assert_eq!(run(&["cup", p(&f), "--ring", "r"]).status.code(), Some(1));
    assert_eq!(run(&["cup", p(&f), "--ring", "zmod:1"]).status.code(), Some(1));
    assert_eq!(run(&["groups", "/nonexistent/pair.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let g = s.pair("ns.json", NO_SMOOTH);
    assert_eq!(run(&["cup", p(&g)]).status.code(), Some(1));
}

#[test]
fn lift_without_lifting() {
    let s = Scratch::new();
    let f = s.pair("ex.json", "[[2,1],[-3,-2],[1,0],[0,1]]");
    let m = s.file("contract.json", r#"{"type":"contract","rho":[1,1,2,3]}"#);
    let out = run(&["lift", p(&f), "--morph", p(&m)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"lifting":null,"reason":"non-integral column 1"}"#
    );
}

#[test]
fn lift_rescaling() {
    let s = Scratch::new();
    let f = s.pair("t.json", "[[2,3],[1,0],[0,1]]");
    let m = s.file("r.json", r#"{"type":"rescale","i":1}"#);
    let v = json_of(&run(&["lift", p(&f), "--morph", p(&m)]));
    assert_eq!(v["lifting"], json!([[6, 0, 0], [0, 3, 0], [0, 0, 2]]));
    assert_eq!(v["substitution"][0], "6*y1");
}

#[test]
fn morph_reports() {
    let s = Scratch::new();
    let f = s.pair("hex.json", "[[1,1],[2,1],[1,2],[-1,1],[1,0],[0,1]]");
    let m = s.file("c.json", r#"{"type":"contract","rho":[1,1,2,2,2,3]}"#);
    let v = json_of(&run(&["morph", p(&f), "--morph", p(&m)]));
    assert_eq!(v["compatible"], true);
    assert_eq!(v["cellular_index_map"]["u"], json!([2]));
    let b = s.file("b.json", r#"{"type":"bend","i":2}"#);
    let v = json_of(&run(&["morph", p(&f), "--morph", p(&b)]));
    assert_eq!(v["target_characteristic"], false);
    assert_eq!(v["morphism"]["target"].as_array().unwrap().len(), 7);
    let bad = s.file("bad.json", r#"{"type":"custom","rho":[1,2,3,4,5,6],"psi":[[1,1],[0,1]]}"#);
    let v = json_of(&run(&["morph", p(&f), "--morph", p(&bad)]));
    assert_eq!(v["compatible"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn normalize_round_trips() {
    let s = Scratch::new();
    for (name, edges) in [("wp", "[[1,2],[1,0],[-1,2]]"), ("hex", "[[1,1],[2,1],[1,2],[-1,1],[1,0],[0,1]]"), ("ns", NO_SMOOTH)] {
        let f = s.pair(&format!("{name}.json"), edges);
        let out = run(&["normalize", p(&f)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let text = String::from_utf8(out.stdout).unwrap();
        let pair = CharacteristicPair::validate(parse_edges_json(&text).unwrap()).unwrap();
        assert!(pair.is_smooth_form() || pair.is_half_form(), "{name}");
        let again = s.file(&format!("{name}.out.json"), &text);
        assert_eq!(run(&["validate", p(&again)]).status.code(), Some(0));
    }
}

#[test]
fn fuzz_is_deterministic() {
    let a = run(&["fuzz", "--seed", "42", "--count", "15"]);
    let b = run(&["fuzz", "--seed", "42", "--count", "15"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["status"], "all passed");
}

#[test]
fn text_format() {
    let s = Scratch::new();
    let f = s.pair("wp.json", "[[1,2],[1,0],[-1,2]]");
    let out = run(&["groups", p(&f), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("Z/2"));
}

#[test]
fn groups_over_rings() {
    let s = Scratch::new();
    let f = s.pair("wp.json", "[[1,2],[1,0],[-1,2]]");
    let v = json_of(&run(&["groups", p(&f), "--ring", "zmod:6"]));
    assert_eq!(v["degrees"][3]["torsion"], json!([2]));
    let v = json_of(&run(&["groups", p(&f), "--ring", "q"]));
    assert_eq!(v["degrees"][3]["group"], "0");
}
