use std::process::{Command, Output};

use serde_json::Value;

fn pisys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pisys")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn classify_e10() {
    let out = pisys(&["classify", "E10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["det"], -1);
    assert_eq!(v["hyperbolic"], true);
    assert_eq!(v["signature"], serde_json::json!([9, 1, 0]));
}

#[test]
fn classify_from_file_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g2.json");
    std::fs::write(&p, "[[2,-1],[-3,2]]").unwrap();
    let out = pisys(&["classify", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kind"], "Finite");

    let dot = dir.path().join("g2.dot");
    let out = pisys(&["render", p.to_str().unwrap(), "--format", "dot", "-o", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph") && text.contains("dir=forward"));

    let out = pisys(&["render", "B5++", "--format", "json"]);
    let v = json(&out);
    let back = pisys::io::parse_diagram(&v.to_string()).unwrap();
    assert!(back.is_isomorphic(&pisys::families::by_name("B5++").unwrap()).unwrap());
}

#[test]
fn roots_and_check() {
    let out = pisys(&["roots", "G2", "--height", "10"]);
    assert_eq!(json(&out)["count"], 6);
    let out = pisys(&["roots", "E10", "--test", "[1,1,0,0,0,0,0,0,0,0]"]);
    assert_eq!(json(&out)["status"], "RealRoot");
    // long roots of G2: an A2
    let out = pisys(&["check", "G2", "--roots", "[[1,0],[1,3]]"]);
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["type"]["entries"], serde_json::json!([[2, -1], [-1, 2]]));
    let out = pisys(&["check", "A2", "--roots", "[[1,0],[1,1]]"]);
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn principle_refute_compare() {
    let out = pisys(&["principle", "G219", "--params", r#"{"kind":"a","zero_node":1,"attach_node":0}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["type"]["rank"], 6);

    let out = pisys(&["refute", "E18", "A16++"]);
    assert_eq!(json(&out)["verdict"], "Refuted");

    let out = pisys(&["compare", "E10", "A8++"]);
    assert_eq!(json(&out)["verdict"], "Certified");
    let out = pisys(&["compare", "A2", "A1", "--height", "3"]);
    assert_eq!(json(&out)["verdict"], "Certified");
}

#[test]
fn catalog_output() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cat.jsonl");
    let out = pisys(&["--jobs", "1", "catalog", "--rank-min", "3", "--rank-max", "4", "-o", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let f = std::fs::File::open(&p).unwrap();
    let entries = pisys::catalog::read_jsonl(std::io::BufReader::new(f)).unwrap();
    let expected = pisys::catalog::enumerate_hyperbolic(3, 4, true).unwrap();
    assert_eq!(entries.len(), expected.len());
}

#[test]
fn exit_codes() {
    // domain error: reported as JSON on stderr
    let out = pisys(&["roots", "[[2,-1],[-1,2]]", "--test", "[1]"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].is_string());
    let out = pisys(&["principle", "A3", "--params", r#"{"kind":"e","p":0,"q":1}"#]);
    assert_eq!(out.status.code(), Some(2));
    // usage errors
    assert_eq!(pisys(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(pisys(&["principle", "A3", "--params", "{not json"]).status.code(), Some(64));
    assert_eq!(pisys(&["--jobs", "0", "classify", "A2"]).status.code(), Some(64));
    assert_eq!(pisys(&["compare", "A2", "A1", "--height", "0"]).status.code(), Some(64));
    // missing file
    assert_eq!(pisys(&["classify", "/nonexistent/x.json"]).status.code(), Some(74));
}
