use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn grkn(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_grkn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const TOP_24: &str = r#"{"k":2,"n":4,"rows":[2,2],"plus":[[1,1],[1,2],[2,1],[2,2]]}"#;

#[test]
fn measure_single_box() {
    let out = grkn(&["measure", "--check-det"], r#"{"k":1,"n":2,"rows":[1],"entries":[[1,1,"3/2"]]}"#);
    assert!(out.status.success());
    assert_eq!(json_out(&out)["coords"], serde_json::json!({"1": "1", "2": "3/2"}));
}

#[test]
fn measure_limited_subsets() {
    let tableau = r#"{"k":2,"n":4,"rows":[2,2],"entries":[[1,1,1],[1,2,1],[2,1,1],[2,2,1]]}"#;
    let out = grkn(&["measure", "--limit-subsets", "2,4", "3,4"], tableau);
    assert_eq!(json_out(&out)["coords"], serde_json::json!({"2,4": "2", "3,4": "1"}));
}

#[test]
fn roundtrip_reports_no_difference() {
    let tableau = r#"{"k":2,"n":4,"rows":[2,1],"entries":[[1,1,"5/7"],[1,2,"0.25"],[2,2,3]]}"#;
    let out = grkn(&["roundtrip"], tableau);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"max_abs_diff":"0","ok":true}"#);
    let seeded = json_out(&grkn(&["roundtrip", "--seed", "3"], TOP_24));
    assert_eq!(seeded["ok"], Value::Bool(true));
}

#[test]
fn enumerate_counts_and_guard() {
    let out = json_out(&grkn(&["enumerate", "--k", "1", "--n", "3"], ""));
    assert_eq!(out["count"], 7);
    let guarded = Command::new(env!("CARGO_BIN_EXE_grkn"))
        .args(["enumerate", "--k", "2", "--n", "5"])
        .env("GRKN_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(2));
}

#[test]
fn locate_then_coords_from_a_matrix() {
    let matrix = r#"{"k":2,"n":4,"rows":[["1","0","-1","-3"],["0","1","2","1"]]}"#;
    let located = json_out(&grkn(&["locate"], matrix));
    assert_eq!(located["dimension"], 4);
    assert_eq!(located["base"], "1,2");
    let coords = grkn(&["coords", "--method", "both", "--ledger"], matrix);
    assert!(coords.status.success());
    let v = json_out(&coords);
    assert_eq!(v["tableau"]["entries"].as_array().unwrap().len(), 4);
    assert_eq!(v["base"].as_array().unwrap().len(), 4);
}

#[test]
fn error_classes_map_to_exit_codes() {
    assert_eq!(grkn(&["locate"], "{not json").status.code(), Some(2));
    assert_eq!(grkn(&["measure"], r#"{"k":1,"n":2,"rows":[1],"entries":[[1,1,1.5]]}"#).status.code(), Some(2));
    let mixed = grkn(&["locate"], r#"{"k":2,"n":3,"coords":{"1,2":"1","1,3":"-1"}}"#);
    assert_eq!(mixed.status.code(), Some(3));
    assert_eq!(json_out(&mixed)["error"]["kind"], "mixed_signs");
    let not_base = grkn(&["laurent", "--subset", "1,7,9,10,11"], &diagram_json());
    assert_eq!(not_base.status.code(), Some(3));
    assert_eq!(json_out(&not_base)["error"]["kind"], "not_in_matroid");
    let bad_filling = r#"{"k":2,"n":4,"rows":[2,2],"plus":[[1,1],[2,2]]}"#;
    assert_eq!(grkn(&["base"], bad_filling).status.code(), Some(3));
}

fn diagram_json() -> String {
    let d = grkn::combinatorics::fixtures::gr5_12_example();
    grkn::json::diagram_to_json(&d).to_string()
}

#[test]
fn base_matroid_and_laurent() {
    let base = json_out(&grkn(&["base", "--poset"], &diagram_json()));
    assert_eq!(base["base"].as_array().unwrap().len(), 13);
    assert_eq!(base["poset"]["faces"].as_array().unwrap().len(), 13);
    let m = json_out(&grkn(&["matroid", "--limit-subsets", "1,2,7,9,10;1,7,9,10,11"], &diagram_json()));
    assert_eq!(m["bases"], serde_json::json!(["1,2,7,9,10"]));
    let l = json_out(&grkn(&["laurent", "--subset", "2,4"], TOP_24));
    assert_eq!(l["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_byte_deterministic() {
    let a = grkn(&["matroid"], &diagram_json());
    let b = grkn(&["matroid"], &diagram_json());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
