use std::io::Write;
use std::process::{Command, Output, Stdio};

use kconvex::fixtures::{comb, spiky_star};
use kconvex::io::{polygon_from_value, polygon_to_value};
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kconvex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const SQUARE: &str = r#"{"vertices": [["0","0"],["1","0"],["1","1"],["0","1"]]}"#;

#[test]
fn square_is_one_convex() {
    let o = run(&["kconvex", "-", "--k", "1"], SQUARE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o), serde_json::json!({"k_convex": true}));
}

#[test]
fn kconvex_expect_negative() {
    let comb3 = polygon_to_value(&comb(3).unwrap()).to_string();
    let o = run(&["kconvex", "-", "--k", "2", "--expect"], &comb3);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["k_convex"], false);
}

#[test]
fn spiky_star_is_not_two_convex() {
    let s = polygon_to_value(&spiky_star(5).unwrap()).to_string();
    let o = run(&["recognize2", "-"], &s);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["is_two_convex"], false);
    assert!(v["witness"].is_object());
    let o = run(&["recognize2", "--oracle", "-"], &s);
    assert_eq!(json_of(&o)["is_two_convex"], false);
}

#[test]
fn gen_then_stab() {
    let g = run(&["gen", "comb", "--params", "k=3"], "");
    assert_eq!(g.status.code(), Some(0));
    let text = String::from_utf8(g.stdout).unwrap();
    let o = run(&["stab", "-"], &text);
    assert_eq!(json_of(&o)["stabbing_number"], 6);
}

#[test]
fn gen_round_trips() {
    let g = run(&["gen", "comb", "--params", "k=4"], "");
    let v: Value = serde_json::from_slice(&g.stdout).unwrap();
    assert_eq!(polygon_from_value(&v).unwrap(), comb(4).unwrap());
    let f = run(&["gen", "quad_row", "--params", "n=3"], "");
    let v: Value = serde_json::from_slice(&f.stdout).unwrap();
    assert_eq!(v["polygons"].as_array().unwrap().len(), 3);
}

#[test]
fn triangulate_stats() {
    let o = run(&["triangulate", "-", "--sort", "scan", "--stats"], SQUARE);
    let v = json_of(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["triangles"].as_array().unwrap().len(), 2);
    assert!(v["stats"]["comparison_count"].as_u64().is_some());
}

#[test]
fn shape_commands() {
    let o = run(&["chains", "-"], SQUARE);
    assert_eq!(json_of(&o)["chains"].as_array().unwrap().len(), 1);
    let o = run(&["convex-subset", "-"], SQUARE);
    assert_eq!(json_of(&o)["size"], 4);
    let o = run(&["partition", "-"], SQUARE);
    assert_eq!(json_of(&o)["count"], 1);
    let comb3 = polygon_to_value(&comb(3).unwrap()).to_string();
    assert_eq!(run(&["chains", "-"], &comb3).status.code(), Some(1));
}

#[test]
fn reduce3sum_outputs() {
    let o = run(&["reduce3sum", "--input", "-3,1,2"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["M"], 3);
    assert_eq!(v["brute"], true);
    let o = run(&["reduce3sum", "--input", "0,0,0"], "");
    assert_eq!(json_of(&o)["decision"], true);
    assert_eq!(run(&["reduce3sum", "--input", "1,x"], "").status.code(), Some(2));
}

#[test]
fn region_degree_and_helly() {
    let sq = |x: i64| {
        serde_json::json!({"vertices": [[x.to_string(),"0"],[(x+1).to_string(),"0"],[(x+1).to_string(),"1"],[x.to_string(),"1"]]})
    };
    let spec = serde_json::json!({"polygons": {"A": sq(0), "B": sq(3)}, "expr": ["union", "A", "B"]});
    let o = run(&["region-degree", "-", "--random-lines", "50"], &spec.to_string());
    assert_eq!(json_of(&o)["degree"], 2);
    let o = run(&["helly", "--m", "3", "--expect"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["passed"], true);
}

#[test]
fn ggp_two_squares() {
    let fam = r#"{"polygons": [
        {"vertices": [["0","0"],["2","0"],["2","2"],["0","2"]]},
        {"vertices": [["5","0"],["7","0"],["7","2"],["5","2"]]}]}"#;
    let o = run(&["ggp", "-"], fam);
    let v = json_of(&o);
    assert_eq!(v["count"], 1);
    assert_eq!(v["ggps"][0], serde_json::json!(["A", "B"]));
}

#[test]
fn render_is_deterministic() {
    let a = run(&["render", "-"], SQUARE);
    let b = run(&["render", "-"], SQUARE);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(!svg.contains("<line"));
    let with_line = r#"{"polygons": [{"vertices": [["0","0"],["1","0"],["1","1"],["0","1"]]}],
        "lines": [{"anchor": ["0","1/2"], "dir": ["1","0"]}]}"#;
    let svg = String::from_utf8(run(&["render", "-"], with_line).stdout).unwrap();
    assert_eq!(svg.matches("<line").count(), 1);
}

#[test]
fn stdout_is_deterministic() {
    let a = run(&["stab", "-"], SQUARE);
    let b = run(&["stab", "-"], SQUARE);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["stab", "-"], "not json").status.code(), Some(2));
    assert_eq!(run(&["stab", "/definitely/missing.json"], "").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "nonsense"], "").status.code(), Some(2));
    let bowtie = r#"{"vertices": [["0","0"],["1","1"],["1","0"],["0","1"]]}"#;
    assert_eq!(run(&["stab", "-"], bowtie).status.code(), Some(2));
}
