use std::process::{Command, Output};

use mixcay::{enumerate_hs_integral, parse_set, GroupSpec};
use serde_json::Value;

fn mixcay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixcay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_mixed_example() {
    let out = mixcay(&["classify", "--group", "3x3", "--set", "(0,1),(1,0),(2,0)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["hs_integral"], true);
    assert_eq!(v["eisenstein_integral"], true);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["hs_spectrum"].as_array().unwrap().len(), 9);
}

#[test]
fn classify_non_integral_set() {
    let out = mixcay(&["classify", "--group", "12", "--set", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["hs_integral"], false);
    assert_eq!(v["consistent"], true);
}

#[test]
fn enumerate_lines_round_trip() {
    let out = mixcay(&["enumerate", "--group", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let g = GroupSpec::parse("9").unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    let expected: Vec<_> = enumerate_hs_integral(&g, u64::MAX).map(|cs| cs.members().clone()).collect();
    for (line, want) in lines.iter().zip(&expected) {
        let v: Value = serde_json::from_str(line).unwrap();
        let set = parse_set(v["set"].as_str().unwrap(), &g, false).unwrap();
        assert_eq!(&set, want);
    }
}

#[test]
fn enumerate_reports_truncation() {
    let out = mixcay(&["enumerate", "--group", "3x3", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    let last: Value = serde_json::from_str(lines[5]).unwrap();
    assert_eq!(last["truncated"], true);
    assert_eq!(last["total"], 256);
}

#[test]
fn verify_exhaustive_sweep() {
    let out = mixcay(&["verify", "--group", "12", "--budget", "4096", "--parallelism", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["subsets_tested"], 2048);
    assert_eq!(v["counterexamples"], Value::Array(vec![]));
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn malformed_input_exits_one() {
    for args in [
        &["classify", "--group", "3x3", "--set", "(0,1"][..],
        &["classify", "--group", "3y3"],
        &["classify", "--group", "5", "--set", "0"],
        &["classify", "--group", "3x3", "--set", "1"],
        &["classify", "--group", "5", "--set", "7", "--no-reduce"],
        &["atoms", "--group", "9", "--format", "dot"],
        &["verify", "--group", "6", "--parallelism", "0"],
        &["frobnicate"],
    ] {
        let out = mixcay(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = mixcay(&["classify", "--group", "3x3", "--set", "(0,1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 4"));
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["verify", "--group", "3x9", "--budget", "500", "--seed", "7"][..],
        &["classify", "--group", "2x6", "--set", "(0,1),(1,2),(1,3)"],
        &["spectrum", "--group", "12", "--set", "1,5", "--kind", "adjacency"],
        &["atoms", "--group", "3x9"],
        &["enumerate", "--group", "2x6"],
    ] {
        let a = mixcay(args);
        let b = mixcay(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn dot_export_and_matrix_dump() {
    let dir = std::env::temp_dir().join(format!("mixcay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("g.dot");
    let mats = dir.join("m.json");
    let out = mixcay(&[
        "classify",
        "--group",
        "3x3",
        "--set",
        "(0,1),(1,0),(2,0)",
        "--format",
        "dot",
        "--output",
        dot.to_str().unwrap(),
        "--matrices",
        mats.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("[dir=none]").count(), 9);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&mats).unwrap()).unwrap();
    assert!(m.is_object());
    std::fs::remove_dir_all(&dir).unwrap();
}
