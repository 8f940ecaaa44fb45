use std::process::{Command, Output};

use kummer_core::codes::LcpReport;
use kummer_core::curve::{Census, InvariantTuple};
use kummer_core::instances::Reproduction;
use kummer_core::linalg::MatrixJson;
use kummer_core::nonspecial::CriterionReport;

fn kdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_catalog_with_dedup() {
    let out = kdl(&["--csv", "nonspecial", "enumerate", "--catalog", "ex37", "--dedup"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n0,n1,n2,n3,n4,n5");
    assert_eq!(rows.len(), 25);
    assert!(rows.contains(&"0,0,1,3,0,5"));
}

#[test]
fn enumerate_json_round_trips() {
    let out = kdl(&["--json", "nonspecial", "enumerate", "--m", "5", "--lambdas", "1,1,1", "--dedup"]);
    let ts: Vec<InvariantTuple> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(ts.len(), 3);
    assert_eq!(serde_json::to_string_pretty(&ts).unwrap() + "\n", stdout(&out));
}

#[test]
fn failing_check_reports_every_j() {
    let out = kdl(&["--json", "nonspecial", "check", "--m", "17", "--lambdas", "1,2", "--tuple", "0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let rep: CriterionReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep.rows.len(), 16);
    assert!(!rep.is_nonspecial());
}

#[test]
fn passing_check_exits_zero() {
    let out = kdl(&["nonspecial", "check", "--catalog", "ex37", "--tuple", "0,0,1,3,0,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("non-special"));
}

#[test]
fn reproduce_exit_codes() {
    let ok = kdl(&["--json", "reproduce", "ex37"]);
    assert_eq!(ok.status.code(), Some(0));
    let rep: Reproduction = serde_json::from_str(&stdout(&ok)).unwrap();
    assert!(rep.matches);
    // the stated GF(49) curve has fewer rational places than claimed
    let differs = kdl(&["reproduce", "f49"]);
    assert_eq!(differs.status.code(), Some(1));
    assert!(stdout(&differs).contains("MISMATCH rational_places"));
    let unknown = kdl(&["reproduce", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(kdl(&["census"]).status.code(), Some(2));
    assert_eq!(kdl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kdl(&["census", "--m", "4", "--lambdas", "1", "--field", "5"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = kdl(&["curve", "info", "--m", "4", "--lambdas", "2,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd"));
}

#[test]
fn lcp_output_is_deterministic_and_round_trips() {
    let args = ["--json", "lcp", "build", "--catalog", "dickson_half_m8", "--regime", "half-single", "--s", "3"];
    let a = kdl(&args);
    let b = kdl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rep: LcpReport = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(rep.verified);
    assert_eq!(rep.params_g.k + rep.params_h.k, rep.params_g.n);
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", stdout(&a));
}

#[test]
fn generator_matrix_output() {
    let base = ["lcp", "build", "--catalog", "dickson_half_m8", "--regime", "half-single", "--matrix", "h"];
    let csv = kdl(&[&["--csv"], &base[..]].concat());
    let rows: Vec<String> = stdout(&csv).lines().map(String::from).collect();
    let json = kdl(&[&["--json"], &base[..]].concat());
    let m: MatrixJson = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(rows.len(), m.k);
    assert_eq!(m.n, 168);
    let first: Vec<u32> = rows[0].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first, m.rows[0]);
}

#[test]
fn spec_file_matches_inline_flags() {
    let info = kdl(&["--json", "curve", "info", "--catalog", "dickson_half_m8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&info)).unwrap();
    let path = std::env::temp_dir().join(format!("kdl-spec-{}.json", std::process::id()));
    std::fs::write(&path, v["spec"].to_string()).unwrap();
    let from_file = kdl(&["--json", "census", "--spec", path.to_str().unwrap()]);
    let inline = kdl(&[
        "--json", "census", "--m", "8", "--lambdas", "1,1,1,4", "--field", "7,2", "--alphas", "0,14,35,5",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file.stdout, inline.stdout);
    let c: Census = serde_json::from_str(&stdout(&inline)).unwrap();
    assert_eq!(c.n, 176);
    assert!(c.is_maximal);
}

#[test]
fn search_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kdl"))
        .args(["nonspecial", "enumerate", "--catalog", "ex37"])
        .env("KDL_MAX_SEARCH", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
