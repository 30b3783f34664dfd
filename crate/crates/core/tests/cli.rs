//! End-to-end runs of the `trap-audit` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const Q1_P5: [&str; 14] = ["--A", "1", "--B", "1", "--C", "1", "--D", "3", "--E", "1", "--F", "6", "--G", "0"];
const FIXTURE: [&str; 14] = ["--A", "1", "--B", "2", "--C", "3", "--D", "1", "--E", "1", "--F", "2", "--G", "0"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trap-audit")).args(args).output().expect("binary runs")
}

fn with(cmd: &[&str], params: &[&str], rest: &[&str]) -> Vec<String> {
    cmd.iter().chain(params).chain(rest).map(|s| s.to_string()).collect()
}

fn run_owned(args: Vec<String>) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    run(&refs)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

#[test]
fn q1_p5_is_non_integrable_by_the_ve2_residue() {
    let r = json(&run_owned(with(&["audit"], &Q1_P5, &[])));
    assert_eq!(r["verdict"], "NonIntegrableMeromorphic");
    let findings = r["certificate"]["findings"].as_array().unwrap();
    assert_eq!(findings.last().unwrap()["rule"], "ve2_residue");
}

#[test]
fn separable_trap() {
    let r = json(&run(&["audit", "--A", "1", "--B", "1", "--C", "0", "--D", "0", "--E", "0", "--F", "0", "--G", "1"]));
    assert_eq!(r["verdict"], "Integrable_Separable");
}

#[test]
fn b_zero_is_undecided() {
    let r = json(&run(&["audit", "--A", "1", "--B", "0", "--C", "1", "--D", "1", "--E", "1", "--F", "1", "--G", "0"]));
    assert_eq!(r["verdict"]["Undecided"], "B=0, A≠0 unresolved in source analysis");
}

#[test]
fn parse_error_exits_two_and_names_the_flag() {
    let out = run(&["audit", "--A", "1/0", "--B", "1", "--C", "1", "--D", "1", "--E", "1", "--F", "1", "--G", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--A"));
    assert_eq!(run(&["audit", "--A", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn computation_error_exits_three() {
    // B = 0 has no generic normal variational equation
    let out = run(&["trace", "--A", "1", "--B", "0", "--C", "1", "--D", "1", "--E", "1", "--F", "1", "--G", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn json_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run_owned(with(&["audit"], &Q1_P5, &["--json", path.to_str().unwrap()]));
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "NonIntegrableMeromorphic");
    let text = std::fs::read_to_string(&path).unwrap();
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["params"]["D"], "3");
}

#[test]
fn audits_are_byte_identical() {
    let a = run_owned(with(&["audit"], &FIXTURE, &["--numeric-check"]));
    let b = run_owned(with(&["audit"], &FIXTURE, &["--numeric-check"]));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn grid_keeps_row_order_and_embeds_errors() {
    let file = data("rows_with_error.csv");
    let out = run(&["grid", "--file", &file]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["params"]["F"], "6");
    assert_eq!(lines[1]["row"], 2);
    assert_eq!(lines[1]["tag"], "ParseError");
    assert!(lines[1]["error"].as_str().unwrap().contains("1/0"));
    assert_eq!(lines[2]["verdict"], "Integrable_Separable");
}

#[test]
fn grid_output_does_not_depend_on_parallelism() {
    let file = data("fixture_grid.csv");
    let serial = run(&["grid", "--file", &file]);
    let parallel = run(&["grid", "--file", &file, "--parallel", "4"]);
    assert!(serial.status.success());
    assert_eq!(stdout(&serial).lines().count(), 18);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn identical_grid_rows_give_identical_lines() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    std::fs::write(&csv, "A,B,C,D,E,F,G\n1,2,3,1,1,2,0\n1,2,3,1,1,2,0\n").unwrap();
    let out = dir.path().join("out.jsonl");
    let res = run(&["grid", "--file", csv.to_str().unwrap(), "--out", out.to_str().unwrap(), "--parallel", "2"]);
    assert!(res.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
}

#[test]
fn residue_methods_agree_on_the_fixture() {
    let r = json(&run_owned(with(&["residue"], &FIXTURE, &["--point", "z1", "--method", "both"])));
    assert_eq!(r["closed_form"], "-1");
    assert_eq!(r["agree"], true);
    assert!(r["max_error"].as_f64().unwrap() < 1e-8);
    let exact: Vec<f64> = r["exact"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().parse().unwrap()).collect();
    for (x, n) in exact.iter().zip(r["numeric"].as_array().unwrap()) {
        assert!((x - n[0].as_f64().unwrap()).abs() < 1e-8);
        assert!(n[1].as_f64().unwrap().abs() < 1e-8);
    }
}

#[test]
fn trace_of_q1_p5() {
    let r = json(&run_owned(with(&["trace"], &Q1_P5, &[])));
    assert_eq!(r["t0"], "-2");
    assert_eq!(r["t_inf"], "-2");
}

#[test]
fn longer_series_extend_shorter_ones() {
    let short = json(&run_owned(with(&["series"], &FIXTURE, &["--point", "z1", "--order", "12"])));
    let long = json(&run_owned(with(&["series"], &FIXTURE, &["--point", "z1", "--order", "24"])));
    let (s, l) = (short["terms"].as_array().unwrap(), long["terms"].as_array().unwrap());
    assert_eq!(s.len(), 12);
    assert_eq!(l.len(), 24);
    assert_eq!(s[..], l[..12]);
}

#[test]
fn simulate_and_section_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let out = run_owned(with(&["simulate"], &Q1_P5, &["--init", "0.1,0,0.1,0", "--tmax", "0.01", "--out", traj.to_str().unwrap()]));
    assert!(out.status.success());
    let text = std::fs::read_to_string(&traj).unwrap();
    assert_eq!(text.lines().next(), Some("t,r,p_r,z,p_z"));
    assert_eq!(text.lines().count(), 12);

    let out = run_owned(with(&["section"], &Q1_P5, &["--energy", "0.05", "--n", "3"]));
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("r,p_r"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn section_below_the_potential_exits_three() {
    let out = run_owned(with(&["section"], &Q1_P5, &["--energy", "-1", "--n", "3"]));
    assert_eq!(out.status.code(), Some(3));
}
