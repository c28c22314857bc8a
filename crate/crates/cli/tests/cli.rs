use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fq-sparse")).args(args).output().expect("binary runs")
}

fn json_stdout(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_binomial() {
    let v = json_stdout(&["analyze", "--p", "7", "x^3 + 1"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["R"], 3);
    assert_eq!(v["C"], 3);
    assert_eq!(v["params"]["delta"], 3);
    assert_eq!(v["params"]["D"], 3);
    assert_eq!(v["params"]["S"], serde_json::json!([1, 3]));
    assert_eq!(v["coset_bound"]["bound_C"], 6.0);
}

#[test]
fn analyze_extension_trinomial() {
    let v = json_stdout(&["analyze", "--p", "3", "--k", "2", "--modulus", "1,0,1", "x^3 + x + 1"]);
    assert_eq!(v["R"], 3);
    assert_eq!(v["C"], 1);
    assert_eq!(v["field"]["q"], 9);
}

#[test]
fn analyze_monomial() {
    let v = json_stdout(&["analyze", "--p", "7", "x^4"]);
    assert_eq!(v["R"], 0);
    assert_eq!(v["C"], 0);
    assert!(v["params"].is_null());
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["analyze", "--p", "7", "x^^2"][..],
        &["analyze", "--p", "8", "x + 1"],
        &["analyze", "--p", "3", "--k", "2", "--modulus", "2,0,1", "x"],
        &["analyze", "--p", "7", "7*x"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn budget_exit_3() {
    let out = run(&["experiment", "max-r", "--p", "101", "--t", "3", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn max_r_csv() {
    let out = run(&["experiment", "max-r", "--p", "31", "--t", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,t,max_R,witness"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..2], &["31", "3"]);
    let max_r: u64 = row[2].parse().unwrap();
    assert!((max_r as f64) < 1.8 * 31f64.ln());

    let witness = json_stdout(&["analyze", "--p", "31", row[3]]);
    assert_eq!(witness["R"], max_r);
    assert!(witness["C"].as_u64().unwrap() <= 1);
}

#[test]
fn conjecture_table_to_file_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&["experiment", "conjecture", "--p", "61", "--t", "3", "--gamma", "0.5", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("p,t,r,count_all,count_c1,ratio,rhs,gamma,max_R\n"));
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[5] <= cols[6], "{line}");
    }
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["all_pass"], true);
    assert_eq!(summary["mode"], "orbit_reduced");
}

#[test]
fn sample_c2_is_reproducible() {
    let args = ["experiment", "sample-c2", "--p", "7", "--samples", "100000", "--seed", "1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["within_comparator"], true);
    assert_eq!(v["samples"], 100000);
    assert!(v["exact"]["proportion"].is_number());
}

#[test]
fn root_dist_csv() {
    let out = run(&["experiment", "root-dist", "--p", "31", "--samples", "20000", "--seed", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,r,count,proportion,inv_factorial,sigma,pass\n"));
    assert_eq!(text.lines().count(), 32);
    let total: u64 = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 20000);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}
