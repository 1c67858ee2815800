use std::process::Command;

use sphdet::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn capture(args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let mut full = vec!["sphdet"];
    full.extend_from_slice(args);
    let code = run(full, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn z1_values_and_parity_check() {
    let (code, out) = capture(&["z1", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("-3/4"));
    assert_eq!(capture(&["z1", "--n", "5"]).1.lines().next(), Some("-25/48"));
    assert_eq!(capture(&["z1", "--n", "4"]).0, EXIT_USAGE);
}

#[test]
fn trace_routes() {
    assert_eq!(capture(&["tr-inv-laplacian", "--n", "3", "--route", "kernel"]).1.trim(), "-3/4");
    let (code, out) = capture(&["tr-inv-laplacian", "--n", "3", "--route", "spectral", "--digits", "9"]);
    assert_eq!(code, EXIT_OK);
    let v: f64 = out.trim().parse().unwrap();
    assert!((v + 0.75).abs() < 1e-8);
    let (code, out) = capture(&["tr-inv-laplacian", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("agree"));
    assert_eq!(capture(&["tr-inv-laplacian", "--n", "5"]).0, EXIT_USAGE);
}

#[test]
fn alpha_tables() {
    let (code, out) = capture(&["alpha", "--functional", "detprime", "--n", "3", "--k-max", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().last().unwrap().starts_with("2,\"3*pi^2/2 + 115/16\""));
    let (_, out) = capture(&["alpha", "--functional", "detprime", "--n", "3", "--k-max", "0", "--format", "csv"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.contains("0,\"5/8\""));
    let (code, out) = capture(&["alpha", "--functional", "detL", "--n", "5", "--k-max", "30", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 31);
    assert!(rows.as_array().unwrap().iter().all(|r| r["positive"] == true));
    assert_eq!(capture(&["alpha", "--functional", "detprime", "--n", "5"]).0, EXIT_USAGE);
}

#[test]
fn conjecture_table_formats() {
    let (code, csv) = capture(&["conjecture-table", "--n-max", "7", "--k-max", "6", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,k,value_exact,value_approx,sign,predicted_sign"));
    let row = csv.lines().find(|l| l.starts_with("7,2,")).unwrap();
    assert!(row.ends_with(",+,+"));
    let row = csv.lines().find(|l| l.starts_with("7,5,")).unwrap();
    assert!(row.ends_with(",-,-"));
    let (_, md) = capture(&["conjecture-table", "--n-max", "7", "--k-max", "6", "--format", "md"]);
    assert!(md.contains("mismatches: 0"));
    let (_, json) = capture(&["conjecture-table", "--n-max", "5", "--k-max", "3", "--format", "json"]);
    let cells: Vec<sphdet::format::CellJson> = serde_json::from_str(&json).unwrap();
    assert_eq!(cells.len(), 4);
    assert_eq!(cells[2].decode().unwrap().value.to_string(), "35/24");
    assert_eq!(capture(&["conjecture-table", "--k-max", "1"]).0, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    let args = ["conjecture-table", "--n-max", "9", "--k-max", "8", "--format", "json", "--threads", "4"];
    let a = capture(&args).1;
    let b = capture(&["conjecture-table", "--n-max", "9", "--k-max", "8", "--format", "json", "--threads", "1"]).1;
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sphdet");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["z1", "--n", "3"]), EXIT_OK);
    assert_eq!(status(&["z1", "--n", "4"]), EXIT_USAGE);
    assert_eq!(status(&["no-such-command"]), EXIT_USAGE);
    assert_eq!(status(&["alpha", "--functional", "other", "--n", "3"]), EXIT_USAGE);
    assert_eq!(status(&["--help"]), EXIT_OK);
    let bad_threads = Command::new(bin).args(["z1", "--n", "3"]).env("SPHDET_THREADS", "many").output().unwrap();
    assert_eq!(bad_threads.status.code(), Some(EXIT_USAGE));
    assert_ne!(EXIT_FAILURE, EXIT_OK);
}
