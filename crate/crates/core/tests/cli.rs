use std::process::{Command, Output};

use blobcell::BivarPoly;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blobcell"))
        .args(args)
        .output()
        .expect("spawn blobcell")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn beta_factored() {
    let o = run(&["beta", "--k", "1", "--lambda", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(1/2)(2x+y)y");
}

#[test]
fn jw_one() {
    let o = run(&["jw", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn jw_two() {
    let o = run(&["jw", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "(1/2)U1 + 1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["jw", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["diag", "--n", "4", "--lambda", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["sumformula", "--w", "ss", "--v", "s"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["delta", "--w", "sts", "--v", "s", "--root", "b_x[1]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_blobcell"))
        .args(["jw", "--n", "2"])
        .env("BLOBCELL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sumformula_passes() {
    let o = run(&["sumformula", "--w", "ststs", "--v", "s"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("PASS"));
    assert!(s.contains("LHS = 6q^2 + 4q^4"));
    assert!(s.contains("RHS = 6q^2 + 4q^4"));
}

#[test]
fn sumformula_json() {
    let o = run(&["sumformula", "--w", "tstst", "--v", "ts", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn diag_json_round_trip() {
    let o = run(&["--format", "json", "diag", "--n", "5", "--lambda", "-3"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    let d: Vec<u64> = blocks.iter().map(|b| b["d"].as_u64().unwrap()).collect();
    assert_eq!(d, [4, 1]);
    let c0: BivarPoly = blocks[0]["c"].as_str().unwrap().parse().unwrap();
    assert_eq!(c0, "x".parse().unwrap());
    let c1: BivarPoly = blocks[1]["c"].as_str().unwrap().parse().unwrap();
    let f = |s: &str| s.parse::<BivarPoly>().unwrap();
    let expect = &(&f("x") * &f("2x+y")) * &f("3x+4y");
    assert_eq!(c1, expect.monic());
}

#[test]
fn gram_json_is_symmetric() {
    let o = run(&["--format", "json", "gram", "--n", "4", "--lambda", "0"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let m: Vec<Vec<BivarPoly>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(m.len(), 6);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(*e, m[j][i]);
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "gram", "--n", "5", "--lambda", "1"][..],
        &["jw", "--n", "4"][..],
        &["--format", "csv", "dims", "--n", "6", "--lambda", "-2"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn dims_cell() {
    let o = run(&["dims", "--n", "5", "--lambda", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim = 10\ndim_q = 5 + 4q^2 + q^4"));
}

#[test]
fn verify_fault_injection() {
    let clean = run(&["verify", "--max-n", "4"]);
    let s = stdout(&clean);
    assert!(s.contains("PASS Jones-Wenzl"), "{}", s);
    let bad = run(&["verify", "--max-n", "4", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL Jones-Wenzl"));
}
