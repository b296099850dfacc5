use std::process::Command;

use legendre_covers::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::{json, Value};

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_legendre-covers"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn params_worked_example() {
    let out = bin(&["params", "--field", "rational", "--lambda", "3", "--p1", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["delta"], json!("15/7"));
    assert_eq!(v["zeta"], json!("1125/1061"));
    assert_eq!(v["cover"]["sign"], json!("+"));
    assert_eq!(v["sextic"]["degree"], json!(6));
}

#[test]
fn params_minus_sign_flips_ynum() {
    let out = run(["legendre-covers", "params", "--field", "rational", "--lambda", "3", "--p1", "5", "--sign", "minus"]);
    assert_eq!(out.code, EXIT_OK);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["cover"]["sign"], json!("-"));
    assert_eq!(v["cover"]["Ynum"]["coeffs"], json!(["0", "6", "-6"]));
}

#[test]
fn params_outside_moduli_is_domain_error() {
    let out = bin(&["params", "--p", "7", "--lambda", "3", "--p1", "4"]);
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn moduli_f11_lambda_3() {
    let out = bin(&["moduli", "--p", "11", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], json!(9));
    assert_eq!(v["admissible"], json!([0, 3, 4, 5, 6, 7, 8, 9, 10]));
}

#[test]
fn zlocus_rational() {
    let out = bin(&["zlocus", "--field", "rational", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["discriminant"], json!("-11337408"));
    assert_eq!(v["quartic"]["coeffs"], json!(["-54", "108", "-72", "14", "1"]));
}

#[test]
fn verify_rational_sweep_is_deterministic() {
    let args = ["legendre-covers", "verify", "--field", "rational", "--trials", "30", "--seed", "7"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["trials"], json!(30));
    assert_eq!(v["result"], json!("pass"));
    let c = run(["legendre-covers", "verify", "--field", "rational", "--trials", "30", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["moduli", "--p", "11"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["moduli", "--p", "11", "--lambda", "3", "--all-lambdas"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["verify", "--p", "11", "--trials", "many"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["--help"]).status.code(), Some(EXIT_OK));
}
