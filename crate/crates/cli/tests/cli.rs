use std::process::{Command, Output};

use serde_json::Value;
use spincm_cli::{run, EXIT_CAP, EXIT_EMPTY_ZERO, EXIT_FAIL, EXIT_INVALID, EXIT_PASS};

fn spincm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincm"))
        .args(args)
        .output()
        .expect("spawn spincm")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn repr_reports_dimension_and_zero_weights() {
    let out = spincm(&["repr", "--n", "3", "--mu", "1,1"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let v = json(&out);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["zero_weight_dim"], 2);
    assert_eq!(v["mu"], "1,1");
    assert_eq!(v["weights"]["0,0"], 2);
}

#[test]
fn repr_warns_on_empty_zero_weight_space() {
    let out = spincm(&["repr", "--n", "3", "--mu", "2,1"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(json(&out)["zero_weight_dim"], 0);
}

#[test]
fn repr_csv_quotes_weights() {
    let out = spincm(&["repr", "--n", "3", "--mu", "1,0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,multiplicity"));
    assert!(lines.all(|l| l.starts_with('"') && l.ends_with(",1")));
}

#[test]
fn spectrum_sl2_rows() {
    let out = spincm(&["spectrum", "--n", "2", "--mu", "2", "--cutoff", "4", "--verify"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    let lambdas: Vec<&str> = rows.iter().map(|r| r["lambda"].as_str().unwrap()).collect();
    assert_eq!(lambdas, ["1", "2", "3", "4"]);
    assert!(rows.iter().all(|r| r["multiplicity"] == 1 && r["verified"] == true));
    assert!(v["gauge"].is_string());
    assert!(v["shift_c0"].is_string());
}

#[test]
fn spectrum_csv_header() {
    let out = spincm(&["spectrum", "--n", "3", "--mu", "1,1", "--cutoff", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("lambda,energy_num,energy_den,shift_c0,gauge,multiplicity,verified")
    );
    assert!(text.lines().any(|l| l.starts_with("\"1,1\"") && l.contains(",2,")));
}

#[test]
fn spectrum_eigenfunctions_are_attached() {
    let out = spincm(&["spectrum", "--n", "2", "--mu", "2", "--cutoff", "1", "--eigenfunctions"]);
    let v = json(&out);
    let fs = v["rows"][0]["eigenfunctions"].as_array().unwrap();
    assert_eq!(fs.len(), 1);
}

#[test]
fn ortho_passes() {
    let out = spincm(&["ortho", "--n", "2", "--mu", "2", "--cutoff", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn ortho_rejects_small_grid() {
    let out = spincm(&["ortho", "--n", "2", "--mu", "2", "--cutoff", "3", "--grid", "2"]);
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
}

#[test]
fn schur_weyl_n3() {
    let out = spincm(&["schur-weyl", "--n", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["one_plus_p"].as_array().unwrap().len(), 3);
}

#[test]
fn one_row_values_for_sl2() {
    let v = json(&spincm(&["schur-weyl", "--n", "2", "--k", "1"]));
    assert_eq!(v["one_row"]["unsymmetrized"], "2");
    assert_eq!(v["one_row"]["symmetrized"], "4");
}

#[test]
fn verify_suite_csv() {
    let out = spincm(&["verify", "--suite", "repr", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("suite,check,pass,detail"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("repr,")));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| {
        let mut full = vec!["spincm"];
        full.extend_from_slice(args);
        run(full).code
    };
    assert_eq!(code(&["spectrum", "--n", "2", "--mu", "1"]), EXIT_EMPTY_ZERO);
    assert_eq!(code(&["repr", "--n", "4", "--mu", "5,5,5", "--dim-cap", "10"]), EXIT_CAP);
    assert_eq!(code(&["repr", "--n", "2", "--mu", "-1"]), EXIT_INVALID);
    assert_eq!(code(&["repr", "--n", "1", "--mu", "1"]), EXIT_INVALID);
    assert_eq!(code(&["repr", "--n", "3", "--mu", "1"]), EXIT_INVALID);
    assert_eq!(code(&["bogus"]), EXIT_INVALID);
    assert_eq!(code(&["--help"]), EXIT_PASS);
    assert_ne!(EXIT_FAIL, EXIT_PASS);
}

#[test]
fn threads_env_overrides_flag() {
    let run_with = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_spincm"));
        cmd.args(["ortho", "--n", "2", "--mu", "2", "--threads", "3"]);
        if let Some(t) = env {
            cmd.env("SPINCM_THREADS", t);
        }
        cmd.output().unwrap()
    };
    let plain = run_with(None);
    let one = run_with(Some("1"));
    assert_eq!(plain.stdout, one.stdout);
    assert_eq!(run_with(Some("many")).status.code(), Some(EXIT_INVALID));
}
