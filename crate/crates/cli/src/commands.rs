use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use spincm_core::error::Error;
use spincm_core::linalg::QMatrix;
use spincm_core::repmodel::{build_irrep_with_cap, zero_weight_space};
use spincm_core::rootsys::Weight;
use spincm_core::schurweyl::{
    check_bracket_all, check_t_equals_one_plus_p, one_row_scalar, partition_weight, partitions,
    spin_chain_potential_check, TensorZeroBasis,
};
use spincm_core::spectrum::{orthogonality, spectrum_rows, SpinSystem};

use crate::config::{Command, Format, RunConfig};
use crate::suites::run_suite;
use crate::{exit_code, Outcome, EXIT_FAIL, EXIT_PASS};

pub fn dispatch(command: &Command, config: &RunConfig) -> Outcome {
    let result = match command {
        Command::Repr { mu, .. } => cmd_repr(config, mu),
        Command::Spectrum {
            mu,
            verify,
            eigenfunctions,
            ..
        } => cmd_spectrum(config, mu, *verify, *eigenfunctions),
        Command::Ortho { mu, .. } => cmd_ortho(config, mu),
        Command::SchurWeyl { k, .. } => cmd_schur_weyl(config, *k),
        Command::Verify { .. } => cmd_verify(config),
    };
    result.unwrap_or_else(|e| Outcome {
        code: exit_code(&e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

/// Pretty JSON with sorted keys.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("valid json");
    s.push('\n');
    s
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn emit(config: &RunConfig, json: Value, header: &[&str], rows: Vec<Vec<String>>, code: i32) -> Outcome {
    let stdout = match config.format {
        Format::Json => to_json(&json),
        Format::Csv => to_csv(header, &rows),
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn pass_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn cmd_repr(config: &RunConfig, mu: &Weight) -> Result<Outcome, Error> {
    let v = build_irrep_with_cap(config.n, mu, config.dim_cap)?;
    let zero = zero_weight_space(&v);
    let hist = v.weight_histogram();
    let weights: BTreeMap<String, usize> = hist.iter().map(|(w, m)| (w.to_string(), *m)).collect();
    let json = json!({
        "n": config.n,
        "mu": mu,
        "dim": v.dim,
        "zero_weight_dim": zero.dim(),
        "weights": weights,
    });
    let rows = hist.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]).collect();
    let mut out = emit(config, json, &["weight", "multiplicity"], rows, EXIT_PASS);
    if zero.is_empty() {
        out.stderr = format!("warning: zero-weight space of V_({mu}) is empty\n");
    }
    Ok(out)
}

pub fn cmd_spectrum(config: &RunConfig, mu: &Weight, verify: bool, eigenfunctions: bool) -> Result<Outcome, Error> {
    let sys = SpinSystem::new(config.n, mu, config.dim_cap)?;
    let rows = spectrum_rows(&sys, config.cutoff, verify)?;
    let (gauge, c0) = sys.selected_gauge()?;
    let mut json_rows = Vec::new();
    for row in &rows {
        let mut v = serde_json::to_value(row).expect("serializable");
        if eigenfunctions {
            let fs = sys.eigenfunctions(&row.lambda)?;
            v["eigenfunctions"] = Value::Array(fs.iter().map(|f| f.to_json()).collect());
        }
        json_rows.push(v);
    }
    let json = json!({
        "n": config.n,
        "mu": mu,
        "cutoff": config.cutoff,
        "gauge": gauge.as_str(),
        "shift_c0": spincm_core::linalg::fmt_q(&c0),
        "rows": json_rows,
    });
    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.lambda.to_string(),
                r.energy_num.clone(),
                r.energy_den.clone(),
                r.shift_c0.clone(),
                r.gauge.clone(),
                r.multiplicity.to_string(),
                r.verified.map_or_else(String::new, |b| b.to_string()),
            ]
        })
        .collect();
    let pass = rows.iter().all(|r| r.verified != Some(false));
    Ok(emit(
        config,
        json,
        &["lambda", "energy_num", "energy_den", "shift_c0", "gauge", "multiplicity", "verified"],
        csv_rows,
        pass_code(pass),
    ))
}

pub fn cmd_ortho(config: &RunConfig, mu: &Weight) -> Result<Outcome, Error> {
    let rep = orthogonality(config.n, mu, config.cutoff, config.grid, config.dim_cap)?;
    let mut rows = Vec::new();
    for (i, a) in rep.labels.iter().enumerate() {
        for (j, b) in rep.labels.iter().enumerate() {
            rows.push(vec![
                a.lambda.to_string(),
                a.index.to_string(),
                b.lambda.to_string(),
                b.index.to_string(),
                rep.quadrature[i][j].to_string(),
                rep.exact[i][j].clone(),
            ]);
        }
    }
    let pass = rep.pass;
    Ok(emit(
        config,
        serde_json::to_value(&rep).expect("serializable"),
        &["row_lambda", "row_index", "col_lambda", "col_index", "quadrature", "exact"],
        rows,
        pass_code(pass),
    ))
}

pub fn cmd_schur_weyl(config: &RunConfig, k: u32) -> Result<Outcome, Error> {
    let n = config.n;
    let mut rows = Vec::new();
    let mut pass = true;
    let mut one_plus_p = Vec::new();
    let mut brackets = Vec::new();
    for p in partitions(n as u32, n) {
        let rep = check_t_equals_one_plus_p(n, &p)?;
        pass &= rep.pass;
        rows.push(vec!["t = 1 + P".into(), format!("{p:?}"), rep.pass.to_string()]);
        one_plus_p.push(rep);
        if n >= 3 {
            let mu = partition_weight(n, &p)?;
            let triples = check_bracket_all(n, &mu)?;
            let ok = triples.iter().all(|t| t.zero);
            pass &= ok;
            rows.push(vec!["bracket".into(), format!("{p:?}"), ok.to_string()]);
            brackets.push(json!({"partition": p, "mu": mu, "triples": triples.len(), "pass": ok}));
        }
    }
    let one_row = one_row_scalar(n, k)?;
    pass &= one_row.pair_independent;
    rows.push(vec![
        "one-row scalar".into(),
        format!("k={k}"),
        one_row.pair_independent.to_string(),
    ]);
    let spin = spin_chain_potential_check(n)?;
    pass &= spin.pass;
    rows.push(vec!["spin-chain potential".into(), format!("N={n}"), spin.pass.to_string()]);
    let basis = TensorZeroBasis::new(n, n)?;
    let id = QMatrix::identity(basis.len());
    let tensor_ok = (0..n).all(|i| (i + 1..n).all(|j| basis.t_matrix(i, j) == &id + &basis.letter_swap(i, j)))
        && basis.len() as u64 == basis.expected_len();
    pass &= tensor_ok;
    rows.push(vec!["tensor zero-weight model".into(), format!("N={n}"), tensor_ok.to_string()]);
    let json = json!({
        "N": n,
        "one_plus_p": one_plus_p,
        "bracket": brackets,
        "one_row": one_row,
        "spin_chain": spin,
        "tensor_zero_basis": {"words": basis.len(), "expected": basis.expected_len(), "pass": tensor_ok},
        "pass": pass,
    });
    Ok(emit(config, json, &["identity", "case", "pass"], rows, pass_code(pass)))
}

pub fn cmd_verify(config: &RunConfig) -> Result<Outcome, Error> {
    let suite = config.suite.unwrap_or(crate::suites::Suite::All);
    let reports = run_suite(suite, config.n, config.dim_cap)?;
    let pass = reports.iter().all(|r| r.pass);
    let rows = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .map(|c| vec![r.suite.clone(), c.name.clone(), c.pass.to_string(), c.detail.clone()])
        })
        .collect();
    let json = json!({
        "n": config.n,
        "suite": suite.name(),
        "suites": reports,
        "pass": pass,
    });
    Ok(emit(config, json, &["suite", "check", "pass", "detail"], rows, pass_code(pass)))
}
