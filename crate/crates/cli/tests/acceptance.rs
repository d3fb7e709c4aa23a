//! Acceptance criteria, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use spincm_cli::suites::{run_suite, Suite};
use spincm_core::repmodel::DEFAULT_DIM_CAP;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

fn suites(suite: Suite, ns: &[usize]) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for &n in ns {
        match run_suite(suite, n, DEFAULT_DIM_CAP) {
            Ok(reports) => {
                for r in reports {
                    let total = r.checks.len();
                    let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
                    pass &= r.pass;
                    notes.push(format!("sl{n}: {}/{total} checks", total - failed.len()));
                    for c in failed {
                        notes.push(format!("  failed {}: {}", c.name, c.detail));
                    }
                }
            }
            Err(e) => {
                pass = false;
                notes.push(format!("sl{n}: error {e}"));
            }
        }
    }
    Outcome { pass, notes }
}

fn spincm(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_spincm"))
        .args(args)
        .output()
        .expect("spawn spincm");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn gauge_criterion() -> Outcome {
    let mut out = suites(Suite::Gauge, &[2, 3, 4]);
    let runs: [&[&str]; 3] = [
        &["spectrum", "--n", "2", "--mu", "2", "--cutoff", "2"],
        &["spectrum", "--n", "3", "--mu", "1,1", "--cutoff", "1"],
        &["spectrum", "--n", "3", "--mu", "1,1", "--cutoff", "1", "--format", "csv"],
    ];
    for args in runs {
        let (code, stdout) = spincm(args);
        let text = String::from_utf8_lossy(&stdout);
        let recorded = if args.contains(&"csv") {
            text.lines().next().is_some_and(|h| h.contains("shift_c0") && h.contains("gauge"))
        } else {
            serde_json::from_str::<Value>(&text).is_ok_and(|v| {
                let top = v["gauge"].is_string() && v["shift_c0"].is_string();
                let rows = v["rows"].as_array().is_some_and(|rows| {
                    rows.iter().all(|r| r["gauge"].is_string() && r["shift_c0"].is_string())
                });
                top && rows
            })
        };
        out.pass &= code == 0 && recorded;
        out.notes.push(format!("{}: exit {code}, gauge recorded {recorded}", args.join(" ")));
    }
    out
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 7] = [
        &["repr", "--n", "3", "--mu", "1,1"],
        &["repr", "--n", "4", "--mu", "1,0,1", "--format", "csv"],
        &["spectrum", "--n", "3", "--mu", "1,1", "--cutoff", "1", "--verify", "--eigenfunctions"],
        &["ortho", "--n", "3", "--mu", "1,1", "--cutoff", "1"],
        &["ortho", "--n", "2", "--mu", "2", "--cutoff", "3", "--format", "csv"],
        &["schur-weyl", "--n", "3"],
        &["verify", "--suite", "gauge", "--n", "3"],
    ];
    let mut out = Outcome {
        pass: true,
        notes: Vec::new(),
    };
    for args in runs {
        let first = spincm(args);
        let second = spincm(args);
        let same = first == second;
        out.pass &= same;
        out.notes.push(format!("{}: {} bytes, identical {same}", args.join(" "), first.1.len()));
    }
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("representation suite", 30, || suites(Suite::Repr, &[2, 3, 4])),
        ("oracle agreement", 60, || suites(Suite::Oracle, &[2, 3, 4])),
        ("radial characters", 60, || suites(Suite::Radial, &[2, 3])),
        ("eigenfunction equation", 120, || suites(Suite::Eigen, &[2, 3])),
        ("gauge determination", 60, gauge_criterion),
        ("spectrum and multiplicity", 60, || suites(Suite::Spectrum, &[2, 3])),
        ("orthogonality", 60, || suites(Suite::Ortho, &[2, 3])),
        ("commutant", 300, || suites(Suite::Commutant, &[2, 3])),
        ("schur-weyl", 60, || suites(Suite::SchurWeyl, &[2, 3, 4])),
        ("determinism", 120, determinism),
    ];
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let ok = outcome.pass && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {:>7.2}s / {}s",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit
        );
        if verbose || !ok {
            for note in &outcome.notes {
                println!("    {note}");
            }
            if !in_time {
                println!("    exceeded time limit");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
