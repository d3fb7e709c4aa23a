//! Verification suites shared by `spincm verify` and the acceptance target.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use spincm_core::error::{Error, Result};
use spincm_core::intertwine::{hom_dimension, hom_space_with_cap, multiplicity_oracle};
use spincm_core::linalg::{fmt_q, q, QMatrix};
use spincm_core::opalg::{apply, gauge_compare, RadialEngine};
use spincm_core::repmodel::{build_irrep_with_cap, check_relations, weight_multiplicity_oracle, zero_weight_space};
use spincm_core::rootsys::{build_root_system, casimir_value, dominant_weights_up_to, weyl_dim, Weight};
use spincm_core::schurweyl::{
    check_bracket_all, check_t_equals_one_plus_p, one_row_scalar, partitions, spin_chain_potential_check,
    TensorZeroBasis,
};
use spincm_core::spectrum::{
    character_section, orthogonality, spectrum_table, standard_ops, verify_commutant, SpinSystem,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Repr,
    Oracle,
    Radial,
    Gauge,
    Eigen,
    Spectrum,
    Ortho,
    Commutant,
    SchurWeyl,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Repr,
        Suite::Oracle,
        Suite::Radial,
        Suite::Gauge,
        Suite::Eigen,
        Suite::Spectrum,
        Suite::Ortho,
        Suite::Commutant,
        Suite::SchurWeyl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Repr => "repr",
            Suite::Oracle => "oracle",
            Suite::Radial => "radial",
            Suite::Gauge => "gauge",
            Suite::Eigen => "eigen",
            Suite::Spectrum => "spectrum",
            Suite::Ortho => "ortho",
            Suite::Commutant => "commutant",
            Suite::SchurWeyl => "schur-weyl",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// A check whose computation failed outright.
    fn error(name: impl Into<String>, e: &Error) -> Self {
        Check::new(name, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Highest weights exercised for `sl_n`.
pub fn catalog(n: usize) -> Vec<Weight> {
    let w = |c: &[i64]| Weight(c.to_vec());
    match n {
        2 => (1..=4).map(|m| w(&[m])).collect(),
        3 => [[1, 0], [0, 1], [1, 1], [3, 0], [2, 1]].iter().map(|c| w(c)).collect(),
        4 => [[1, 0, 0], [0, 1, 0], [1, 0, 1]].iter().map(|c| w(c)).collect(),
        _ => {
            let r = n - 1;
            let mut out: Vec<Weight> = (0..r).map(|i| Weight::fundamental(r, i)).collect();
            let mut adj = Weight::zero(r);
            adj.0[0] = 1;
            adj.0[r - 1] = 1;
            out.push(adj);
            out
        }
    }
}

fn adjoint(n: usize) -> Weight {
    let mut w = Weight::zero(n - 1);
    w.0[0] += 1;
    w.0[n - 2] += 1;
    w
}

/// Catalog weights with a nonzero zero-weight space.
fn catalog_with_zero(n: usize, cap: usize) -> Vec<Weight> {
    catalog(n)
        .into_iter()
        .filter(|mu| {
            build_irrep_with_cap(n, mu, cap)
                .map(|v| !zero_weight_space(&v).is_empty())
                .unwrap_or(false)
        })
        .collect()
}

pub fn run_suite(suite: Suite, n: usize, cap: usize) -> Result<Vec<SuiteReport>> {
    build_root_system(n)?;
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    suites
        .into_iter()
        .map(|s| {
            let checks = match s {
                Suite::Repr => repr_suite(n, cap),
                Suite::Oracle => oracle_suite(n, cap),
                Suite::Radial => radial_suite(n),
                Suite::Gauge => gauge_suite(n, cap),
                Suite::Eigen => eigen_suite(n, cap),
                Suite::Spectrum => spectrum_suite(n, cap),
                Suite::Ortho => ortho_suite(n, cap),
                Suite::Commutant => commutant_suite(n, cap),
                Suite::SchurWeyl => schur_weyl_suite(n, cap),
                Suite::All => unreachable!(),
            };
            let pass = checks.iter().all(|c| c.pass);
            Ok(SuiteReport {
                suite: s.name().into(),
                n,
                checks,
                pass,
            })
        })
        .collect()
}

fn repr_suite(n: usize, cap: usize) -> Vec<Check> {
    let rs = build_root_system(n).expect("rank checked");
    let mut out = Vec::new();
    for mu in catalog(n) {
        let v = match build_irrep_with_cap(n, &mu, cap) {
            Ok(v) => v,
            Err(e) => {
                out.push(Check::error(format!("build {mu}"), &e));
                continue;
            }
        };
        let failures = check_relations(&v);
        out.push(Check::new(format!("relations {mu}"), failures.is_empty(), failures.join("; ")));
        let wd = weyl_dim(&rs, &mu).expect("dominant");
        out.push(Check::new(
            format!("dimension {mu}"),
            v.dim as u64 == wd,
            format!("dim {} weyl {wd}", v.dim),
        ));
        let z = casimir_value(&rs, &mu).expect("dominant");
        let cas = v.casimir_matrix();
        out.push(Check::new(
            format!("casimir {mu}"),
            cas == QMatrix::identity(v.dim).scale(&z),
            format!("expected {}", fmt_q(&z)),
        ));
        let roots_ok = (0..rs.positive_roots.len()).all(|index| {
            let x = v.root_vector(spincm_core::rootsys::Root { index, positive: true });
            let y = v.root_vector(spincm_core::rootsys::Root { index, positive: false });
            x.commutator(&y) == v.coroot(index)
        });
        out.push(Check::new(format!("root vectors {mu}"), roots_ok, "[X_a, X_-a] = H_a"));
        let zero = zero_weight_space(&v);
        let oracle = weight_multiplicity_oracle(n, &mu, &Weight::zero(n - 1)).expect("dominant");
        out.push(Check::new(
            format!("zero weights {mu}"),
            zero.dim() as u64 == oracle,
            format!("dim {} oracle {oracle}", zero.dim()),
        ));
        let mut lifts_ok = true;
        for i in 0..rs.rank {
            let lift = v.weyl_lift(i);
            for b in 0..v.dim {
                let image = rs.reflect(&v.basis_weights[b], i);
                lifts_ok &= (0..v.dim).all(|r| lift[(r, b)] == q(0) || v.basis_weights[r] == image);
            }
        }
        let id = QMatrix::identity(zero.dim());
        let s = &zero.weyl_action;
        for i in 0..s.len() {
            lifts_ok &= &s[i] * &s[i] == id;
            for j in i + 1..s.len() {
                lifts_ok &= if j == i + 1 {
                    &(&s[i] * &s[j]) * &s[i] == &(&s[j] * &s[i]) * &s[j]
                } else {
                    &s[i] * &s[j] == &s[j] * &s[i]
                };
            }
        }
        out.push(Check::new(
            format!("weyl lifts {mu}"),
            lifts_ok,
            "weight spaces permuted; involutions and braid relations on V[0]",
        ));
    }
    out
}

fn oracle_suite(n: usize, cap: usize) -> Vec<Check> {
    let rs = build_root_system(n).expect("rank checked");
    let lambdas = dominant_weights_up_to(&rs, 3);
    let mut out = Vec::new();
    for mu in catalog(n) {
        let mismatches: Vec<String> = lambdas
            .par_iter()
            .filter_map(|lambda| {
                let count = if weyl_dim(&rs, lambda).ok()? as usize <= cap {
                    hom_space_with_cap(n, lambda, &mu, cap).map(|b| b.len())
                } else {
                    hom_dimension(n, lambda, &mu, cap)
                };
                let oracle = multiplicity_oracle(n, lambda, &mu);
                match (count, oracle) {
                    (Ok(c), Ok(o)) if c as u64 == o => None,
                    (Ok(c), Ok(o)) => Some(format!("{lambda}: {c} vs {o}")),
                    (Err(e), _) | (_, Err(e)) => Some(format!("{lambda}: {e}")),
                }
            })
            .collect();
        out.push(Check::new(
            format!("hom dimension {mu}"),
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{} weights agree", lambdas.len())
            } else {
                mismatches.join("; ")
            },
        ));
        match build_irrep_with_cap(n, &mu, cap) {
            Ok(v) => {
                let d = zero_weight_space(&v).dim() as u64;
                let o = weight_multiplicity_oracle(n, &mu, &Weight::zero(n - 1)).expect("dominant");
                out.push(Check::new(format!("zero weights {mu}"), d == o, format!("{d} vs {o}")));
            }
            Err(e) => out.push(Check::error(format!("zero weights {mu}"), &e)),
        }
    }
    out
}

fn radial_suite(n: usize) -> Vec<Check> {
    let rs = build_root_system(n).expect("rank checked");
    let cutoff = if n <= 3 { 4 } else { 2 };
    let mut eng = match RadialEngine::new(n, &Weight::zero(n - 1)) {
        Ok(e) => e,
        Err(e) => return vec![Check::error("engine", &e)],
    };
    let c2 = match eng.casimir() {
        Ok(c) => c,
        Err(e) => return vec![Check::error("casimir", &e)],
    };
    dominant_weights_up_to(&rs, cutoff)
        .par_iter()
        .map(|lambda| {
            let name = format!("character {lambda}");
            let z = casimir_value(&rs, lambda).expect("dominant");
            let res = character_section(&rs, lambda).and_then(|chi| {
                apply(&c2, &chi).map(|out| out.sub_fourier(&chi.scale(&z)).is_zero())
            });
            match res {
                Ok(ok) => Check::new(name, ok, format!("eigenvalue {}", fmt_q(&z))),
                Err(e) => Check::error(name, &e),
            }
        })
        .collect()
}

fn gauge_suite(n: usize, cap: usize) -> Vec<Check> {
    let mut mus = vec![Weight::zero(n - 1)];
    mus.extend(catalog_with_zero(n, cap));
    mus.par_iter()
        .map(|mu| {
            let name = format!("gauge {mu}");
            let res = RadialEngine::with_cap(n, mu, cap).and_then(|mut eng| gauge_compare(&mut eng));
            match res {
                Ok(rep) => {
                    let selected = rep.selected();
                    let detail = format!(
                        "plain: {}; delta-twisted: {}; {}",
                        rep.plain.describe(),
                        rep.twisted.describe(),
                        match &selected {
                            Some((g, c0)) => format!("selected {} with c0 = {}", g.as_str(), fmt_q(c0)),
                            None => "no gauge works".into(),
                        }
                    );
                    Check::new(name, selected.is_some(), detail)
                }
                Err(e) => Check::error(name, &e),
            }
        })
        .collect()
}

fn eigen_cases(n: usize) -> (Weight, Vec<Weight>) {
    let w = |c: &[i64]| Weight(c.to_vec());
    match n {
        2 => (w(&[2]), (1..=4).map(|m| w(&[m])).collect()),
        3 => (w(&[1, 1]), vec![w(&[1, 0]), w(&[0, 1]), w(&[1, 1]), w(&[2, 1])]),
        _ => {
            let r = n - 1;
            (adjoint(n), vec![Weight::fundamental(r, 0), adjoint(n)])
        }
    }
}

fn eigen_suite(n: usize, cap: usize) -> Vec<Check> {
    let (mu, lambdas) = eigen_cases(n);
    let sys = match SpinSystem::new(n, &mu, cap) {
        Ok(s) => s,
        Err(e) => return vec![Check::error(format!("system {mu}"), &e)],
    };
    lambdas
        .par_iter()
        .flat_map_iter(|lambda| {
            let fs = match sys.eigenfunctions(lambda) {
                Ok(fs) => fs,
                Err(e) => return vec![Check::error(format!("eigenfunctions {lambda}"), &e)],
            };
            let mut out = Vec::new();
            match multiplicity_oracle(n, lambda, &mu) {
                Ok(m) => out.push(Check::new(
                    format!("multiplicity {lambda}"),
                    fs.len() as u64 == m,
                    format!("{} eigenfunctions, oracle {m}", fs.len()),
                )),
                Err(e) => out.push(Check::error(format!("multiplicity {lambda}"), &e)),
            }
            for (a, f) in fs.iter().enumerate() {
                let name = format!("eigen {lambda} a={a}");
                out.push(match sys.verify(lambda, a, f) {
                    Ok(r) => Check::new(
                        name,
                        r.radial_ok && r.cm_ok && r.weyl_equivariant,
                        format!(
                            "radial {} (z = {}), cm {} ({} gauge, E = {}), equivariant {}",
                            r.radial_ok, r.casimir, r.cm_ok, r.gauge, r.energy, r.weyl_equivariant
                        ),
                    ),
                    Err(e) => Check::error(name, &e),
                });
            }
            out
        })
        .collect()
}

fn spectrum_suite(n: usize, cap: usize) -> Vec<Check> {
    let w = |c: &[i64]| Weight(c.to_vec());
    let mut out = Vec::new();
    let (mu, cutoff) = match n {
        2 => (w(&[2]), 4),
        _ => (adjoint(n), 1),
    };
    let rows = match spectrum_table(n, &mu, cutoff, true, cap) {
        Ok(r) => r,
        Err(e) => return vec![Check::error(format!("table {mu}"), &e)],
    };
    let summary: Vec<String> = rows.iter().map(|r| format!("{}:{}", r.lambda, r.multiplicity)).collect();
    out.push(Check::new(
        format!("rows verified {mu} cutoff {cutoff}"),
        rows.iter().all(|r| r.verified == Some(true)),
        summary.join(" "),
    ));
    if n == 2 {
        let lambdas: Vec<String> = rows.iter().map(|r| r.lambda.to_string()).collect();
        out.push(Check::new(
            "sl2 (2) rows",
            lambdas == ["1", "2", "3", "4"] && rows.iter().all(|r| r.multiplicity == 1),
            summary.join(" "),
        ));
    } else {
        let adj = rows.iter().find(|r| r.lambda == mu);
        let expected = 2;
        out.push(Check::new(
            format!("multiplicity at {mu}"),
            adj.map(|r| r.multiplicity) == Some(expected),
            format!("expected {expected}"),
        ));
        if n == 3 {
            out.push(non_scalar_block(n, &mu, cap));
        }
    }
    out
}

/// The multiplicity-two block carries a non-scalar action of some mixed word.
fn non_scalar_block(n: usize, mu: &Weight, cap: usize) -> Check {
    let name = format!("non-scalar block at {mu}");
    let res = SpinSystem::new(n, mu, cap).and_then(|mut sys| {
        let ops: Vec<_> = standard_ops(&mut sys, 3)?.into_iter().filter(|o| !o.central).collect();
        let rep = verify_commutant(&sys, 1, &ops)?;
        Ok(rep
            .actions
            .into_iter()
            .find(|a| &a.lambda == mu && a.preserves_block && a.scalar.is_none()))
    });
    match res {
        Ok(Some(a)) => Check::new(
            name,
            a.matrix.as_ref().map(Vec::len) == Some(2),
            format!("{} acts by {:?}", a.op, a.matrix.unwrap_or_default()),
        ),
        Ok(None) => Check::new(name, false, "every word acts by a scalar"),
        Err(e) => Check::error(name, &e),
    }
}

fn ortho_suite(n: usize, cap: usize) -> Vec<Check> {
    let cases: Vec<(Weight, u32)> = match n {
        2 => vec![(Weight(vec![0]), 4), (Weight(vec![2]), 4)],
        3 => vec![(Weight::zero(2), 2), (Weight(vec![1, 1]), 2)],
        _ => vec![(adjoint(n), 1)],
    };
    cases
        .iter()
        .map(|(mu, cutoff)| {
            let name = format!("orthogonality {mu} cutoff {cutoff}");
            match orthogonality(n, mu, *cutoff, None, cap) {
                Ok(r) => Check::new(
                    name,
                    r.pass,
                    format!(
                        "{} functions, off-block {:.2e}, deviation {:.2e}, imaginary {:.2e}",
                        r.labels.len(),
                        r.max_off_block,
                        r.max_deviation,
                        r.max_imaginary
                    ),
                ),
                Err(e) => Check::error(name, &e),
            }
        })
        .collect()
}

fn commutant_cases(n: usize) -> Vec<(Weight, u32)> {
    let w = |c: &[i64]| Weight(c.to_vec());
    match n {
        2 => vec![(w(&[2]), 4), (w(&[4]), 4)],
        3 => vec![(w(&[1, 1]), 2), (w(&[3, 0]), 2)],
        _ => vec![(adjoint(n), 1)],
    }
}

fn commutant_suite(n: usize, cap: usize) -> Vec<Check> {
    commutant_cases(n)
        .iter()
        .map(|(mu, cutoff)| {
            let name = format!("commutant {mu} cutoff {cutoff}");
            let res = SpinSystem::new(n, mu, cap).and_then(|mut sys| {
                let ops = standard_ops(&mut sys, 3)?;
                verify_commutant(&sys, *cutoff, &ops)
            });
            match res {
                Ok(r) => {
                    let failed: Vec<String> = r
                        .actions
                        .iter()
                        .filter(|a| !a.ok)
                        .map(|a| format!("{} on {}", a.op, a.lambda))
                        .chain(
                            r.commutators
                                .iter()
                                .filter(|c| !c.annihilates)
                                .map(|c| format!("[{}, {}] on {}", c.central, c.other, c.lambda)),
                        )
                        .collect();
                    let detail = if failed.is_empty() {
                        format!(
                            "{} block actions, {} commutators",
                            r.actions.len(),
                            r.commutators.len()
                        )
                    } else {
                        failed.join("; ")
                    };
                    Check::new(name, r.pass, detail)
                }
                Err(e) => Check::error(name, &e),
            }
        })
        .collect()
}

fn schur_weyl_suite(n: usize, cap: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for p in partitions(n as u32, n) {
        let name = format!("t = 1 + P for {p:?}");
        out.push(match check_t_equals_one_plus_p(n, &p) {
            Ok(r) => Check::new(
                name,
                r.pass,
                format!(
                    "V[0] dim {}, t symmetric {}, symmetric group {}",
                    r.zero_dim, r.t_symmetric, r.symmetric_group
                ),
            ),
            Err(e) => Check::error(name, &e),
        });
    }
    if n >= 3 {
        for mu in catalog_with_zero(n, cap) {
            let name = format!("bracket identity {mu}");
            out.push(match check_bracket_all(n, &mu) {
                Ok(r) => Check::new(
                    name,
                    r.iter().all(|b| b.zero),
                    format!("{} ordered triples", r.len()),
                ),
                Err(e) => Check::error(name, &e),
            });
        }
    }
    let ks: &[u32] = if n == 2 { &[1, 2] } else { &[1] };
    for &k in ks {
        let name = format!("one-row scalar n={n} k={k}");
        out.push(match one_row_scalar(n, k) {
            Ok(r) => {
                let mut ok = r.pair_independent;
                if n == 2 {
                    let kk = k as i64 * (k as i64 + 1);
                    ok &= r.unsymmetrized == kk.to_string() && r.symmetrized == (2 * kk).to_string();
                }
                Check::new(
                    name,
                    ok,
                    format!(
                        "unsymmetrized {}, symmetrized {}, 2k(k+1) = {} matches {}",
                        r.unsymmetrized, r.symmetrized, r.closed_form, r.closed_form_matches
                    ),
                )
            }
            Err(e) => Check::error(name, &e),
        });
    }
    match TensorZeroBasis::new(n, n) {
        Ok(b) => {
            let id = QMatrix::identity(b.len());
            let ok = (0..n).all(|i| (i + 1..n).all(|j| b.t_matrix(i, j) == &id + &b.letter_swap(i, j)));
            out.push(Check::new(
                "tensor zero-weight model",
                ok && b.len() as u64 == b.expected_len(),
                format!("{} balanced words", b.len()),
            ));
        }
        Err(e) => out.push(Check::error("tensor zero-weight model", &e)),
    }
    let name = format!("spin-chain potential N={n}");
    out.push(match spin_chain_potential_check(n) {
        Ok(r) => {
            let couplings: Vec<String> = r
                .entries
                .iter()
                .filter_map(|e| e.couplings.as_ref().map(|c| format!("{:?}: {}", e.partition, c[0])))
                .collect();
            Check::new(name, r.pass, format!("one-dimensional couplings {}", couplings.join(", ")))
        }
        Err(e) => Check::error(name, &e),
    });
    out
}
