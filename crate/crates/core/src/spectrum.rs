//! Trace eigenfunctions, their eigen-equations, torus orthogonality and
//! spectrum tables.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intertwine::{hom_space_with_cap, multiplicity_oracle, orthonormalize, IntertwinerBasis};
use crate::linalg::{fmt_q, q, q_to_f64, qf, QMatrix, Q};
use crate::opalg::hamiltonian::{weyl_denominator, Gauge, GaugeReport};
use crate::opalg::{apply, cm_hamiltonian, gauge_compare, DiffOp, LaurentPoly, RadialEngine};
use crate::repmodel::{build_irrep_with_cap, zero_weight_space, ZeroWeightSpace, DEFAULT_DIM_CAP};
use crate::rootsys::{build_root_system, casimir_value, dominant_weights_up_to, RootSystem, Weight};

pub use crate::opalg::FourierSection;

/// All orthogonalized intertwiners `L_λ → L_λ ⊗ V_μ`.
pub fn intertwiners(n: usize, lambda: &Weight, mu: &Weight, cap: usize) -> Result<Option<IntertwinerBasis>> {
    let basis = hom_space_with_cap(n, lambda, mu, cap)?;
    if basis.is_empty() {
        return Ok(None);
    }
    orthonormalize(&basis).map(Some)
}

/// `f(h) = tr_{L_λ}(K(a) π_λ(h))` as a Fourier sum with `V_μ[0]` coefficients.
pub fn eigenfunction_from(basis: &IntertwinerBasis, a: usize) -> Result<FourierSection> {
    if a >= basis.len() {
        return Err(Error::IndexOutOfRange {
            index: a,
            len: basis.len(),
        });
    }
    let zero = zero_weight_space(&basis.v);
    let k = &basis.maps[a];
    let dv = basis.v.dim;
    let mut f = FourierSection::zero(basis.l.rank(), zero.dim());
    for b in 0..basis.l.dim {
        let coeffs: Vec<Q> = zero
            .indices
            .iter()
            .map(|&z| k.get(b * dv + z, b))
            .collect();
        f.add_term(basis.l.basis_weights[b].clone(), &coeffs);
    }
    Ok(f)
}

pub fn eigenfunction(n: usize, lambda: &Weight, mu: &Weight, a: usize) -> Result<FourierSection> {
    let basis = hom_space_with_cap(n, lambda, mu, DEFAULT_DIM_CAP)?;
    let len = basis.len();
    match intertwiners(n, lambda, mu, DEFAULT_DIM_CAP)? {
        Some(b) => eigenfunction_from(&b, a),
        None => Err(Error::IndexOutOfRange { index: a, len }),
    }
}

/// Weyl character `χ_λ` as a scalar section.
pub fn character_section(rs: &RootSystem, lambda: &Weight) -> Result<FourierSection> {
    let ch = crate::repmodel::character(rs, lambda)?;
    let mut f = FourierSection::zero(rs.rank, 1);
    for (w, m) in ch.all_weights(rs) {
        f.add_term(w, &[q(m as i64)]);
    }
    Ok(f)
}

/// `f(s_i h) = lift(s_i) f(h)`, i.e. `c_{s_i ν} = lift(s_i) c_ν`, for every simple reflection.
pub fn check_weyl_equivariance(rs: &RootSystem, zero: &ZeroWeightSpace, f: &FourierSection) -> bool {
    (0..rs.rank).all(|i| {
        f.terms.iter().all(|(nu, c)| {
            let image = rs.reflect(nu, i);
            let expected = zero.weyl_action[i].mul_vec(c);
            match f.terms.get(&image) {
                Some(v) => v == &expected,
                None => expected.iter().all(Zero::is_zero),
            }
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub lambda: Weight,
    pub mu: Weight,
    pub index: usize,
    pub casimir: String,
    /// `radial(c₂) f = ⟨λ, λ+2ρ⟩ f`.
    pub radial_ok: bool,
    pub gauge: String,
    pub shift_c0: String,
    pub energy: String,
    /// `H_CM (g f) = E (g f)` in the selected gauge `g`.
    pub cm_ok: bool,
    pub weyl_equivariant: bool,
}

/// Everything needed to test eigenfunctions for one `μ`.
pub struct SpinSystem {
    pub n: usize,
    pub mu: Weight,
    pub cap: usize,
    pub engine: RadialEngine,
    pub casimir_op: DiffOp,
    pub hamiltonian: DiffOp,
    pub gauge: GaugeReport,
}

impl SpinSystem {
    pub fn new(n: usize, mu: &Weight, cap: usize) -> Result<Self> {
        let mut engine = RadialEngine::with_cap(n, mu, cap)?;
        let casimir_op = engine.casimir()?;
        let hamiltonian = cm_hamiltonian(&engine);
        let gauge = gauge_compare(&mut engine)?;
        Ok(SpinSystem {
            n,
            mu: mu.clone(),
            cap,
            engine,
            casimir_op,
            hamiltonian,
            gauge,
        })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.engine.lie.rs
    }

    pub fn selected_gauge(&self) -> Result<(Gauge, Q)> {
        self.gauge
            .selected()
            .ok_or_else(|| Error::Internal(format!("no gauge makes H_CM a shifted radial Casimir for μ={}", self.mu)))
    }

    pub fn energy(&self, lambda: &Weight) -> Result<Q> {
        let (_, c0) = self.selected_gauge()?;
        Ok(casimir_value(self.rs(), lambda)? * qf(1, 2) + c0)
    }

    pub fn verify(&self, lambda: &Weight, index: usize, f: &FourierSection) -> Result<EigenReport> {
        let rs = self.rs();
        let z = casimir_value(rs, lambda)?;
        let radial_ok = apply(&self.casimir_op, f)?.sub_fourier(&f.scale(&z)).is_zero();
        let (gauge, c0) = self.selected_gauge()?;
        let energy = &z * qf(1, 2) + &c0;
        let g = match gauge {
            Gauge::Plain => f.clone(),
            Gauge::DeltaTwisted => f.mul_poly(&weyl_denominator(rs)),
        };
        let cm_ok = apply(&self.hamiltonian, &g)?.sub_fourier(&g.scale(&energy)).is_zero();
        Ok(EigenReport {
            lambda: lambda.clone(),
            mu: self.mu.clone(),
            index,
            casimir: fmt_q(&z),
            radial_ok,
            gauge: gauge.as_str().into(),
            shift_c0: fmt_q(&c0),
            energy: fmt_q(&energy),
            cm_ok,
            weyl_equivariant: check_weyl_equivariance(rs, &self.engine.zero, f),
        })
    }

    /// Orthogonalized eigenfunctions `f_{λ,μ,a}` for all `a`.
    pub fn eigenfunctions(&self, lambda: &Weight) -> Result<Vec<FourierSection>> {
        match intertwiners(self.n, lambda, &self.mu, self.cap)? {
            None => Ok(Vec::new()),
            Some(b) => (0..b.len()).map(|a| eigenfunction_from(&b, a)).collect(),
        }
    }
}

pub fn verify_eigen(n: usize, lambda: &Weight, mu: &Weight, a: usize) -> Result<EigenReport> {
    let sys = SpinSystem::new(n, mu, DEFAULT_DIM_CAP)?;
    let fs = sys.eigenfunctions(lambda)?;
    let f = fs.get(a).ok_or(Error::IndexOutOfRange { index: a, len: fs.len() })?;
    sys.verify(lambda, a, f)
}

/// Grid size that integrates the product of `f`, `g` and the density exactly.
pub fn bandwidth(rs: &RootSystem, f: &FourierSection, g: &FourierSection) -> i64 {
    let (ef, eg) = (f.extent(), g.extent());
    (0..rs.rank)
        .map(|j| {
            let dens: i64 = rs.positive_roots.iter().map(|r| r.weight.0[j].abs()).sum();
            ef[j] + eg[j] + dens
        })
        .max()
        .unwrap_or(0)
}

pub fn default_grid(rs: &RootSystem, f: &FourierSection, g: &FourierSection) -> usize {
    let b = bandwidth(rs, f, g);
    (2 * ((b + 1) / 2) + 3) as usize
}

/// Weyl density `∏_{α>0} |1 - h^α|²` at a torus point.
fn density(rs: &RootSystem, t: &[f64]) -> f64 {
    rs.positive_roots
        .iter()
        .map(|r| LaurentPoly::one_minus(&r.weight).eval(t).norm_sqr())
        .product()
}

/// Uniform-grid torus quadrature of `conj(f_i) g_j` against the Weyl density,
/// normalized so that the torus has volume one.
pub fn quadrature_inner(
    rs: &RootSystem,
    f: &FourierSection,
    g: &FourierSection,
    grid: usize,
) -> Result<Vec<Vec<Complex64>>> {
    let b = bandwidth(rs, f, g);
    if (grid as i64) <= b {
        return Err(Error::Bandwidth { grid, bandwidth: b as usize });
    }
    let r = rs.rank;
    let comps_f: Vec<LaurentPoly> = (0..f.dim).map(|i| f.component(i)).collect();
    let comps_g: Vec<LaurentPoly> = (0..g.dim).map(|j| g.component(j)).collect();
    let points = grid.pow(r as u32);
    let mut out = vec![vec![Complex64::zero(); g.dim]; f.dim];
    for p in 0..points {
        let mut rem = p;
        let t: Vec<f64> = (0..r)
            .map(|_| {
                let k = rem % grid;
                rem /= grid;
                k as f64 / grid as f64
            })
            .collect();
        let rho = density(rs, &t);
        let fv: Vec<Complex64> = comps_f.iter().map(|c| c.eval(&t)).collect();
        let gv: Vec<Complex64> = comps_g.iter().map(|c| c.eval(&t)).collect();
        for (i, a) in fv.iter().enumerate() {
            for (j, b) in gv.iter().enumerate() {
                out[i][j] += a.conj() * b * rho;
            }
        }
    }
    let scale = 1.0 / points as f64;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= scale;
        }
    }
    Ok(out)
}

/// Exact counterpart of [`quadrature_inner`]: the constant term of
/// `f_i(h^{-1}) g_j(h) ∏_{α>0} (1 - h^α)(1 - h^{-α})` (real coefficients).
pub fn exact_inner(rs: &RootSystem, f: &FourierSection, g: &FourierSection) -> QMatrix {
    let dens = rs.positive_roots.iter().fold(LaurentPoly::one(rs.rank), |acc, r| {
        &(&acc * &LaurentPoly::one_minus(&r.weight)) * &LaurentPoly::one_minus(&-&r.weight)
    });
    let mut out = QMatrix::zeros(f.dim, g.dim);
    let zero = Weight::zero(rs.rank);
    for i in 0..f.dim {
        let fi = f.component(i).invert_exponents();
        for j in 0..g.dim {
            let prod = &(&fi * &g.component(j)) * &dens;
            out[(i, j)] = prod.coefficient(&zero);
        }
    }
    out
}

/// Contract a component matrix with the invariant form on `V[0]`.
pub fn contract(form: &QMatrix, m: &[Vec<Complex64>]) -> Complex64 {
    let mut s = Complex64::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            s += x * q_to_f64(&form[(i, j)]);
        }
    }
    s
}

pub fn contract_exact(form: &QMatrix, m: &QMatrix) -> Q {
    let mut s = Q::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !form[(i, j)].is_zero() {
                s += &form[(i, j)] * &m[(i, j)];
            }
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthoEntry {
    pub lambda: Weight,
    pub index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthoReport {
    pub mu: Weight,
    pub cutoff: u32,
    pub labels: Vec<OrthoEntry>,
    /// Real parts of the quadrature Gram matrix.
    pub quadrature: Vec<Vec<f64>>,
    pub exact: Vec<Vec<String>>,
    pub max_off_block: f64,
    pub max_deviation: f64,
    pub max_imaginary: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Gram matrix of all eigenfunctions with `λ` up to the cutoff.
pub fn orthogonality(n: usize, mu: &Weight, cutoff: u32, grid: Option<usize>, cap: usize) -> Result<OrthoReport> {
    let rs = build_root_system(n)?;
    let v = build_irrep_with_cap(n, mu, cap)?;
    let zero = zero_weight_space(&v);
    if zero.is_empty() {
        return Err(Error::EmptyZeroWeight(mu.to_string()));
    }
    let lambdas = dominant_weights_up_to(&rs, cutoff);
    let per_lambda: Vec<Result<Vec<(Weight, usize, FourierSection)>>> = lambdas
        .par_iter()
        .map(|lambda| {
            let fs = match intertwiners(n, lambda, mu, cap)? {
                None => Vec::new(),
                Some(b) => (0..b.len())
                    .map(|a| eigenfunction_from(&b, a))
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(fs.into_iter().enumerate().map(|(a, f)| (lambda.clone(), a, f)).collect())
        })
        .collect();
    let mut items = Vec::new();
    for r in per_lambda {
        items.extend(r?);
    }
    let k = items.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
    let values: Vec<Result<(Complex64, Q)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (f, g) = (&items[a].2, &items[b].2);
            let grid = grid.unwrap_or_else(|| default_grid(&rs, f, g));
            let m = quadrature_inner(&rs, f, g, grid)?;
            Ok((contract(&zero.gram, &m), contract_exact(&zero.gram, &exact_inner(&rs, f, g))))
        })
        .collect();
    let mut quad = vec![vec![0.0; k]; k];
    let mut exact = vec![vec![Q::zero(); k]; k];
    let (mut off, mut dev, mut imag) = (0.0f64, 0.0f64, 0.0f64);
    for (&(a, b), val) in pairs.iter().zip(values) {
        let (z, x) = val?;
        for (i, j) in [(a, b), (b, a)] {
            quad[i][j] = z.re;
            exact[i][j] = x.clone();
        }
        imag = imag.max(z.im.abs());
        if items[a].0 != items[b].0 {
            off = off.max(z.norm());
        }
        dev = dev.max((z.re - q_to_f64(&x)).abs());
    }
    let tolerance = 1e-9;
    Ok(OrthoReport {
        mu: mu.clone(),
        cutoff,
        labels: items
            .iter()
            .map(|(l, a, _)| OrthoEntry {
                lambda: l.clone(),
                index: *a,
            })
            .collect(),
        quadrature: quad,
        exact: exact.iter().map(|row| row.iter().map(fmt_q).collect()).collect(),
        max_off_block: off,
        max_deviation: dev,
        max_imaginary: imag,
        tolerance,
        pass: off <= tolerance && dev <= tolerance && imag <= tolerance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub lambda: Weight,
    pub energy: String,
    pub energy_num: String,
    pub energy_den: String,
    pub shift_c0: String,
    pub gauge: String,
    pub multiplicity: u64,
    /// `None` when verification was not requested.
    pub verified: Option<bool>,
}

fn energy_row(sys: &SpinSystem, lambda: &Weight, multiplicity: u64) -> Result<SpectrumRow> {
    let (gauge, c0) = sys.selected_gauge()?;
    let e = sys.energy(lambda)?;
    Ok(SpectrumRow {
        lambda: lambda.clone(),
        energy: fmt_q(&e),
        energy_num: e.numer().to_string(),
        energy_den: e.denom().to_string(),
        shift_c0: fmt_q(&c0),
        gauge: gauge.as_str().into(),
        multiplicity,
        verified: None,
    })
}

pub fn spectrum_table(n: usize, mu: &Weight, cutoff: u32, verify: bool, cap: usize) -> Result<Vec<SpectrumRow>> {
    spectrum_rows(&SpinSystem::new(n, mu, cap)?, cutoff, verify)
}

pub fn spectrum_rows(sys: &SpinSystem, cutoff: u32, verify: bool) -> Result<Vec<SpectrumRow>> {
    let lambdas = dominant_weights_up_to(sys.rs(), cutoff);
    let mults: Vec<Result<u64>> = lambdas
        .par_iter()
        .map(|l| multiplicity_oracle(sys.n, l, &sys.mu))
        .collect();
    let mut rows = Vec::new();
    for (lambda, m) in lambdas.iter().zip(mults) {
        let m = m?;
        if m == 0 {
            continue;
        }
        let mut row = energy_row(sys, lambda, m)?;
        if verify {
            let fs = sys.eigenfunctions(lambda)?;
            let mut ok = fs.len() as u64 == m;
            for (a, f) in fs.iter().enumerate() {
                let rep = sys.verify(lambda, a, f)?;
                ok &= rep.radial_ok && rep.cm_ok && rep.weyl_equivariant;
            }
            row.verified = Some(ok);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// An operator to test on the eigenfunction span; central ones must act by scalars.
#[derive(Clone, Debug)]
pub struct NamedOp {
    pub name: String,
    pub op: DiffOp,
    pub central: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockAction {
    pub op: String,
    pub lambda: Weight,
    pub preserves_block: bool,
    /// Matrix of the action on `(f_{λ,a})_a` when the block is preserved.
    pub matrix: Option<Vec<Vec<String>>>,
    pub scalar: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorCheck {
    pub central: String,
    pub other: String,
    pub lambda: Weight,
    pub annihilates: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub mu: Weight,
    pub cutoff: u32,
    pub actions: Vec<BlockAction>,
    pub commutators: Vec<CommutatorCheck>,
    pub pass: bool,
}

/// Coordinates of `g` in the span of `basis`, if it lies there.
fn solve_in_span(basis: &[FourierSection], g: &FourierSection) -> Option<Vec<Q>> {
    let mut keys: Vec<(Weight, usize)> = Vec::new();
    for f in basis.iter().chain(std::iter::once(g)) {
        for (nu, v) in &f.terms {
            for j in 0..v.len() {
                keys.push((nu.clone(), j));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let coord = |f: &FourierSection, (nu, j): &(Weight, usize)| -> Q {
        f.terms.get(nu).map_or_else(Q::zero, |v| v[*j].clone())
    };
    let mut m = QMatrix::zeros(keys.len(), basis.len());
    for (r, key) in keys.iter().enumerate() {
        for (c, f) in basis.iter().enumerate() {
            m[(r, c)] = coord(f, key);
        }
    }
    let rhs: Vec<Q> = keys.iter().map(|k| coord(g, k)).collect();
    let x = m.solve(&rhs)?;
    // solve zeroes free variables; check the residual explicitly
    let back = m.mul_vec(&x);
    (back == rhs).then_some(x)
}

pub fn verify_commutant(sys: &SpinSystem, cutoff: u32, ops: &[NamedOp]) -> Result<CommutantReport> {
    let lambdas = dominant_weights_up_to(sys.rs(), cutoff);
    let mut blocks = Vec::new();
    for lambda in &lambdas {
        let fs = sys.eigenfunctions(lambda)?;
        if !fs.is_empty() {
            blocks.push((lambda.clone(), fs));
        }
    }
    let mut actions = Vec::new();
    let mut commutators = Vec::new();
    let mut pass = true;
    for (lambda, fs) in &blocks {
        // images[op][a] = op f_a when it is a Fourier section
        let mut images: Vec<Vec<Option<FourierSection>>> = Vec::new();
        for op in ops {
            let imgs: Vec<Option<FourierSection>> = fs
                .par_iter()
                .map(|f| apply(&op.op, f).map(|r| r.as_fourier(f.rank)))
                .collect::<Result<Vec<_>>>()?;
            let cols: Option<Vec<Vec<Q>>> = imgs
                .iter()
                .map(|g| g.as_ref().and_then(|g| solve_in_span(fs, g)))
                .collect();
            let action = match cols {
                None => BlockAction {
                    op: op.name.clone(),
                    lambda: lambda.clone(),
                    preserves_block: false,
                    matrix: None,
                    scalar: None,
                    ok: false,
                },
                Some(cols) => {
                    let k = fs.len();
                    let mut mat = QMatrix::zeros(k, k);
                    for (c, col) in cols.iter().enumerate() {
                        mat.set_column(c, col);
                    }
                    let scalar = mat.as_scalar();
                    BlockAction {
                        op: op.name.clone(),
                        lambda: lambda.clone(),
                        preserves_block: true,
                        matrix: Some(
                            (0..k)
                                .map(|r| mat.row(r).iter().map(fmt_q).collect())
                                .collect(),
                        ),
                        scalar: scalar.as_ref().map(fmt_q),
                        ok: !op.central || scalar.is_some(),
                    }
                }
            };
            pass &= action.ok;
            actions.push(action);
            images.push(imgs);
        }
        // [B, A] f = B(A f) - A(B f), by sequential application
        for (bi, b) in ops.iter().enumerate().filter(|(_, o)| o.central) {
            for (ai, a) in ops.iter().enumerate() {
                if ai == bi {
                    continue;
                }
                let mut ok = true;
                for (idx, _) in fs.iter().enumerate() {
                    let (Some(af), Some(bf)) = (&images[ai][idx], &images[bi][idx]) else {
                        ok = false;
                        break;
                    };
                    let bac = apply(&b.op, af)?;
                    let abc = apply(&a.op, bf)?;
                    let diff: Vec<_> = bac
                        .components
                        .iter()
                        .zip(&abc.components)
                        .map(|(x, y)| x - y)
                        .collect();
                    ok &= diff.iter().all(|c| c.is_zero());
                }
                pass &= ok;
                commutators.push(CommutatorCheck {
                    central: b.name.clone(),
                    other: a.name.clone(),
                    lambda: lambda.clone(),
                    annihilates: ok,
                });
            }
        }
    }
    Ok(CommutantReport {
        mu: sys.mu.clone(),
        cutoff,
        actions,
        commutators,
        pass,
    })
}

/// The standard operator family: radial `c₂`, `H^V_k` from both sides for
/// `k ≤ max_degree`, and every mixed word of total degree `≤ max_degree`.
pub fn standard_ops(sys: &mut SpinSystem, max_degree: u32) -> Result<Vec<NamedOp>> {
    use crate::opalg::Side;
    let mut ops = vec![NamedOp {
        name: "radial c2".into(),
        op: sys.casimir_op.clone(),
        central: true,
    }];
    for k in 2..=max_degree {
        for side in [Side::L, Side::R] {
            ops.push(NamedOp {
                name: format!("H{k}^{side:?}"),
                op: sys.engine.amu_element(&[(side, k)])?,
                central: true,
            });
        }
    }
    let mut seen = BTreeMap::new();
    for len in 2..=max_degree as usize {
        for mask in 0..(1u32 << len) {
            let sides: Vec<Side> = (0..len)
                .map(|i| if mask >> i & 1 == 1 { Side::R } else { Side::L })
                .collect();
            if sides.iter().all(|&s| s == sides[0]) {
                continue;
            }
            let mut word: Vec<(Side, u32)> = Vec::new();
            for s in sides {
                match word.last_mut() {
                    Some((last, p)) if *last == s => *p += 1,
                    _ => word.push((s, 1)),
                }
            }
            let name = word
                .iter()
                .map(|(s, p)| format!("({s:?},{p})"))
                .collect::<Vec<_>>()
                .join("");
            if seen.insert(name.clone(), ()).is_none() {
                ops.push(NamedOp {
                    name,
                    op: sys.engine.amu_element(&word)?,
                    central: false,
                });
            }
        }
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn trivial_eigenfunction_is_constant() {
        let f = eigenfunction(2, &w(&[0]), &w(&[0]), 0).unwrap();
        assert_eq!(f.terms.len(), 1);
        assert!(f.terms.contains_key(&w(&[0])));
    }

    #[test]
    fn sl2_spin_one_eigenfunction_support() {
        let f = eigenfunction(2, &w(&[1]), &w(&[2]), 0).unwrap();
        let support: Vec<Weight> = f.terms.keys().cloned().collect();
        assert_eq!(support, vec![w(&[-1]), w(&[1])]);
    }

    #[test]
    fn quadrature_of_one_on_sl2() {
        let rs = build_root_system(2).unwrap();
        let one = FourierSection::from_components(1, &[LaurentPoly::one(1)]);
        let m = quadrature_inner(&rs, &one, &one, 5).unwrap();
        assert!((m[0][0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(quadrature_inner(&rs, &one, &one, 2).is_err());
    }

    #[test]
    fn eigen_equation_sl2() {
        let rep = verify_eigen(2, &w(&[3]), &w(&[2]), 0).unwrap();
        assert!(rep.radial_ok && rep.cm_ok && rep.weyl_equivariant, "{rep:?}");
        assert_eq!(rep.casimir, "15/2");
    }
}
