//! Intertwiners `L_λ → L_λ ⊗ V_μ`.
//!
//! An intertwiner is determined by the image of the highest-weight vector,
//! which must be a singular vector of weight `λ` in `L_λ ⊗ V_μ`. We solve for
//! those, then propagate along the lowering tree of `L_λ`.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    sparse_dot, tensor_product_apply_sparse, tensor_sum_apply_sparse, QMatrix, SparseAcc, SparseCols,
    SparseVec, Q,
};
use crate::repmodel::{
    build_irrep_with_cap, character, Irrep, WeightModule, DEFAULT_DIM_CAP,
};
use crate::rootsys::{build_root_system, weyl_dim, Weight};

#[derive(Clone, Debug)]
pub struct IntertwinerBasis {
    pub lambda: Weight,
    pub mu: Weight,
    pub l: Irrep,
    pub v: Irrep,
    /// `(dim L · dim V) × dim L` maps; row index `b * dim V + c`.
    pub maps: Vec<SparseCols>,
    pub gram: QMatrix,
    /// `1/sqrt(gram[a][a])`, filled after orthogonalization.
    pub normalizers: Vec<f64>,
}

impl IntertwinerBasis {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// Singular vectors of weight `λ` in `M ⊗ V`, where `M` is a (possibly
/// truncated) lowering module of highest weight `λ`. Returned as the list of
/// index pairs spanning `(M ⊗ V)[λ]` and a nullspace basis in those coordinates.
fn singular_vectors(module: &WeightModule, v: &Irrep) -> Result<(Vec<(usize, usize)>, Vec<Vec<Q>>)> {
    let lambda = &module.highest_weight;
    let rank = module.rs.rank;
    let mut pairs = Vec::new();
    for c in 0..v.dim {
        let target = lambda - &v.basis_weights[c];
        if !module.covers(&target) {
            return Err(Error::Internal(format!("truncated module misses weight {target}")));
        }
        for &b in module.indices_of_weight(&target) {
            pairs.push((b, c));
        }
    }
    let ve: Vec<SparseCols> = v.e.iter().map(SparseCols::from_matrix).collect();
    let mut rows: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    for (col, &(b, c)) in pairs.iter().enumerate() {
        for i in 0..rank {
            for (b2, x) in module.act(i, true, b)? {
                let n = rows.len();
                let r = *rows.entry((i, b2, c)).or_insert(n);
                entries.push((r, col, x));
            }
            for (c2, y) in &ve[i].cols[c] {
                let n = rows.len();
                let r = *rows.entry((i, b, *c2)).or_insert(n);
                entries.push((r, col, y.clone()));
            }
        }
    }
    let mut system = QMatrix::zeros(rows.len(), pairs.len());
    for (r, c, x) in entries {
        system[(r, c)] += x;
    }
    let null = if rows.is_empty() {
        (0..pairs.len())
            .map(|k| {
                let mut u = vec![Q::zero(); pairs.len()];
                u[k] = Q::from_integer(1.into());
                u
            })
            .collect()
    } else {
        system.nullspace()
    };
    Ok((pairs, null))
}

pub fn hom_space(n: usize, lambda: &Weight, mu: &Weight) -> Result<IntertwinerBasis> {
    hom_space_with_cap(n, lambda, mu, DEFAULT_DIM_CAP)
}

pub fn hom_space_with_cap(n: usize, lambda: &Weight, mu: &Weight, cap: usize) -> Result<IntertwinerBasis> {
    let rs = build_root_system(n)?;
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let dl = weyl_dim(&rs, lambda)? as usize;
    if dl > cap {
        return Err(Error::SizeCap { dim: dl, cap });
    }
    let module = WeightModule::build(&rs, lambda, None, cap)?;
    let l = Irrep::from_module(&module)?;
    let v = build_irrep_with_cap(n, mu, cap)?;
    let (pairs, null) = singular_vectors(&module, &v)?;
    let lf: Vec<SparseCols> = l.f.iter().map(SparseCols::from_matrix).collect();
    let vf: Vec<SparseCols> = v.f.iter().map(SparseCols::from_matrix).collect();
    let mut maps = Vec::new();
    for u in null {
        let mut cols: Vec<SparseVec> = Vec::with_capacity(l.dim);
        let mut top = SparseAcc::default();
        for (&(b, c), x) in pairs.iter().zip(&u) {
            top.add(b * v.dim + c, x.clone());
        }
        cols.push(top.finish());
        for b in 1..l.dim {
            let (p, i) = l.parents[b].expect("non-root basis vector has a parent");
            let col = tensor_sum_apply_sparse(&lf[i], &vf[i], &cols[p]);
            cols.push(col);
        }
        maps.push(SparseCols::from_columns(l.dim * v.dim, cols));
    }
    let mut basis = IntertwinerBasis {
        lambda: lambda.clone(),
        mu: mu.clone(),
        gram: QMatrix::zeros(0, 0),
        normalizers: Vec::new(),
        maps,
        l,
        v,
    };
    for k in &basis.maps {
        if !equivariance_residual(&basis.l, &basis.v, k).is_empty() {
            return Err(Error::Internal(format!(
                "intertwiner for λ={lambda}, μ={mu} fails equivariance"
            )));
        }
    }
    basis.gram = gram(&basis);
    Ok(basis)
}

/// Number of intertwiners, computable beyond the dimension cap on `L_λ`:
/// only the top `height(μ)` layers of `L_λ` enter the singular-vector system.
pub fn hom_dimension(n: usize, lambda: &Weight, mu: &Weight, cap: usize) -> Result<usize> {
    let rs = build_root_system(n)?;
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let Some(coords) = rs.simple_coords(mu) else {
        return Ok(0);
    };
    let depth: i64 = coords.iter().sum();
    let module = WeightModule::build(&rs, lambda, Some(depth as usize), cap)?;
    let v = build_irrep_with_cap(n, mu, cap)?;
    Ok(singular_vectors(&module, &v)?.1.len())
}

/// Names of generators `x` (with failing column) for which `K π_λ(x) ≠ Δπ(x) K`.
pub fn equivariance_residual(l: &Irrep, v: &Irrep, k: &SparseCols) -> Vec<String> {
    let mut failures = Vec::new();
    let dv = v.dim;
    for (col, entries) in k.cols.iter().enumerate() {
        let bad = entries
            .iter()
            .any(|(r, _)| &l.basis_weights[r / dv] + &v.basis_weights[r % dv] != l.basis_weights[col]);
        if bad {
            failures.push(format!("h at column {col}"));
            break;
        }
    }
    let gens = [("e", &l.e, &v.e), ("f", &l.f, &v.f)];
    for (name, lg, vg) in gens {
        for i in 0..l.rank() {
            let (a, b) = (SparseCols::from_matrix(&lg[i]), SparseCols::from_matrix(&vg[i]));
            for col in 0..l.dim {
                let mut lhs = SparseAcc::default();
                for (r, x) in &a.cols[col] {
                    lhs.axpy(x, &k.cols[*r]);
                }
                if tensor_sum_apply_sparse(&a, &b, &k.cols[col]) != lhs.finish() {
                    failures.push(format!("{name}{i} at column {col}"));
                    break;
                }
            }
        }
    }
    failures
}

/// Inverse of a matrix that is block diagonal along equal basis weights.
fn weight_block_inverse(irrep: &Irrep) -> Result<SparseCols> {
    let mut inv = QMatrix::zeros(irrep.dim, irrep.dim);
    for w in irrep.weight_histogram().keys() {
        let idx = irrep.indices_of_weight(w);
        let block = irrep
            .gram
            .select(&idx, &idx)
            .inverse()
            .ok_or_else(|| Error::Internal(format!("singular invariant form at weight {w}")))?;
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                inv[(r, c)] = block[(i, j)].clone();
            }
        }
    }
    Ok(SparseCols::from_matrix(&inv))
}

/// Invariant forms needed to evaluate pairings.
struct Forms {
    minv: SparseCols,
    ml: SparseCols,
    mv: SparseCols,
}

impl Forms {
    fn new(basis: &IntertwinerBasis) -> Self {
        Forms {
            minv: weight_block_inverse(&basis.l).expect("invariant form is nondegenerate"),
            ml: SparseCols::from_matrix(&basis.l.gram),
            mv: SparseCols::from_matrix(&basis.v.gram),
        }
    }

    /// Full trace of `K_b^* K_a`.
    fn trace(&self, ka: &SparseCols, kb: &SparseCols) -> Q {
        let mut total = Q::zero();
        for (b, col) in ka.cols.iter().enumerate() {
            let mk = tensor_product_apply_sparse(&self.ml, &self.mv, col);
            // the block inverse is symmetric, so column b lists its row b
            for (b2, m) in &self.minv.cols[b] {
                total += m * sparse_dot(&kb.cols[*b2], &mk);
            }
        }
        total
    }

    /// `K_b^* K_a` is a scalar on `L_λ`; read it off the highest-weight vector.
    fn top_scalar(&self, ka: &SparseCols, kb: &SparseCols) -> Q {
        let mk = tensor_product_apply_sparse(&self.ml, &self.mv, &ka.cols[0]);
        sparse_dot(&kb.cols[0], &mk) * &self.minv.get(0, 0)
    }
}

fn ratio(a: usize, b: usize) -> Q {
    Q::new((a as i64).into(), (b as i64).into())
}

/// `tr(K_b^* K_a) / dim V` with `K^* = M_L^{-1} K^T (M_L ⊗ M_V)`.
pub fn pairing(basis: &IntertwinerBasis, ka: &SparseCols, kb: &SparseCols) -> Q {
    Forms::new(basis).top_scalar(ka, kb) * ratio(basis.l.dim, basis.v.dim)
}

/// Same quantity as [`pairing`], summing the whole trace.
pub fn pairing_trace(basis: &IntertwinerBasis, ka: &SparseCols, kb: &SparseCols) -> Q {
    Forms::new(basis).trace(ka, kb) / ratio(basis.v.dim, 1)
}

pub fn gram(basis: &IntertwinerBasis) -> QMatrix {
    let forms = Forms::new(basis);
    let scale = ratio(basis.l.dim, basis.v.dim);
    let k = basis.maps.len();
    let mut g = QMatrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let x = forms.top_scalar(&basis.maps[a], &basis.maps[b]) * &scale;
            g[(b, a)] = x.clone();
            g[(a, b)] = x;
        }
    }
    g
}

/// Gram–Schmidt without normalization; the resulting Gram matrix is diagonal.
pub fn orthonormalize(basis: &IntertwinerBasis) -> Result<IntertwinerBasis> {
    if basis.is_empty() {
        return Err(Error::Precondition("empty intertwiner basis".into()));
    }
    let forms = Forms::new(basis);
    let scale = ratio(basis.l.dim, basis.v.dim);
    let mut out: Vec<SparseCols> = Vec::new();
    let mut norms: Vec<Q> = Vec::new();
    for k in &basis.maps {
        let mut cur = k.clone();
        for (prev, norm) in out.iter().zip(&norms) {
            let c = forms.top_scalar(prev, k) * &scale / norm;
            if !c.is_zero() {
                cur = cur.sub_scaled(&c, prev);
            }
        }
        let norm = forms.top_scalar(&cur, &cur) * &scale;
        if norm <= Q::zero() {
            return Err(Error::Internal("degenerate intertwiner Gram matrix".into()));
        }
        out.push(cur);
        norms.push(norm);
    }
    let mut result = basis.clone();
    result.maps = out;
    result.gram = gram(&result);
    result.normalizers = norms
        .iter()
        .map(|x| 1.0 / x.to_f64().unwrap_or(f64::NAN).sqrt())
        .collect();
    Ok(result)
}

/// Multiplicity of `L_λ` in `L_λ ⊗ V_μ` by peeling highest weights off the
/// tensor-product character. Uses only Freudenthal multiplicities.
pub fn multiplicity_oracle(n: usize, lambda: &Weight, mu: &Weight) -> Result<u64> {
    let rs = build_root_system(n)?;
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let ch_l = character(&rs, lambda)?;
    let v_weights = character(&rs, mu)?.all_weights(&rs);
    let height = |w: &Weight| rs.form(w, &rs.rho);
    let floor = height(lambda);
    // dominant part of the product character, only above λ's height
    let mut prod: BTreeMap<Weight, i64> = BTreeMap::new();
    for (lw, ml) in ch_l.all_weights(&rs) {
        for (c, &mc) in &v_weights {
            let w = &lw + c;
            if w.is_dominant() && height(&w) >= floor {
                *prod.entry(w).or_insert(0) += (ml * mc) as i64;
            }
        }
    }
    loop {
        let Some(top) = prod
            .iter()
            .filter(|(_, &m)| m != 0)
            .max_by(|a, b| height(a.0).cmp(&height(b.0)).then(a.0.cmp(b.0)))
            .map(|(w, &m)| (w.clone(), m))
        else {
            return Ok(0);
        };
        let (w, m) = top;
        if m < 0 {
            return Err(Error::Internal(format!("negative multiplicity at {w}")));
        }
        if &w == lambda {
            return Ok(m as u64);
        }
        if height(&w) < floor {
            return Ok(0);
        }
        for (d, dm) in character(&rs, &w)?.dominant {
            if let Some(e) = prod.get_mut(&d) {
                *e -= m * dm as i64;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn clebsch_gordan_counts() {
        assert_eq!(hom_space(2, &w(&[1]), &w(&[2])).unwrap().len(), 1);
        assert_eq!(hom_space(2, &w(&[0]), &w(&[2])).unwrap().len(), 0);
        assert_eq!(hom_space(2, &w(&[3]), &w(&[0])).unwrap().len(), 1);
        assert_eq!(multiplicity_oracle(2, &w(&[2]), &w(&[2])).unwrap(), 1);
        assert_eq!(multiplicity_oracle(2, &w(&[0]), &w(&[2])).unwrap(), 0);
        assert_eq!(multiplicity_oracle(2, &w(&[1]), &w(&[4])).unwrap(), 0);
    }

    #[test]
    fn adjoint_times_adjoint() {
        assert_eq!(multiplicity_oracle(3, &w(&[1, 1]), &w(&[1, 1])).unwrap(), 2);
        let basis = hom_space(3, &w(&[1, 1]), &w(&[1, 1])).unwrap();
        assert_eq!(basis.len(), 2);
        let ortho = orthonormalize(&basis).unwrap();
        assert!(ortho.gram.is_diagonal());
        assert!(ortho.gram[(0, 0)] > q(0) && ortho.gram[(1, 1)] > q(0));
    }

    #[test]
    fn identity_intertwiner_for_trivial_mu() {
        let basis = hom_space(3, &w(&[2, 1]), &w(&[0, 0])).unwrap();
        assert_eq!(basis.len(), 1);
        let k = basis.maps[0].to_dense();
        assert_eq!(k.scale(&(q(1) / &k[(0, 0)])), QMatrix::identity(basis.l.dim));
    }

    #[test]
    fn schur_shortcut_matches_full_trace() {
        let basis = hom_space(3, &w(&[1, 1]), &w(&[1, 1])).unwrap();
        for a in &basis.maps {
            for b in &basis.maps {
                assert_eq!(pairing(&basis, a, b), pairing_trace(&basis, a, b));
            }
        }
    }

    #[test]
    fn truncated_count_agrees() {
        for lambda in [w(&[1, 1]), w(&[2, 1]), w(&[3, 3])] {
            assert_eq!(
                hom_dimension(3, &lambda, &w(&[1, 1]), 400).unwrap() as u64,
                multiplicity_oracle(3, &lambda, &w(&[1, 1])).unwrap()
            );
        }
        assert_eq!(hom_dimension(3, &w(&[1, 0]), &w(&[1, 0]), 400).unwrap(), 0);
    }
}
