//! Exact matrix models of irreducible `sl_n` representations.
//!
//! A module is grown from its highest-weight vector by applying lowering
//! operators breadth first. Every basis vector is `f_i` applied to an earlier
//! basis vector (its parent), so intertwiners can later be propagated along
//! the same spanning tree.

pub mod freudenthal;
pub mod tensor;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, SparseSpan, Q};
use crate::rootsys::{build_root_system, weyl_dim, Root, RootSystem, Weight};
use tensor::{tensor_dot, ExteriorTensorModel, TensorKey, TensorVec};

pub use freudenthal::{character, weight_multiplicity_oracle, Character};

pub const DEFAULT_DIM_CAP: usize = 400;

/// Lowering-operator span of the highest-weight vector, optionally cut off
/// below a given depth (height of `λ - ν`).
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub rs: RootSystem,
    pub highest_weight: Weight,
    pub model: ExteriorTensorModel,
    pub vectors: Vec<TensorVec>,
    pub weights: Vec<Weight>,
    pub depths: Vec<usize>,
    /// `vectors[b] = f_i vectors[p]` for `parents[b] = Some((p, i))`.
    pub parents: Vec<Option<(usize, usize)>>,
    spaces: BTreeMap<Weight, (Vec<usize>, SparseSpan<TensorKey>)>,
    pub max_depth: Option<usize>,
}

impl WeightModule {
    pub fn build(rs: &RootSystem, lambda: &Weight, max_depth: Option<usize>, cap: usize) -> Result<Self> {
        rs.check_dominant(lambda)?;
        let model = ExteriorTensorModel::for_highest_weight(rs.n, lambda.coords());
        let mut m = WeightModule {
            rs: rs.clone(),
            highest_weight: lambda.clone(),
            model,
            vectors: Vec::new(),
            weights: Vec::new(),
            depths: Vec::new(),
            parents: Vec::new(),
            spaces: BTreeMap::new(),
            max_depth,
        };
        let hw = m.model.highest_weight_vector();
        m.push(hw, lambda.clone(), 0, None);
        let mut level: Vec<usize> = vec![0];
        let mut depth = 0;
        while !level.is_empty() && max_depth.is_none_or(|d| depth < d) {
            let mut next = Vec::new();
            for &b in &level {
                for i in 0..rs.rank {
                    let v = m.model.apply_simple(i, false, &m.vectors[b]);
                    if v.is_empty() {
                        continue;
                    }
                    let w = &m.weights[b] - &rs.simple_roots[i];
                    let space = m.spaces.entry(w.clone()).or_default();
                    if space.1.try_insert(&v) {
                        let idx = m.push(v, w, depth + 1, Some((b, i)));
                        next.push(idx);
                        if m.vectors.len() > cap {
                            return Err(Error::SizeCap {
                                dim: m.vectors.len(),
                                cap,
                            });
                        }
                    }
                }
            }
            level = next;
            depth += 1;
        }
        Ok(m)
    }

    fn push(&mut self, v: TensorVec, w: Weight, depth: usize, parent: Option<(usize, usize)>) -> usize {
        let idx = self.vectors.len();
        let space = self.spaces.entry(w.clone()).or_default();
        if parent.is_none() {
            space.1.try_insert(&v);
        }
        space.0.push(idx);
        self.vectors.push(v);
        self.weights.push(w);
        self.depths.push(depth);
        self.parents.push(parent);
        idx
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn indices_of_weight(&self, w: &Weight) -> &[usize] {
        self.spaces.get(w).map_or(&[], |s| &s.0)
    }

    /// Whether the weight space at `w` is fully present in this (possibly truncated) module.
    pub fn covers(&self, w: &Weight) -> bool {
        match self.rs.depth(w, &self.highest_weight) {
            None => true,
            Some(d) => self.max_depth.is_none_or(|m| d as usize <= m),
        }
    }

    /// Coordinates of a tensor vector of pure weight `w` in the module basis.
    pub fn coordinates(&self, w: &Weight, v: &TensorVec) -> Result<Vec<(usize, Q)>> {
        if v.is_empty() {
            return Ok(Vec::new());
        }
        if !self.covers(w) {
            return Err(Error::Internal(format!("weight {w} outside truncated module")));
        }
        let (idx, span) = self
            .spaces
            .get(w)
            .ok_or_else(|| Error::Internal(format!("vector of weight {w} outside module")))?;
        let coords = span
            .coordinates(v)
            .ok_or_else(|| Error::Internal(format!("vector of weight {w} outside span")))?;
        Ok(idx
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&i, c)| (i, c))
            .collect())
    }

    /// `e_i` (raise) or `f_i` applied to basis vector `b`, in the module basis.
    pub fn act(&self, i: usize, raise: bool, b: usize) -> Result<Vec<(usize, Q)>> {
        let v = self.model.apply_simple(i, raise, &self.vectors[b]);
        let a = &self.rs.simple_roots[i];
        let w = if raise {
            &self.weights[b] + a
        } else {
            &self.weights[b] - a
        };
        self.coordinates(&w, &v)
    }
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub n: usize,
    pub rs: RootSystem,
    pub highest_weight: Weight,
    pub dim: usize,
    pub basis_weights: Vec<Weight>,
    pub parents: Vec<Option<(usize, usize)>>,
    pub e: Vec<QMatrix>,
    pub f: Vec<QMatrix>,
    pub h: Vec<QMatrix>,
    /// Invariant form: the tensor dot product restricted to the basis.
    pub gram: QMatrix,
}

pub fn build_irrep(n: usize, mu: &Weight) -> Result<Irrep> {
    build_irrep_with_cap(n, mu, DEFAULT_DIM_CAP)
}

pub fn build_irrep_with_cap(n: usize, mu: &Weight, cap: usize) -> Result<Irrep> {
    let rs = build_root_system(n)?;
    rs.check_dominant(mu)?;
    let dim = weyl_dim(&rs, mu)? as usize;
    if dim > cap {
        return Err(Error::SizeCap { dim, cap });
    }
    let module = WeightModule::build(&rs, mu, None, cap)?;
    if module.len() != dim {
        return Err(Error::Internal(format!(
            "module for {mu} has dimension {} but Weyl dimension is {dim}",
            module.len()
        )));
    }
    Irrep::from_module(&module)
}

impl Irrep {
    pub fn from_module(module: &WeightModule) -> Result<Self> {
        let rs = module.rs.clone();
        let dim = module.len();
        let mut e = vec![QMatrix::zeros(dim, dim); rs.rank];
        let mut f = vec![QMatrix::zeros(dim, dim); rs.rank];
        let mut h = vec![QMatrix::zeros(dim, dim); rs.rank];
        for b in 0..dim {
            for i in 0..rs.rank {
                for (r, c) in module.act(i, true, b)? {
                    e[i][(r, b)] = c;
                }
                for (r, c) in module.act(i, false, b)? {
                    f[i][(r, b)] = c;
                }
                h[i][(b, b)] = q(module.weights[b].0[i]);
            }
        }
        let mut gram = QMatrix::zeros(dim, dim);
        for a in 0..dim {
            for &b in module.indices_of_weight(&module.weights[a]) {
                gram[(a, b)] = tensor_dot(&module.vectors[a], &module.vectors[b]);
            }
        }
        Ok(Irrep {
            n: rs.n,
            highest_weight: module.highest_weight.clone(),
            dim,
            basis_weights: module.weights.clone(),
            parents: module.parents.clone(),
            e,
            f,
            h,
            gram,
            rs,
        })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn indices_of_weight(&self, w: &Weight) -> Vec<usize> {
        (0..self.dim).filter(|&b| &self.basis_weights[b] == w).collect()
    }

    pub fn weight_histogram(&self) -> BTreeMap<Weight, usize> {
        let mut hist = BTreeMap::new();
        for w in &self.basis_weights {
            *hist.entry(w.clone()).or_insert(0) += 1;
        }
        hist
    }

    /// Root vector in the fixed convention: for a non-simple positive root
    /// `α = α_i + β` with `i` minimal, `X_α = [X_{α_i}, X_β]` and
    /// `X_{-α} = [X_{-β}, X_{-α_i}]`. In the defining representation these
    /// are exactly the elementary matrices `E_ab` and `E_ba`.
    pub fn root_vector(&self, root: Root) -> QMatrix {
        let pr = &self.rs.positive_roots[root.index];
        if pr.height() == 1 {
            return if root.positive {
                self.e[pr.a].clone()
            } else {
                self.f[pr.a].clone()
            };
        }
        let (i, rest) = self.rs.root_split(root.index).expect("composite root splits");
        let simple = Root {
            index: self.rs.simple_root_index(i),
            positive: root.positive,
        };
        let rest = Root {
            index: rest,
            positive: root.positive,
        };
        if root.positive {
            self.root_vector(simple).commutator(&self.root_vector(rest))
        } else {
            self.root_vector(rest).commutator(&self.root_vector(simple))
        }
    }

    pub fn root_vector_for_weight(&self, alpha: &Weight) -> Result<QMatrix> {
        self.rs.check_weight(alpha)?;
        let root = self
            .rs
            .find_root(alpha)
            .ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
        Ok(self.root_vector(root))
    }

    /// Coroot matrix `H_α = Σ_k c_k h_k` for `α = Σ c_k α_k`.
    pub fn coroot(&self, index: usize) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (k, &c) in self.rs.positive_roots[index].simple_coords.iter().enumerate() {
            if c != 0 {
                m = &m + &self.h[k].scale(&q(c));
            }
        }
        m
    }

    /// `π(E_ab)` for `a ≠ b` (0-based).
    pub fn elementary(&self, a: usize, b: usize) -> QMatrix {
        assert!(a != b && a < self.n && b < self.n);
        let (lo, hi) = (a.min(b), a.max(b));
        let index = self
            .rs
            .positive_roots
            .iter()
            .position(|r| r.a == lo && r.b == hi)
            .unwrap();
        self.root_vector(Root {
            index,
            positive: a < b,
        })
    }

    /// `π(E_aa - E_bb)`-style Cartan element for `E_aa` itself is not in sl_n;
    /// this returns `π(E_aa - E_bb)` for `a ≠ b`.
    pub fn cartan_difference(&self, a: usize, b: usize) -> QMatrix {
        self.elementary(a, b).commutator(&self.elementary(b, a))
    }

    pub fn casimir_matrix(&self) -> QMatrix {
        let mut c = QMatrix::zeros(self.dim, self.dim);
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let g = &self.rs.form[(i, j)];
                if !g.is_zero() {
                    c = &c + &(&self.h[i] * &self.h[j]).scale(g);
                }
            }
        }
        for index in 0..self.rs.positive_roots.len() {
            let x = self.root_vector(Root { index, positive: true });
            let y = self.root_vector(Root { index, positive: false });
            c = &(&c + &(&x * &y)) + &(&y * &x);
        }
        c
    }

    /// All generator matrices in the order `e_1.., f_1.., h_1..`.
    pub fn generators(&self) -> Vec<&QMatrix> {
        self.e.iter().chain(&self.f).chain(&self.h).collect()
    }

    /// Lift `exp(e_i) exp(-f_i) exp(e_i)` of the simple reflection `s_i`, applied to a vector.
    pub fn weyl_lift_vec(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let exp_apply = |m: &QMatrix, sign: i64, v: &[Q]| -> Vec<Q> {
            let mut acc = v.to_vec();
            let mut term = v.to_vec();
            for k in 1..=self.dim {
                term = m.mul_vec(&term);
                if term.iter().all(Zero::is_zero) {
                    break;
                }
                let s = Q::new((sign.pow(k as u32)).into(), 1.into())
                    / Q::from_integer((1..=k as i64).product::<i64>().into());
                for (a, t) in acc.iter_mut().zip(&term) {
                    *a += t * &s;
                }
            }
            acc
        };
        let v1 = exp_apply(&self.e[i], 1, v);
        let v2 = exp_apply(&self.f[i], -1, &v1);
        exp_apply(&self.e[i], 1, &v2)
    }

    /// The lift of `s_i` as a full matrix.
    pub fn weyl_lift(&self, i: usize) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for b in 0..self.dim {
            let mut unit = vec![Q::zero(); self.dim];
            unit[b] = Q::one();
            m.set_column(b, &self.weyl_lift_vec(i, &unit));
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct ZeroWeightSpace {
    /// Irrep basis indices of weight zero.
    pub indices: Vec<usize>,
    pub basis: Vec<Vec<Q>>,
    /// Lifted simple reflections acting on `V[0]` in the basis above.
    pub weyl_action: Vec<QMatrix>,
    /// Invariant form restricted to `V[0]`.
    pub gram: QMatrix,
}

impl ZeroWeightSpace {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Action of a Weyl group word (rightmost letter first).
    pub fn word_action(&self, word: &[usize]) -> QMatrix {
        word.iter()
            .fold(QMatrix::identity(self.dim()), |acc, &i| &acc * &self.weyl_action[i])
    }

    /// Restrict an operator that preserves `V[0]` to it.
    pub fn restrict(&self, m: &QMatrix) -> QMatrix {
        m.select(&self.indices, &self.indices)
    }
}

pub fn zero_weight_space(irrep: &Irrep) -> ZeroWeightSpace {
    let zero = Weight::zero(irrep.rank());
    let indices = irrep.indices_of_weight(&zero);
    let basis = indices
        .iter()
        .map(|&b| {
            let mut v = vec![Q::zero(); irrep.dim];
            v[b] = Q::one();
            v
        })
        .collect::<Vec<_>>();
    let weyl_action = (0..irrep.rank())
        .map(|i| {
            let mut m = QMatrix::zeros(indices.len(), indices.len());
            for (c, v) in basis.iter().enumerate() {
                let image = irrep.weyl_lift_vec(i, v);
                for (r, &b) in indices.iter().enumerate() {
                    m[(r, c)] = image[b].clone();
                }
            }
            m
        })
        .collect();
    let gram = irrep.gram.select(&indices, &indices);
    ZeroWeightSpace {
        indices,
        basis,
        weyl_action,
        gram,
    }
}

/// Exact check of the Chevalley and Serre relations; returns the failures.
pub fn check_relations(irrep: &Irrep) -> Vec<String> {
    let mut failures = Vec::new();
    let r = irrep.rank();
    let a = &irrep.rs.cartan;
    for i in 0..r {
        for j in 0..r {
            let aji = q(a[j][i]);
            if irrep.h[i].commutator(&irrep.e[j]) != irrep.e[j].scale(&aji) {
                failures.push(format!("[h{i}, e{j}]"));
            }
            if irrep.h[i].commutator(&irrep.f[j]) != irrep.f[j].scale(&-aji.clone()) {
                failures.push(format!("[h{i}, f{j}]"));
            }
            let ef = irrep.e[i].commutator(&irrep.f[j]);
            let expected = if i == j {
                irrep.h[i].clone()
            } else {
                QMatrix::zeros(irrep.dim, irrep.dim)
            };
            if ef != expected {
                failures.push(format!("[e{i}, f{j}]"));
            }
            if !irrep.h[i].commutator(&irrep.h[j]).is_zero() {
                failures.push(format!("[h{i}, h{j}]"));
            }
            if i != j {
                let power = (1 - a[j][i]) as usize;
                for (gens, name) in [(&irrep.e, "e"), (&irrep.f, "f")] {
                    let mut x = gens[j].clone();
                    for _ in 0..power {
                        x = gens[i].commutator(&x);
                    }
                    if !x.is_zero() {
                        failures.push(format!("Serre (ad {name}{i})^{power} {name}{j}"));
                    }
                }
            }
        }
        let diag_ok = irrep.h[i].is_diagonal()
            && (0..irrep.dim).all(|b| irrep.h[i][(b, b)] == q(irrep.basis_weights[b].0[i]));
        if !diag_ok {
            failures.push(format!("h{i} not diagonal with weight entries"));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn defining_sl2() {
        let v = build_irrep(2, &w(&[1])).unwrap();
        assert_eq!(v.dim, 2);
        assert_eq!(v.basis_weights, vec![w(&[1]), w(&[-1])]);
    }

    #[test]
    fn adjoint_sl3_dimension() {
        let v = build_irrep(3, &w(&[1, 1])).unwrap();
        assert_eq!(v.dim, 8);
        assert!(check_relations(&v).is_empty());
    }

    #[test]
    fn sym_square_h_matrix() {
        let v = build_irrep(2, &w(&[2])).unwrap();
        assert_eq!(v.h[0], QMatrix::diagonal(&[q(2), q(0), q(-2)]));
    }

    #[test]
    fn non_dominant_and_cap_errors() {
        assert!(matches!(build_irrep(2, &w(&[-1])), Err(Error::NotDominant(_))));
        assert!(matches!(
            build_irrep_with_cap(3, &w(&[3, 3]), 10),
            Err(Error::SizeCap { dim: 64, cap: 10 })
        ));
    }

    #[test]
    fn root_vectors_in_defining_rep_are_elementary() {
        let v = build_irrep(3, &w(&[1, 0])).unwrap();
        let theta = v.root_vector_for_weight(&w(&[1, 1])).unwrap();
        let mut e13 = QMatrix::zeros(3, 3);
        e13[(0, 2)] = q(1);
        assert_eq!(theta, e13);
        assert_eq!(theta, v.e[0].commutator(&v.e[1]));
        let neg = v.root_vector_for_weight(&w(&[-1, -1])).unwrap();
        assert_eq!(neg, e13.transpose());
        assert!(matches!(v.root_vector_for_weight(&w(&[2, 0])), Err(Error::NotARoot(_))));
    }

    #[test]
    fn root_pair_brackets_to_coroot() {
        let v = build_irrep(4, &w(&[1, 0, 1])).unwrap();
        for index in 0..v.rs.positive_roots.len() {
            let x = v.root_vector(Root { index, positive: true });
            let y = v.root_vector(Root { index, positive: false });
            assert_eq!(x.commutator(&y), v.coroot(index));
            let alpha = &v.rs.positive_roots[index].weight;
            for i in 0..v.rank() {
                assert_eq!(v.h[i].commutator(&x), x.scale(&q(alpha.0[i])));
            }
        }
    }

    #[test]
    fn zero_weight_dimensions() {
        assert_eq!(zero_weight_space(&build_irrep(2, &w(&[2])).unwrap()).dim(), 1);
        assert_eq!(zero_weight_space(&build_irrep(3, &w(&[1, 1])).unwrap()).dim(), 2);
        assert!(zero_weight_space(&build_irrep(2, &w(&[1])).unwrap()).is_empty());
    }

    #[test]
    fn casimir_scalars() {
        assert!(build_irrep(2, &w(&[0])).unwrap().casimir_matrix().is_zero());
        assert_eq!(
            build_irrep(2, &w(&[2])).unwrap().casimir_matrix().as_scalar(),
            Some(q(4))
        );
        assert_eq!(
            build_irrep(3, &w(&[1, 1])).unwrap().casimir_matrix().as_scalar(),
            Some(q(6))
        );
    }

    #[test]
    fn gram_is_invariant() {
        // e_i is adjoint to f_i under the tensor form
        let v = build_irrep(3, &w(&[2, 1])).unwrap();
        for i in 0..2 {
            assert_eq!(&v.gram * &v.e[i], &v.f[i].transpose() * &v.gram);
        }
    }

    #[test]
    fn truncated_module_is_prefix_of_full() {
        let rs = build_root_system(3).unwrap();
        let lambda = w(&[2, 2]);
        let full = WeightModule::build(&rs, &lambda, None, 1000).unwrap();
        let top = WeightModule::build(&rs, &lambda, Some(2), 1000).unwrap();
        assert!(top.len() < full.len());
        assert_eq!(&full.weights[..top.len()], &top.weights[..]);
        assert_eq!(&full.parents[..top.len()], &top.parents[..]);
    }
}
