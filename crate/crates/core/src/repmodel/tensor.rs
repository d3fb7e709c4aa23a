//! Tensor products of exterior powers of the defining representation.
//!
//! `L_λ` is realized inside `⊗_k (Λ^k C^n)^{⊗λ_k}`, a subspace of a tensor power
//! of `C^n`. The highest-weight vector is a single pure tensor, and the
//! Chevalley generators act on wedge monomials with coefficient one.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::Q;

/// One wedge monomial per factor, encoded as a bitmask of `{0..n}`.
pub type TensorKey = Vec<u16>;
pub type TensorVec = BTreeMap<TensorKey, Q>;

#[derive(Clone, Debug)]
pub struct ExteriorTensorModel {
    pub n: usize,
    /// Exterior degree of each tensor factor.
    pub degrees: Vec<usize>,
}

impl ExteriorTensorModel {
    pub fn for_highest_weight(n: usize, coords: &[i64]) -> Self {
        let mut degrees = Vec::new();
        for (k, &c) in coords.iter().enumerate() {
            for _ in 0..c {
                degrees.push(k + 1);
            }
        }
        ExteriorTensorModel { n, degrees }
    }

    pub fn highest_weight_vector(&self) -> TensorVec {
        let key: TensorKey = self.degrees.iter().map(|&k| ((1u32 << k) - 1) as u16).collect();
        let mut v = TensorVec::new();
        v.insert(key, Q::from_integer(1.into()));
        v
    }

    /// `E_{i,i+1}` when `raise`, `E_{i+1,i}` otherwise.
    pub fn apply_simple(&self, i: usize, raise: bool, v: &TensorVec) -> TensorVec {
        let (from, to) = if raise { (i + 1, i) } else { (i, i + 1) };
        let (from_bit, to_bit) = (1u16 << from, 1u16 << to);
        let mut out = TensorVec::new();
        for (key, c) in v {
            for p in 0..key.len() {
                let m = key[p];
                if m & from_bit != 0 && m & to_bit == 0 {
                    let mut k = key.clone();
                    k[p] = (m & !from_bit) | to_bit;
                    let e = out.entry(k).or_insert_with(Q::zero);
                    *e += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Weight of a basis tensor in fundamental coordinates.
    pub fn key_weight(&self, key: &TensorKey) -> Vec<i64> {
        let mut w = vec![0i64; self.n - 1];
        for &m in key {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi += ((m >> i) & 1) as i64 - ((m >> (i + 1)) & 1) as i64;
            }
        }
        w
    }
}

pub fn tensor_dot(a: &TensorVec, b: &TensorVec) -> Q {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter_map(|(k, x)| large.get(k).map(|y| x * y))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn highest_weight_vector_has_highest_weight() {
        let model = ExteriorTensorModel::for_highest_weight(4, &[1, 2, 0]);
        let v = model.highest_weight_vector();
        let key = v.keys().next().unwrap();
        assert_eq!(model.key_weight(key), vec![1, 2, 0]);
        for i in 0..3 {
            assert!(model.apply_simple(i, true, &v).is_empty());
        }
    }

    #[test]
    fn lowering_in_defining_rep() {
        let model = ExteriorTensorModel::for_highest_weight(3, &[1, 0]);
        let v = model.highest_weight_vector();
        let w = model.apply_simple(0, false, &v);
        let key = w.keys().next().unwrap();
        assert_eq!(model.key_weight(key), vec![-1, 1]);
        assert_eq!(model.apply_simple(0, true, &w), v);
    }
}
