//! Weight multiplicities by Freudenthal's recursion.
//!
//! Independent of the matrix models: it only uses the root data.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::rootsys::{build_root_system, RootSystem, Weight};

#[derive(Clone, Debug)]
pub struct Character {
    pub highest_weight: Weight,
    /// Multiplicities of the dominant weights.
    pub dominant: BTreeMap<Weight, u64>,
}

impl Character {
    pub fn multiplicity(&self, rs: &RootSystem, nu: &Weight) -> u64 {
        self.dominant.get(&rs.to_dominant(nu)).copied().unwrap_or(0)
    }

    /// Every weight with its multiplicity.
    pub fn all_weights(&self, rs: &RootSystem) -> BTreeMap<Weight, u64> {
        let mut out = BTreeMap::new();
        for (dom, &m) in &self.dominant {
            for w in weyl_orbit(rs, dom) {
                out.insert(w, m);
            }
        }
        out
    }

    pub fn dimension(&self, rs: &RootSystem) -> u64 {
        self.all_weights(rs).values().sum()
    }
}

pub fn weyl_orbit(rs: &RootSystem, w: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(x) = queue.pop_front() {
        for i in 0..rs.rank {
            let y = rs.reflect(&x, i);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Dominant weights of `V_λ`, by decreasing height.
fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let is_weight = |x: &Weight| rs.is_below(&rs.to_dominant(x), lambda);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    let mut dominant = Vec::new();
    while let Some(x) = queue.pop_front() {
        if x.is_dominant() {
            dominant.push(x.clone());
        }
        for a in &rs.simple_roots {
            let y = &x - a;
            if is_weight(&y) && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    dominant.sort_by_key(|w| (rs.depth(w, lambda).unwrap(), w.clone()));
    dominant
}

pub fn character(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    rs.check_dominant(lambda)?;
    let shifted = lambda + &rs.rho;
    let top = rs.form(&shifted, &shifted);
    let mut dominant: BTreeMap<Weight, u64> = BTreeMap::new();
    for nu in dominant_weights_below(rs, lambda) {
        if &nu == lambda {
            dominant.insert(nu, 1);
            continue;
        }
        let mut sum = Q::zero();
        for root in &rs.positive_roots {
            let mut k = 1;
            loop {
                let up = &nu + &root.weight.scale(k);
                let dom = rs.to_dominant(&up);
                if !rs.is_below(&dom, lambda) {
                    break;
                }
                let m = dominant.get(&dom).copied().ok_or_else(|| {
                    Error::Internal(format!("Freudenthal order violated at {up}"))
                })?;
                sum += q(m as i64) * rs.form(&up, &root.weight);
                k += 1;
            }
        }
        let nr = &nu + &rs.rho;
        let denom = &top - rs.form(&nr, &nr);
        let m = sum * q(2) / denom;
        if !m.is_integer() || m < Q::zero() {
            return Err(Error::Internal(format!("non-integral multiplicity {m} at {nu}")));
        }
        let m: u64 = m.to_integer().try_into().unwrap();
        if m > 0 {
            dominant.insert(nu, m);
        }
    }
    Ok(Character {
        highest_weight: lambda.clone(),
        dominant,
    })
}

/// Multiplicity of `ν` in `V_μ` for `sl_n`.
pub fn weight_multiplicity_oracle(n: usize, mu: &Weight, nu: &Weight) -> Result<u64> {
    let rs = build_root_system(n)?;
    rs.check_weight(nu)?;
    Ok(character(&rs, mu)?.multiplicity(&rs, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{dominant_weights_up_to, weyl_dim};

    #[test]
    fn adjoint_sl3_zero_weight() {
        assert_eq!(
            weight_multiplicity_oracle(3, &Weight(vec![1, 1]), &Weight(vec![0, 0])).unwrap(),
            2
        );
    }

    #[test]
    fn highest_weight_and_outside_hull() {
        assert_eq!(
            weight_multiplicity_oracle(3, &Weight(vec![2, 1]), &Weight(vec![2, 1])).unwrap(),
            1
        );
        assert_eq!(
            weight_multiplicity_oracle(2, &Weight(vec![2]), &Weight(vec![4])).unwrap(),
            0
        );
    }

    #[test]
    fn character_dimension_matches_weyl() {
        for n in 2..=4 {
            let rs = build_root_system(n).unwrap();
            for lambda in dominant_weights_up_to(&rs, 2) {
                let ch = character(&rs, &lambda).unwrap();
                assert_eq!(ch.dimension(&rs), weyl_dim(&rs, &lambda).unwrap(), "{lambda}");
            }
        }
    }

    #[test]
    fn sl4_adjoint_zero_weight() {
        let rs = build_root_system(4).unwrap();
        let ch = character(&rs, &Weight(vec![1, 0, 1])).unwrap();
        assert_eq!(ch.multiplicity(&rs, &Weight(vec![0, 0, 0])), 3);
    }
}
