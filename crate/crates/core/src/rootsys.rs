//! Root data of type A_{n-1}.
//!
//! Weights live in fundamental-weight coordinates throughout, so the `i`-th
//! coordinate of a weight is its pairing with the simple coroot `α_i^∨`.
//! The invariant form is the trace form of the defining representation:
//! `⟨ω_i, ω_j⟩ = (C^{-1})_{ij}`, which gives every root squared length 2.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A positive root `e_a - e_b` (0-based, `a < b`) of `sl_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveRoot {
    pub a: usize,
    pub b: usize,
    pub weight: Weight,
    /// Coordinates in the simple-root basis.
    pub simple_coords: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> usize {
        self.b - self.a
    }
}

/// A root together with its sign, used to address root vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    /// Index into `RootSystem::positive_roots`.
    pub index: usize,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub n: usize,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// `⟨ω_i, ω_j⟩`.
    pub form: QMatrix,
    pub simple_roots: Vec<Weight>,
    /// Ordered by height, ties broken by the first index.
    pub positive_roots: Vec<PositiveRoot>,
    pub rho: Weight,
}

pub fn build_root_system(n: usize) -> Result<RootSystem> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let rank = n - 1;
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let form = QMatrix::from_i64(&cartan)
        .inverse()
        .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let simple_roots: Vec<Weight> = cartan.iter().map(|row| Weight(row.clone())).collect();
    let mut positive_roots = Vec::new();
    for height in 1..n {
        for a in 0..n - height {
            let b = a + height;
            let mut simple_coords = vec![0; rank];
            let mut weight = Weight::zero(rank);
            for k in a..b {
                simple_coords[k] = 1;
                weight = &weight + &simple_roots[k];
            }
            positive_roots.push(PositiveRoot {
                a,
                b,
                weight,
                simple_coords,
            });
        }
    }
    Ok(RootSystem {
        n,
        rank,
        cartan,
        form,
        simple_roots,
        positive_roots,
        rho: Weight(vec![1; rank]),
    })
}

impl RootSystem {
    pub fn form(&self, x: &Weight, y: &Weight) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if y.0[j] != 0 {
                    acc += &self.form[(i, j)] * q(x.0[i] * y.0[j]);
                }
            }
        }
        acc
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::WeightLength {
                weight: w.to_string(),
                got: w.rank(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(())
    }

    pub fn root_weight(&self, root: Root) -> Weight {
        let w = &self.positive_roots[root.index].weight;
        if root.positive {
            w.clone()
        } else {
            -w
        }
    }

    pub fn find_root(&self, w: &Weight) -> Option<Root> {
        self.positive_roots.iter().position(|r| &r.weight == w).map(|index| Root {
            index,
            positive: true,
        })
            .or_else(|| {
                let neg = -w;
                self.positive_roots
                    .iter()
                    .position(|r| r.weight == neg)
                    .map(|index| Root {
                        index,
                        positive: false,
                    })
            })
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|r| r.a == i && r.b == i + 1)
            .expect("simple root present")
    }

    /// For a non-simple positive root, the smallest simple index `i` such that
    /// `α - α_i` is again a positive root, together with that root's index.
    pub fn root_split(&self, index: usize) -> Option<(usize, usize)> {
        let r = &self.positive_roots[index];
        if r.height() == 1 {
            return None;
        }
        (0..self.rank).find_map(|i| {
            let rest = &r.weight - &self.simple_roots[i];
            self.find_root(&rest)
                .filter(|root| root.positive)
                .map(|root| (i, root.index))
        })
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        &w.clone() - &self.simple_roots[i].scale(c)
    }

    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        // rightmost letter acts first
        word.iter().rev().fold(w.clone(), |acc, &i| self.reflect(&acc, i))
    }

    /// Dominant representative of the Weyl orbit.
    pub fn to_dominant(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect(&cur, i);
        }
        cur
    }

    /// Simple-root coordinates, `None` if `w` is not in the root lattice.
    pub fn simple_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let coords: Vec<Q> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.form[(i, j)] * q(w.0[j]))
                    .sum::<Q>()
            })
            .collect();
        coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer().try_into().unwrap()))
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.simple_coords(w).is_some()
    }

    /// `λ - ν` is a non-negative integer combination of simple roots.
    pub fn is_below(&self, nu: &Weight, lambda: &Weight) -> bool {
        self.simple_coords(&(lambda - nu))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Height of `λ - ν` when it lies in the positive root cone.
    pub fn depth(&self, nu: &Weight, lambda: &Weight) -> Option<i64> {
        self.simple_coords(&(lambda - nu))
            .filter(|c| c.iter().all(|&x| x >= 0))
            .map(|c| c.iter().sum())
    }

    pub fn weyl_order(&self) -> usize {
        (1..=self.n).product()
    }

    /// All Weyl group elements as reduced words, found by breadth-first
    /// search on the orbit of `ρ`.
    pub fn weyl_group(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.rho.clone());
        queue.push_back((self.rho.clone(), Vec::new()));
        while let Some((w, word)) = queue.pop_front() {
            for i in 0..self.rank {
                let next = self.reflect(&w, i);
                if seen.insert(next.clone()) {
                    let mut nw = vec![i];
                    nw.extend(&word);
                    queue.push_back((next, nw));
                }
            }
            out.push(word);
        }
        out
    }

    /// Word in simple reflections for the transposition `(a b)`, 0-based `a < b`.
    pub fn transposition_word(&self, a: usize, b: usize) -> Vec<usize> {
        assert!(a < b && b < self.n);
        let mut word: Vec<usize> = (a..b).collect();
        word.extend((a..b - 1).rev());
        word
    }
}

pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    rs.check_dominant(lambda)?;
    let shifted = lambda + &rs.rho;
    let mut num = Q::one();
    let mut den = Q::one();
    for r in &rs.positive_roots {
        num *= rs.form(&shifted, &r.weight);
        den *= rs.form(&rs.rho, &r.weight);
    }
    let d = num / den;
    if !d.is_integer() {
        return Err(Error::Internal(format!("non-integral Weyl dimension {d}")));
    }
    Ok(d.to_integer().try_into().expect("dimension fits in u64"))
}

/// `⟨λ, λ + 2ρ⟩`.
pub fn casimir_value(rs: &RootSystem, lambda: &Weight) -> Result<Q> {
    rs.check_dominant(lambda)?;
    let two_rho = rs.rho.scale(2);
    Ok(rs.form(lambda, &(lambda + &two_rho)))
}

/// Dominant weights with every coordinate at most `cutoff`, lexicographic.
pub fn dominant_weights_up_to(rs: &RootSystem, cutoff: u32) -> Vec<Weight> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rs.rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=cutoff as i64).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    let mut out: Vec<Weight> = out.into_iter().map(Weight).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn a1_structure() {
        let rs = build_root_system(2).unwrap();
        assert_eq!(rs.positive_roots.len(), 1);
        assert_eq!(rs.rho, Weight(vec![1]));
        assert_eq!(rs.form[(0, 0)], qf(1, 2));
    }

    #[test]
    fn a2_structure() {
        let rs = build_root_system(3).unwrap();
        assert_eq!(rs.positive_roots.len(), 3);
        assert_eq!(rs.cartan, vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn invalid_rank() {
        assert_eq!(build_root_system(1).unwrap_err(), Error::InvalidRank(1));
    }

    #[test]
    fn root_system_invariants() {
        for n in 2..=5 {
            let rs = build_root_system(n).unwrap();
            assert_eq!(rs.positive_roots.len(), n * (n - 1) / 2);
            for r in &rs.positive_roots {
                assert_eq!(rs.form(&r.weight, &r.weight), q(2));
            }
            for a in &rs.simple_roots {
                // simply laced: coroot pairing is the form
                assert_eq!(rs.form(&rs.rho, a), q(1));
            }
            for i in 0..rs.rank {
                let w = Weight::fundamental(rs.rank, i);
                assert!(rs.form(&w, &w) > Q::zero());
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let rs2 = build_root_system(2).unwrap();
        for m in 0..6 {
            assert_eq!(weyl_dim(&rs2, &Weight(vec![m])).unwrap(), m as u64 + 1);
        }
        let rs3 = build_root_system(3).unwrap();
        assert_eq!(weyl_dim(&rs3, &Weight(vec![1, 1])).unwrap(), 8);
        assert_eq!(weyl_dim(&rs3, &Weight(vec![0, 0])).unwrap(), 1);
        assert!(matches!(
            weyl_dim(&rs3, &Weight(vec![-1, 0])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn casimir_values() {
        let rs2 = build_root_system(2).unwrap();
        assert_eq!(casimir_value(&rs2, &Weight(vec![0])).unwrap(), q(0));
        assert_eq!(casimir_value(&rs2, &Weight(vec![2])).unwrap(), q(4));
        assert_eq!(casimir_value(&rs2, &Weight(vec![3])).unwrap(), qf(15, 2));
        let rs3 = build_root_system(3).unwrap();
        assert_eq!(casimir_value(&rs3, &Weight(vec![1, 1])).unwrap(), q(6));
    }

    #[test]
    fn dominant_enumeration() {
        let rs2 = build_root_system(2).unwrap();
        assert_eq!(
            dominant_weights_up_to(&rs2, 2),
            vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]
        );
        let rs3 = build_root_system(3).unwrap();
        assert_eq!(
            dominant_weights_up_to(&rs3, 1),
            vec![
                Weight(vec![0, 0]),
                Weight(vec![0, 1]),
                Weight(vec![1, 0]),
                Weight(vec![1, 1])
            ]
        );
        assert_eq!(dominant_weights_up_to(&rs3, 0), vec![Weight(vec![0, 0])]);
    }

    #[test]
    fn weyl_group_orders_and_shifted_norm_invariance() {
        for n in 2..=4 {
            let rs = build_root_system(n).unwrap();
            let group = rs.weyl_group();
            assert_eq!(group.len(), rs.weyl_order());
            for lambda in dominant_weights_up_to(&rs, 2) {
                let shifted = &lambda + &rs.rho;
                let norm = rs.form(&shifted, &shifted);
                for w in &group {
                    let wl = rs.apply_word(w, &lambda);
                    let wr = rs.apply_word(w, &rs.rho);
                    let s = &wl + &wr;
                    assert_eq!(rs.form(&s, &s), norm);
                }
            }
        }
    }

    #[test]
    fn transposition_words_square_to_identity() {
        let rs = build_root_system(4).unwrap();
        let probe = Weight(vec![3, 1, 2]);
        for a in 0..4 {
            for b in a + 1..4 {
                let w = rs.transposition_word(a, b);
                let once = rs.apply_word(&w, &probe);
                assert_ne!(once, probe);
                assert_eq!(rs.apply_word(&w, &once), probe);
            }
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("1,1".parse::<Weight>().unwrap(), Weight(vec![1, 1]));
        assert_eq!(" 2 ".parse::<Weight>().unwrap(), Weight(vec![2]));
        assert!("1,a".parse::<Weight>().is_err());
        assert_eq!(Weight(vec![1, -2]).to_string(), "1,-2");
    }
}
