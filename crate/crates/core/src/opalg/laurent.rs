//! Laurent polynomials in the torus characters `h^ν`, `ν` in the weight lattice.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::linalg::{fmt_q, q, q_to_f64, Q};
use crate::rootsys::Weight;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    pub rank: usize,
    terms: BTreeMap<Weight, Q>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: Q) -> Self {
        Self::monomial(Weight::zero(rank), c)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Q::one())
    }

    pub fn monomial(exp: Weight, c: Q) -> Self {
        let mut p = Self::zero(exp.rank());
        p.add_term(exp, c);
        p
    }

    /// `1 - h^β`.
    pub fn one_minus(beta: &Weight) -> Self {
        let rank = beta.rank();
        &Self::one(rank) - &Self::monomial(beta.clone(), Q::one())
    }

    pub fn add_term(&mut self, exp: Weight, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &Weight) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Weight::zero(self.rank)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiply by `h^ν`.
    pub fn shift(&self, nu: &Weight) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k + nu, v.clone())).collect(),
        }
    }

    /// `θ_i`, acting on `h^ν` by `ν_i`.
    pub fn theta(&self, i: usize) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.0[i] != 0)
                .map(|(k, v)| (k.clone(), v * q(k.0[i])))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.rank), |acc, _| &acc * self)
    }

    /// Exact division by `1 - h^β` if it divides, else `None`.
    ///
    /// Along each coset `ν + Zβ` the quotient coefficients are prefix sums of
    /// the dividend's, so divisibility means every coset sums to zero.
    pub fn div_one_minus(&self, beta: &Weight) -> Option<Self> {
        let j = beta.0.iter().position(|&c| c != 0)?;
        let b = beta.0[j];
        let mut chains: BTreeMap<Weight, BTreeMap<i64, Q>> = BTreeMap::new();
        for (k, v) in &self.terms {
            let t = k.0[j].div_euclid(b);
            let base = k - &beta.scale(t);
            chains.entry(base).or_default().insert(t, v.clone());
        }
        let mut out = Self::zero(self.rank);
        for (base, chain) in chains {
            let total: Q = chain.values().sum();
            if !total.is_zero() {
                return None;
            }
            let (&lo, _) = chain.iter().next().unwrap();
            let (&hi, _) = chain.iter().next_back().unwrap();
            let mut acc = Q::zero();
            for t in lo..hi {
                if let Some(v) = chain.get(&t) {
                    acc += v;
                }
                if !acc.is_zero() {
                    out.terms.insert(&base + &beta.scale(t), acc.clone());
                }
            }
        }
        Some(out)
    }

    /// Value at the torus point with `h^{ω_j} = e^{2πi t_j}`.
    pub fn eval(&self, t: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, v)| {
                let phase: f64 = k.0.iter().zip(t).map(|(&a, &x)| a as f64 * x).sum();
                Complex64::from_polar(q_to_f64(v), 2.0 * std::f64::consts::PI * phase)
            })
            .sum()
    }

    /// Largest `|ν_j|` over the support, per coordinate.
    pub fn extent(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for k in self.terms.keys() {
            for (o, c) in out.iter_mut().zip(&k.0) {
                *o = (*o).max(c.abs());
            }
        }
        out
    }

    /// `p(h^{-1})`.
    pub fn invert_exponents(&self) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, v)| serde_json::json!({"exp": k.0, "coeff": fmt_q(v)}))
                .collect(),
        )
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| format!("{}·h^{:?}", fmt_q(v), k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            let e = out.terms.entry(k.clone()).or_insert_with(Q::zero);
            *e += v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            let e = out.terms.entry(k.clone()).or_insert_with(Q::zero);
            *e -= v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&q(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<Weight, Q> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = terms.entry(a + b).or_insert_with(Q::zero);
                *e += x * y;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        LaurentPoly {
            rank: self.rank.max(rhs.rank),
            terms,
        }
    }
}
