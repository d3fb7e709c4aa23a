//! Rational functions on the torus whose denominators are products of
//! factors `1 - h^β`.
//!
//! Every denominator met in radial reduction is of this form, so keeping the
//! denominator factored makes common denominators and cancellation exact and
//! cheap. Each `β` is stored normalized (first nonzero coordinate positive);
//! `1 - h^{-β} = -h^{-β}(1 - h^β)` moves the sign and monomial to the numerator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use crate::linalg::{fmt_q, q, Q};
use crate::rootsys::Weight;

#[derive(Clone, Default)]
pub struct RationalCoeff {
    pub num: LaurentPoly,
    /// Multiplicity of each factor `1 - h^β` in the denominator.
    pub den: BTreeMap<Weight, u32>,
}

fn is_normalized(beta: &Weight) -> bool {
    beta.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

impl RationalCoeff {
    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn constant(rank: usize, c: Q) -> Self {
        Self::from_poly(LaurentPoly::constant(rank, c))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalCoeff {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: Weight, c: Q) -> Self {
        Self::from_poly(LaurentPoly::monomial(exp, c))
    }

    pub fn rank(&self) -> usize {
        self.num.rank
    }

    /// `(1 - h^β)^k` for any nonzero `β` and any integer `k`.
    pub fn one_minus_pow(beta: &Weight, k: i32) -> Self {
        if k >= 0 {
            return Self::from_poly(LaurentPoly::one_minus(beta).pow(k as u32));
        }
        let m = (-k) as u32;
        let mut den = BTreeMap::new();
        if is_normalized(beta) {
            den.insert(beta.clone(), m);
            return RationalCoeff {
                num: LaurentPoly::one(beta.rank()),
                den,
            };
        }
        // (1 - h^β)^{-m} = (-1)^m h^{-mβ} (1 - h^{-β})^{-m}
        den.insert(-beta, m);
        let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
        RationalCoeff {
            num: LaurentPoly::monomial(beta.scale(-(m as i64)), sign),
            den,
        }
    }

    pub fn one_minus_inv(beta: &Weight) -> Self {
        Self::one_minus_pow(beta, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_poly(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one(self.rank());
        for (b, &k) in &self.den {
            d = &d * &LaurentPoly::one_minus(b).pow(k);
        }
        d
    }

    /// Cancel common factors `1 - h^β` between numerator and denominator.
    pub fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<Weight> = self.den.keys().cloned().collect();
        for b in keys {
            while self.den[&b] > 0 {
                match self.num.div_one_minus(&b) {
                    Some(p) => {
                        self.num = p;
                        *self.den.get_mut(&b).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, k| *k > 0);
        self
    }

    /// Numerator over the given denominator, which must be a multiple of ours.
    fn lift_to(&self, den: &BTreeMap<Weight, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (b, &k) in den {
            let have = self.den.get(b).copied().unwrap_or(0);
            if k > have {
                num = &num * &LaurentPoly::one_minus(b).pow(k - have);
            }
        }
        num
    }

    fn lcm(&self, other: &Self) -> BTreeMap<Weight, u32> {
        let mut den = self.den.clone();
        for (b, &k) in &other.den {
            let e = den.entry(b.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        den
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank());
        }
        RationalCoeff {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalCoeff {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .reduced()
    }

    /// `θ_i` by the quotient rule on the factored denominator.
    pub fn theta(&self, i: usize) -> Self {
        if self.den.is_empty() {
            return Self::from_poly(self.num.theta(i));
        }
        // θ(N/D) = (θN · ∏(1-h^β) + N · Σ k β_i h^β ∏_{γ≠β}(1-h^γ)) / (D ∏(1-h^β))
        let factors: Vec<(&Weight, u32)> = self.den.iter().map(|(b, &k)| (b, k)).collect();
        let all: LaurentPoly = factors
            .iter()
            .fold(LaurentPoly::one(self.rank()), |acc, (b, _)| &acc * &LaurentPoly::one_minus(b));
        let mut num = &self.num.theta(i) * &all;
        for (j, (b, k)) in factors.iter().enumerate() {
            let c = q(*k as i64 * b.0[i]);
            if c.is_zero() {
                continue;
            }
            let others = factors
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .fold(LaurentPoly::one(self.rank()), |acc, (_, (g, _))| {
                    &acc * &LaurentPoly::one_minus(g)
                });
            num = &num + &(&self.num.shift(b) * &others).scale(&c);
        }
        let den = self.den.iter().map(|(b, &k)| (b.clone(), k + 1)).collect();
        RationalCoeff { num, den }.reduced()
    }

    /// The scalar value if this is a constant function.
    pub fn as_constant(&self) -> Option<Q> {
        let r = self.clone().reduced();
        if r.den.is_empty() {
            r.num.as_constant()
        } else {
            None
        }
    }

    /// The Laurent polynomial if the denominator cancels.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        let r = self.clone().reduced();
        r.den.is_empty().then_some(r.num)
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        self.num.eval(t) / self.den_poly().eval(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let den: Vec<serde_json::Value> = self
            .den
            .iter()
            .map(|(b, k)| serde_json::json!({"one_minus": b.0, "power": k}))
            .collect();
        serde_json::json!({"num": self.num.to_json(), "den": den})
    }
}

impl PartialEq for RationalCoeff {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl fmt::Debug for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{:?}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(b, k)| format!("(1-h^{b:?})^{k}"))
            .collect();
        write!(f, "({:?}) / {}", self.num, den.join(""))
    }
}

impl Add for &RationalCoeff {
    type Output = RationalCoeff;
    fn add(self, rhs: &RationalCoeff) -> RationalCoeff {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RationalCoeff {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .reduced();
        }
        let den = self.lcm(rhs);
        RationalCoeff {
            num: &self.lift_to(&den) + &rhs.lift_to(&den),
            den,
        }
        .reduced()
    }
}

impl Sub for &RationalCoeff {
    type Output = RationalCoeff;
    fn sub(self, rhs: &RationalCoeff) -> RationalCoeff {
        self + &(-rhs)
    }
}

impl Neg for &RationalCoeff {
    type Output = RationalCoeff;
    fn neg(self) -> RationalCoeff {
        self.scale(&q(-1))
    }
}

impl Mul for &RationalCoeff {
    type Output = RationalCoeff;
    fn mul(self, rhs: &RationalCoeff) -> RationalCoeff {
        if self.is_zero() || rhs.is_zero() {
            return RationalCoeff::zero(self.rank().max(rhs.rank()));
        }
        let mut den = self.den.clone();
        for (b, &k) in &rhs.den {
            *den.entry(b.clone()).or_insert(0) += k;
        }
        RationalCoeff {
            num: &self.num * &rhs.num,
            den,
        }
        .reduced()
    }
}

pub fn fmt_coeff(c: &RationalCoeff) -> String {
    match c.as_constant() {
        Some(x) => fmt_q(&x),
        None => format!("{c:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn cancellation() {
        let beta = w(&[2]);
        let p = RationalCoeff::from_poly(LaurentPoly::one_minus(&beta));
        let inv = RationalCoeff::one_minus_inv(&beta);
        assert_eq!((&p * &inv).as_constant(), Some(q(1)));
        let neg = RationalCoeff::from_poly(LaurentPoly::one_minus(&w(&[-2])));
        let neg_inv = RationalCoeff::one_minus_inv(&w(&[-2]));
        assert_eq!((&neg * &neg_inv).as_constant(), Some(q(1)));
    }

    #[test]
    fn partial_fractions_sum() {
        // 1/(1-x) + 1/(1-x^{-1}) = 1
        let a = RationalCoeff::one_minus_inv(&w(&[2]));
        let b = RationalCoeff::one_minus_inv(&w(&[-2]));
        assert_eq!((&a + &b).as_constant(), Some(q(1)));
    }

    #[test]
    fn theta_quotient_rule() {
        let beta = w(&[1, 1]);
        let f = &RationalCoeff::one_minus_inv(&beta) * &RationalCoeff::monomial(w(&[1, 0]), q(3));
        let g = RationalCoeff::from_poly(LaurentPoly::one_minus(&beta));
        // θ(f g) = θf g + f θg and f g = 3 h^{ω_1}
        for i in 0..2 {
            let lhs = (&f * &g).theta(i);
            let rhs = &(&f.theta(i) * &g) + &(&f * &g.theta(i));
            assert_eq!(lhs, rhs);
        }
        assert_eq!((&f * &g).theta(1).as_constant(), Some(q(0)));
    }
}
