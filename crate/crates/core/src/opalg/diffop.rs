//! Matrix-valued differential operators on the torus.
//!
//! An operator is `Σ_m A_m(h) θ^m` with the derivatives on the right, where
//! `θ^m = θ_1^{m_1} ⋯ θ_r^{m_r}` and `A_m` is a matrix of [`RationalCoeff`].
//! Matrices need not be square: radial reduction passes through operators
//! from `V[0]`-valued to `V`-valued functions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::coeff::RationalCoeff;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, q, QMatrix, Q};
use crate::rootsys::Weight;

pub type MultiIndex = Vec<u32>;

/// Sparse matrix of rational coefficients.
pub type CoeffMatrix = BTreeMap<(usize, usize), RationalCoeff>;

#[derive(Clone, Debug)]
pub struct DiffOp {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub terms: BTreeMap<MultiIndex, CoeffMatrix>,
}

fn add_entry(m: &mut CoeffMatrix, key: (usize, usize), c: RationalCoeff) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&key) {
        Some(e) => {
            *e = &*e + &c;
            if e.is_zero() {
                m.remove(&key);
            }
        }
        None => {
            m.insert(key, c);
        }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// All `j ≤ m` componentwise, with `∏ binom(m_i, j_i)`.
fn sub_indices(m: &MultiIndex) -> Vec<(MultiIndex, i64)> {
    let mut out = vec![(Vec::new(), 1i64)];
    for &mi in m {
        let mut next = Vec::new();
        for (prefix, c) in &out {
            for j in 0..=mi {
                let mut p = prefix.clone();
                p.push(j);
                next.push((p, c * binomial(mi, j)));
            }
        }
        out = next;
    }
    out
}

impl DiffOp {
    pub fn zero(rank: usize, rows: usize, cols: usize) -> Self {
        DiffOp {
            rank,
            rows,
            cols,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(rank: usize, dim: usize) -> Self {
        Self::from_matrix(rank, &QMatrix::identity(dim))
    }

    /// Constant-coefficient operator of order zero.
    pub fn from_matrix(rank: usize, m: &QMatrix) -> Self {
        let mut coeffs = CoeffMatrix::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m[(r, c)].is_zero() {
                    coeffs.insert((r, c), RationalCoeff::constant(rank, m[(r, c)].clone()));
                }
            }
        }
        let mut op = Self::zero(rank, m.rows(), m.cols());
        op.insert(vec![0; rank], coeffs);
        op
    }

    /// `c(h) · M`, order zero.
    pub fn scalar_times(c: &RationalCoeff, m: &QMatrix) -> Self {
        let rank = c.rank();
        let mut coeffs = CoeffMatrix::new();
        for r in 0..m.rows() {
            for col in 0..m.cols() {
                if !m[(r, col)].is_zero() {
                    coeffs.insert((r, col), c.scale(&m[(r, col)]));
                }
            }
        }
        let mut op = Self::zero(rank, m.rows(), m.cols());
        op.insert(vec![0; rank], coeffs);
        op
    }

    /// `θ^m` times the identity.
    pub fn derivative(rank: usize, dim: usize, m: MultiIndex) -> Self {
        let mut coeffs = CoeffMatrix::new();
        for r in 0..dim {
            coeffs.insert((r, r), RationalCoeff::one(rank));
        }
        let mut op = Self::zero(rank, dim, dim);
        op.insert(m, coeffs);
        op
    }

    pub fn theta(rank: usize, dim: usize, i: usize) -> Self {
        let mut m = vec![0; rank];
        m[i] = 1;
        Self::derivative(rank, dim, m)
    }

    fn insert(&mut self, m: MultiIndex, coeffs: CoeffMatrix) {
        if coeffs.is_empty() {
            return;
        }
        let target = self.terms.entry(m.clone()).or_default();
        for (k, c) in coeffs {
            add_entry(target, k, c);
        }
        if target.is_empty() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (m, coeffs) in &other.terms {
            out.insert(m.clone(), coeffs.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.rank, self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (m, coeffs) in &self.terms {
            out.terms.insert(
                m.clone(),
                coeffs.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
            );
        }
        out
    }

    /// Multiply every coefficient on the left by a scalar function.
    pub fn left_scalar(&self, c: &RationalCoeff) -> Self {
        let mut out = Self::zero(self.rank, self.rows, self.cols);
        for (m, coeffs) in &self.terms {
            out.insert(m.clone(), coeffs.iter().map(|(k, v)| (*k, c * v)).collect());
        }
        out
    }

    /// `M ∘ self` for a constant matrix `M`.
    pub fn left_matrix(&self, mat: &QMatrix) -> Result<Self> {
        if mat.cols() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "matrix with {} columns times operator with {} rows",
                mat.cols(),
                self.rows
            )));
        }
        let mut out = Self::zero(self.rank, mat.rows(), self.cols);
        for (m, coeffs) in &self.terms {
            let mut acc = CoeffMatrix::new();
            for (&(k, c), v) in coeffs {
                for r in 0..mat.rows() {
                    let a = &mat[(r, k)];
                    if !a.is_zero() {
                        add_entry(&mut acc, (r, c), v.scale(a));
                    }
                }
            }
            out.insert(m.clone(), acc);
        }
        Ok(out)
    }

    /// Keep only the given rows (in that order).
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut out = Self::zero(self.rank, rows.len(), self.cols);
        for (m, coeffs) in &self.terms {
            let sel: CoeffMatrix = coeffs
                .iter()
                .filter_map(|(&(r, c), v)| pos.get(&r).map(|&i| ((i, c), v.clone())))
                .collect();
            out.insert(m.clone(), sel);
        }
        out
    }

    /// Whether every coefficient outside the given rows vanishes.
    pub fn supported_on_rows(&self, rows: &[usize]) -> bool {
        self.terms
            .values()
            .all(|coeffs| coeffs.keys().all(|(r, _)| rows.contains(r)))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rank, self.rows, self.cols) != (other.rank, other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "operators of shape {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// If the operator is `c · I` with a constant `c`, return `c`.
    pub fn as_constant(&self) -> Option<Q> {
        if self.rows != self.cols {
            return None;
        }
        if self.terms.is_empty() {
            return Some(Q::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (m, coeffs) = self.terms.iter().next().unwrap();
        if m.iter().any(|&x| x != 0) {
            return None;
        }
        let mut value = None;
        for r in 0..self.rows {
            let c = coeffs.get(&(r, r))?.as_constant()?;
            if value.as_ref().is_some_and(|v| v != &c) {
                return None;
            }
            value = Some(c);
        }
        (coeffs.len() == self.rows).then_some(value.unwrap_or_else(Q::zero))
    }

    pub fn has_derivatives(&self) -> bool {
        self.terms.keys().any(|m| m.iter().any(|&x| x != 0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, coeffs)| {
                let entries: Vec<serde_json::Value> = coeffs
                    .iter()
                    .map(|(&(r, c), v)| serde_json::json!({"row": r, "col": c, "coeff": v.to_json()}))
                    .collect();
                serde_json::json!({"theta": m, "entries": entries})
            })
            .collect();
        serde_json::json!({"rows": self.rows, "cols": self.cols, "terms": terms})
    }
}

/// `p ∘ q`, moving derivatives of `p` past the coefficients of `q` by Leibniz.
pub fn compose(p: &DiffOp, q_op: &DiffOp) -> Result<DiffOp> {
    if p.cols != q_op.rows || p.rank != q_op.rank {
        return Err(Error::ShapeMismatch(format!(
            "compose {}x{} with {}x{}",
            p.rows, p.cols, q_op.rows, q_op.cols
        )));
    }
    let rank = p.rank;
    let mut out = DiffOp::zero(rank, p.rows, q_op.cols);
    // θ^j of each coefficient of q, cached
    let mut derived: BTreeMap<(MultiIndex, MultiIndex, (usize, usize)), RationalCoeff> = BTreeMap::new();
    for (m, a) in &p.terms {
        for (j, binom) in sub_indices(m) {
            let rest: MultiIndex = m.iter().zip(&j).map(|(x, y)| x - y).collect();
            for (k, b) in &q_op.terms {
                let total: MultiIndex = rest.iter().zip(k).map(|(x, y)| x + y).collect();
                let mut acc = CoeffMatrix::new();
                for (&(r, s), av) in a {
                    for (&(s2, c), bv) in b.range((s, 0)..(s + 1, 0)) {
                        debug_assert_eq!(s2, s);
                        let key = (j.clone(), k.clone(), (s, c));
                        let db = derived.entry(key).or_insert_with(|| {
                            let mut d = bv.clone();
                            for (i, &ji) in j.iter().enumerate() {
                                for _ in 0..ji {
                                    d = d.theta(i);
                                }
                            }
                            d
                        });
                        if db.is_zero() {
                            continue;
                        }
                        add_entry(&mut acc, (r, c), (av * db).scale(&q(binom)));
                    }
                }
                out.insert(total, acc);
            }
        }
    }
    Ok(out)
}

pub fn commutator(p: &DiffOp, q_op: &DiffOp) -> Result<DiffOp> {
    compose(p, q_op)?.sub(&compose(q_op, p)?)
}

/// A finite Fourier sum `Σ_ν h^ν c_ν` with vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSection {
    pub rank: usize,
    pub dim: usize,
    pub terms: BTreeMap<Weight, Vec<Q>>,
}

impl FourierSection {
    pub fn zero(rank: usize, dim: usize) -> Self {
        FourierSection {
            rank,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, nu: Weight, v: &[Q]) {
        let e = self
            .terms
            .entry(nu.clone())
            .or_insert_with(|| vec![Q::zero(); v.len()]);
        for (a, b) in e.iter_mut().zip(v) {
            *a += b;
        }
        if e.iter().all(Zero::is_zero) {
            self.terms.remove(&nu);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.rank, self.dim);
        for (nu, v) in &self.terms {
            out.add_term(nu.clone(), &v.iter().map(|x| x * c).collect::<Vec<_>>());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (nu, v) in &other.terms {
            out.add_term(nu.clone(), &v.iter().map(|x| -x).collect::<Vec<_>>());
        }
        out
    }

    pub fn component(&self, j: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.rank);
        for (nu, v) in &self.terms {
            p.add_term(nu.clone(), v[j].clone());
        }
        p
    }

    pub fn from_components(rank: usize, comps: &[LaurentPoly]) -> Self {
        let mut out = Self::zero(rank, comps.len());
        for (j, p) in comps.iter().enumerate() {
            for (nu, c) in p.terms() {
                let mut v = vec![Q::zero(); comps.len()];
                v[j] = c.clone();
                out.add_term(nu.clone(), &v);
            }
        }
        out
    }

    /// Multiply by a scalar Laurent polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let comps: Vec<LaurentPoly> = (0..self.dim).map(|j| &self.component(j) * p).collect();
        Self::from_components(self.rank, &comps)
    }

    pub fn extent(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for nu in self.terms.keys() {
            for (o, c) in out.iter_mut().zip(&nu.0) {
                *o = (*o).max(c.abs());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(nu, v)| {
                    serde_json::json!({
                        "exp": nu.0,
                        "coeffs": v.iter().map(fmt_q).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// Result of applying an operator to a Fourier section: a vector of rational
/// functions, one per output row.
#[derive(Clone, Debug)]
pub struct RationalSection {
    pub components: Vec<RationalCoeff>,
}

impl RationalSection {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RationalCoeff::is_zero)
    }

    /// The Fourier section if every denominator cancels.
    pub fn as_fourier(&self, rank: usize) -> Option<FourierSection> {
        let comps: Option<Vec<LaurentPoly>> = self.components.iter().map(|c| c.as_poly()).collect();
        comps.map(|c| FourierSection::from_components(rank, &c))
    }

    pub fn sub_fourier(&self, f: &FourierSection) -> Self {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| c - &RationalCoeff::from_poly(f.component(j)))
            .collect();
        RationalSection { components }
    }

    /// Common denominator form: scalar denominator and numerator section.
    pub fn common_denominator(&self, rank: usize) -> (LaurentPoly, FourierSection) {
        let mut den: BTreeMap<Weight, u32> = BTreeMap::new();
        for c in &self.components {
            for (b, &k) in &c.den {
                let e = den.entry(b.clone()).or_insert(0);
                *e = (*e).max(k);
            }
        }
        let common = RationalCoeff {
            num: LaurentPoly::one(rank),
            den: den.clone(),
        };
        let nums: Vec<LaurentPoly> = self
            .components
            .iter()
            .map(|c| {
                let mut num = c.num.clone();
                for (b, &k) in &den {
                    let have = c.den.get(b).copied().unwrap_or(0);
                    num = &num * &LaurentPoly::one_minus(b).pow(k - have);
                }
                num
            })
            .collect();
        (common.den_poly(), FourierSection::from_components(rank, &nums))
    }
}

pub fn apply(p: &DiffOp, f: &FourierSection) -> Result<RationalSection> {
    if p.cols != f.dim || p.rank != f.rank {
        return Err(Error::ShapeMismatch(format!(
            "operator with {} columns applied to section of dimension {}",
            p.cols, f.dim
        )));
    }
    let mut components = vec![RationalCoeff::zero(p.rank); p.rows];
    for (m, coeffs) in &p.terms {
        let derived: Vec<LaurentPoly> = (0..f.dim)
            .map(|c| {
                let mut poly = LaurentPoly::zero(f.rank);
                for (nu, v) in &f.terms {
                    if v[c].is_zero() {
                        continue;
                    }
                    let factor: i64 = nu.0.iter().zip(m).map(|(&a, &e)| a.pow(e)).product();
                    if factor != 0 {
                        poly.add_term(nu.clone(), &v[c] * q(factor));
                    }
                }
                poly
            })
            .collect();
        for (&(r, c), a) in coeffs {
            if derived[c].is_zero() {
                continue;
            }
            components[r] = &components[r] + &a.mul_poly(&derived[c]);
        }
    }
    Ok(RationalSection { components })
}

/// `Σ_ij G_ij θ_i θ_j` scaled by `s`, on `dim`-vector functions.
pub fn laplacian(form: &QMatrix, dim: usize, s: &Q) -> DiffOp {
    let rank = form.rows();
    let mut op = DiffOp::zero(rank, dim, dim);
    for i in 0..rank {
        for j in 0..rank {
            let g = &form[(i, j)] * s;
            if g.is_zero() {
                continue;
            }
            let mut m = vec![0u32; rank];
            m[i] += 1;
            m[j] += 1;
            let mut coeffs = CoeffMatrix::new();
            for r in 0..dim {
                coeffs.insert((r, r), RationalCoeff::constant(rank, g.clone()));
            }
            op.insert(m, coeffs);
        }
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn leibniz_commutator() {
        let nu = w(&[2, -1]);
        let mono = DiffOp::scalar_times(&RationalCoeff::monomial(nu.clone(), q(1)), &QMatrix::identity(2));
        let theta = DiffOp::theta(2, 2, 0);
        let comm = commutator(&theta, &mono).unwrap();
        let expected = DiffOp::scalar_times(&RationalCoeff::monomial(nu, q(2)), &QMatrix::identity(2));
        assert!(comm.sub(&expected).unwrap().is_zero());
    }

    #[test]
    fn identity_is_neutral_and_derivatives_commute() {
        let op = DiffOp::scalar_times(&RationalCoeff::one_minus_inv(&w(&[1, 1])), &QMatrix::identity(1));
        let id = DiffOp::identity(2, 1);
        assert!(compose(&id, &op).unwrap().sub(&op).unwrap().is_zero());
        let (t0, t1) = (DiffOp::theta(2, 1, 0), DiffOp::theta(2, 1, 1));
        assert!(commutator(&t0, &t1).unwrap().is_zero());
    }

    #[test]
    fn apply_cancels_denominator() {
        let beta = w(&[2]);
        let op = DiffOp::scalar_times(&RationalCoeff::one_minus_inv(&beta), &QMatrix::identity(1));
        let f = FourierSection::from_components(1, &[LaurentPoly::one_minus(&beta)]);
        let out = apply(&op, &f).unwrap().as_fourier(1).unwrap();
        assert_eq!(out.component(0), LaurentPoly::one(1));
    }

    #[test]
    fn laplacian_on_fourier_mode() {
        let form = QMatrix::from_rows(vec![vec![crate::linalg::qf(1, 2)]]);
        let lap = laplacian(&form, 1, &q(1));
        let f = FourierSection::from_components(1, &[LaurentPoly::monomial(w(&[3]), q(1))]);
        let out = apply(&lap, &f).unwrap().as_fourier(1).unwrap();
        assert_eq!(out.component(0), LaurentPoly::monomial(w(&[3]), crate::linalg::qf(9, 2)));
    }
}
