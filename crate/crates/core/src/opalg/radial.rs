//! Radial reduction of left/right invariant differential operators acting on
//! functions `f: G → V` with `f(g x g^{-1}) = π(g) f(x)`.
//!
//! Conventions: `ℓ_y f(x) = d/dt f(e^{-ty} x)`, `r_y f(x) = d/dt f(x e^{ty})`;
//! a letter `L(y)` acts as `-ℓ_y` and `R(y)` as `-r_y`. Both `ℓ` and `r` are
//! Lie algebra homomorphisms and commute with each other.
//!
//! For an `r`-word `v = v_1 ⋯ v_k` the function `r_{v_1} ⋯ r_{v_k} f` restricted
//! to the torus is `D_v(f|_H)`, computed recursively:
//! * `D_{h_i v} = θ_i ∘ D_v`;
//! * `D_{X_β v} = (1 - h^{-β})^{-1} (-π(X_β) D_v + Σ_j D_{v_1 ⋯ [X_β, v_j] ⋯ v_k})`,
//!
//! which combines `r_y g(h) = -h^β ℓ_y g(h)` for `y = X_β` with the infinitesimal
//! equivariance of `g = r_v f`. Left letters are moved to the right by
//! `ℓ_{u_1} ⋯ ℓ_{u_a} g(h) = ∏ c(u_i) · (r_{u_a} ⋯ r_{u_1} g)(h)`, with
//! `c(X_β) = -h^{-β}` and `c(h_i) = -1`.

use std::collections::HashMap;

use num_traits::Zero;

use super::coeff::RationalCoeff;
use super::diffop::{compose, DiffOp};
use super::lie::{basis_matrices, LieAlgebra, Side, UElement};
use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::repmodel::{build_irrep_with_cap, zero_weight_space, Irrep, ZeroWeightSpace, DEFAULT_DIM_CAP};
use crate::rootsys::Weight;

pub struct RadialEngine {
    pub lie: LieAlgebra,
    pub v: Irrep,
    pub zero: ZeroWeightSpace,
    mats: Vec<QMatrix>,
    memo: HashMap<Vec<usize>, DiffOp>,
}

impl RadialEngine {
    pub fn new(n: usize, mu: &Weight) -> Result<Self> {
        Self::with_cap(n, mu, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(n: usize, mu: &Weight, cap: usize) -> Result<Self> {
        let lie = LieAlgebra::new(n)?;
        let v = build_irrep_with_cap(n, mu, cap)?;
        let zero = zero_weight_space(&v);
        if zero.is_empty() {
            return Err(Error::EmptyZeroWeight(mu.to_string()));
        }
        let mats = basis_matrices(&v);
        Ok(RadialEngine {
            lie,
            v,
            zero,
            mats,
            memo: HashMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.lie.rank()
    }

    pub fn zero_dim(&self) -> usize {
        self.zero.dim()
    }

    pub fn rep_matrix(&self, a: usize) -> &QMatrix {
        &self.mats[a]
    }

    /// `r_{v_1} ⋯ r_{v_k} f` on the torus, as an operator from `V[0]`- to `V`-valued functions.
    pub fn right_word(&mut self, word: &[usize]) -> DiffOp {
        if let Some(op) = self.memo.get(word) {
            return op.clone();
        }
        let rank = self.rank();
        let op = if word.is_empty() {
            let mut inc = QMatrix::zeros(self.v.dim, self.zero.dim());
            for (j, &b) in self.zero.indices.iter().enumerate() {
                inc[(b, j)] = q(1);
            }
            DiffOp::from_matrix(rank, &inc)
        } else {
            let y = word[0];
            let rest = &word[1..];
            let inner = self.right_word(rest);
            match self.lie.root(y) {
                None => {
                    let i = self.lie.cartan_index(y).unwrap();
                    compose(&DiffOp::theta(rank, self.v.dim, i), &inner).expect("shapes agree")
                }
                Some(root) => {
                    let beta = self.lie.rs.root_weight(root);
                    let mut acc = inner.left_matrix(&self.mats[y]).expect("shapes agree").scale(&q(-1));
                    for j in 0..rest.len() {
                        let bracket = self.lie.brackets[y][rest[j]].clone();
                        for (k, c) in bracket {
                            let mut w = rest.to_vec();
                            w[j] = k;
                            let term = self.right_word(&w).scale(&c);
                            acc = acc.add(&term).expect("shapes agree");
                        }
                    }
                    acc.left_scalar(&RationalCoeff::one_minus_inv(&-&beta))
                }
            }
        };
        self.memo.insert(word.to_vec(), op.clone());
        op
    }

    /// Radial part of a word in left/right letters (before restriction to `V[0]` rows).
    fn word_operator(&mut self, word: &[super::lie::Letter]) -> DiffOp {
        let rank = self.rank();
        let lefts: Vec<usize> = word.iter().filter(|l| l.side == Side::L).map(|l| l.gen).collect();
        let rights: Vec<usize> = word.iter().filter(|l| l.side == Side::R).map(|l| l.gen).collect();
        let mut r_word: Vec<usize> = lefts.iter().rev().copied().collect();
        r_word.extend(&rights);
        // each letter contributes a sign; each left letter also c(u)
        let mut coeff = RationalCoeff::constant(rank, if word.len() % 2 == 0 { q(1) } else { q(-1) });
        for &u in &lefts {
            let c = match self.lie.root(u) {
                Some(root) => RationalCoeff::monomial(-&self.lie.rs.root_weight(root), q(-1)),
                None => RationalCoeff::constant(rank, q(-1)),
            };
            coeff = &coeff * &c;
        }
        self.right_word(&r_word).left_scalar(&coeff)
    }

    /// Radial part as an operator from `V[0]`-valued to `V`-valued functions.
    pub fn reduce_unrestricted(&mut self, u: &UElement) -> DiffOp {
        let mut total = DiffOp::zero(self.rank(), self.v.dim, self.zero.dim());
        for (word, c) in &u.terms {
            let op = self.word_operator(word).scale(c);
            total = total.add(&op).expect("shapes agree");
        }
        total
    }

    /// Radial part of an invariant element, acting on `V[0]`-valued functions.
    pub fn reduce(&mut self, u: &UElement) -> Result<DiffOp> {
        let total = self.reduce_unrestricted(u);
        if !total.supported_on_rows(&self.zero.indices) {
            return Err(Error::Precondition(
                "element is not invariant: radial part leaves the zero-weight space".into(),
            ));
        }
        Ok(total.select_rows(&self.zero.indices))
    }

    pub fn casimir(&mut self) -> Result<DiffOp> {
        let c2 = self.lie.casimir(Side::L);
        self.reduce(&c2)
    }

    /// `(tr ⊗ id)` of an ordered product of mixed-Casimir powers.
    pub fn amu_element(&mut self, word: &[(Side, u32)]) -> Result<DiffOp> {
        let u = self.amu_uelement(word)?;
        self.reduce(&u)
    }

    pub fn amu_uelement(&self, word: &[(Side, u32)]) -> Result<UElement> {
        if word.is_empty() || word.iter().any(|&(_, p)| p == 0) {
            return Err(Error::Precondition("word must be nonempty with positive powers".into()));
        }
        let sides: Vec<Side> = word
            .iter()
            .flat_map(|&(s, p)| std::iter::repeat_n(s, p as usize))
            .collect();
        Ok(self.lie.trace_word(&sides))
    }

    /// The mixed Casimir as an `n × n` matrix of first-order operators,
    /// entry `(p, q) = Σ_a π(x^a)_{pq} · x_a^{side}` each reduced radially.
    pub fn mixed_casimir(&mut self, side: Side) -> Vec<Vec<DiffOp>> {
        let n = self.lie.n();
        let rank = self.rank();
        let singles: Vec<DiffOp> = (0..self.lie.dim())
            .map(|a| self.reduce_unrestricted(&UElement::letter(side, a)))
            .collect();
        let mut out = vec![vec![DiffOp::zero(rank, self.v.dim, self.zero.dim()); n]; n];
        for a in 0..self.lie.dim() {
            let dual: QMatrix = self.lie.dual[a]
                .iter()
                .fold(QMatrix::zeros(n, n), |acc, (b, c)| &acc + &self.lie.defining[*b].scale(c));
            for (p, row) in out.iter_mut().enumerate() {
                for (qq, entry) in row.iter_mut().enumerate() {
                    let x: &Q = &dual[(p, qq)];
                    if !x.is_zero() {
                        *entry = entry.add(&singles[a].scale(x)).expect("shapes agree");
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::diffop::{apply, FourierSection};
    use crate::opalg::laurent::LaurentPoly;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn first_order_left_root_letter() {
        let mut eng = RadialEngine::new(2, &w(&[2])).unwrap();
        let op = eng.reduce_unrestricted(&UElement::letter(Side::L, 0));
        let expected = DiffOp::scalar_times(&RationalCoeff::one_minus_inv(&w(&[2])), eng.rep_matrix(0))
            .select_rows(&(0..3).collect::<Vec<_>>());
        let inc = {
            let mut m = QMatrix::zeros(3, 1);
            m[(1, 0)] = q(1);
            m
        };
        let expected = compose(&expected, &DiffOp::from_matrix(1, &inc)).unwrap();
        assert!(op.sub(&expected).unwrap().is_zero());
    }

    #[test]
    fn cartan_words_give_pure_derivatives() {
        let mut eng = RadialEngine::new(3, &w(&[1, 1])).unwrap();
        let h0 = 6;
        let u = UElement::letter(Side::L, h0).mul(&UElement::letter(Side::L, h0 + 1));
        let op = eng.reduce(&u).unwrap();
        assert_eq!(op.terms.len(), 1);
        assert_eq!(op.terms.keys().next().unwrap(), &vec![1, 1]);
    }

    #[test]
    fn trivial_casimir_on_character() {
        let mut eng = RadialEngine::new(2, &w(&[0])).unwrap();
        let c2 = eng.casimir().unwrap();
        // χ_(2) = h^2 + 1 + h^{-2}
        let mut chi = LaurentPoly::zero(1);
        for k in [-2, 0, 2] {
            chi.add_term(w(&[k]), q(1));
        }
        let f = FourierSection::from_components(1, &[chi]);
        let out = apply(&c2, &f).unwrap();
        assert!(out.sub_fourier(&f.scale(&q(4))).is_zero());
    }
}
