//! The Lie algebra `sl_n` in a root basis, and formal words in left/right
//! copies of its generators.
//!
//! Basis order: positive root vectors `X_α` (in root-system order), then the
//! negatives `X_{-α}`, then the simple coroots `h_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::linalg::{q, QMatrix, Q};
use crate::repmodel::{build_irrep, Irrep};
use crate::rootsys::{build_root_system, Root, RootSystem, Weight};

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    /// Defining-representation matrices of the basis.
    pub defining: Vec<QMatrix>,
    /// `brackets[a][b]` = coordinates of `[x_a, x_b]`.
    pub brackets: Vec<Vec<Vec<(usize, Q)>>>,
    /// Dual basis under the trace form, in coordinates.
    pub dual: Vec<Vec<(usize, Q)>>,
}

impl LieAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        let rs = build_root_system(n)?;
        let def = build_irrep(n, &Weight::fundamental(rs.rank, 0))?;
        let defining = basis_matrices(&def);
        let mut lie = LieAlgebra {
            rs,
            defining,
            brackets: Vec::new(),
            dual: Vec::new(),
        };
        let dim = lie.dim();
        lie.brackets = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| lie.decompose(&lie.defining[a].commutator(&lie.defining[b])))
                    .collect()
            })
            .collect();
        let p = lie.num_positive();
        lie.dual = (0..dim)
            .map(|a| {
                if a < p {
                    vec![(a + p, q(1))]
                } else if a < 2 * p {
                    vec![(a - p, q(1))]
                } else {
                    let i = a - 2 * p;
                    (0..lie.rs.rank)
                        .filter(|&j| !lie.rs.form[(i, j)].is_zero())
                        .map(|j| (2 * p + j, lie.rs.form[(i, j)].clone()))
                        .collect()
                }
            })
            .collect();
        Ok(lie)
    }

    pub fn n(&self) -> usize {
        self.rs.n
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn num_positive(&self) -> usize {
        self.rs.positive_roots.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.num_positive() + self.rank()
    }

    /// Root of a root basis element, `None` for Cartan elements.
    pub fn root(&self, a: usize) -> Option<Root> {
        let p = self.num_positive();
        if a < p {
            Some(Root { index: a, positive: true })
        } else if a < 2 * p {
            Some(Root {
                index: a - p,
                positive: false,
            })
        } else {
            None
        }
    }

    pub fn cartan_index(&self, a: usize) -> Option<usize> {
        a.checked_sub(2 * self.num_positive())
    }

    /// Weight of the basis element under the adjoint action.
    pub fn weight(&self, a: usize) -> Weight {
        match self.root(a) {
            Some(r) => self.rs.root_weight(r),
            None => Weight::zero(self.rank()),
        }
    }

    pub fn index_of(&self, root: Root) -> usize {
        if root.positive {
            root.index
        } else {
            root.index + self.num_positive()
        }
    }

    /// Coordinates of an `n × n` traceless matrix in the basis.
    pub fn decompose(&self, m: &QMatrix) -> Vec<(usize, Q)> {
        let n = self.n();
        let mut out = Vec::new();
        for (index, r) in self.rs.positive_roots.iter().enumerate() {
            let (a, b) = (r.a, r.b);
            if !m[(a, b)].is_zero() {
                out.push((index, m[(a, b)].clone()));
            }
        }
        for (index, r) in self.rs.positive_roots.iter().enumerate() {
            let (a, b) = (r.a, r.b);
            if !m[(b, a)].is_zero() {
                out.push((index + self.num_positive(), m[(b, a)].clone()));
            }
        }
        // diag(d) = Σ c_i (E_ii - E_{i+1,i+1}) with c_i = d_0 + … + d_i
        let mut acc = Q::zero();
        for i in 0..n - 1 {
            acc += &m[(i, i)];
            if !acc.is_zero() {
                out.push((2 * self.num_positive() + i, acc.clone()));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Quadratic Casimir `Σ_a x_a x^a` as a word in left generators.
    pub fn casimir(&self, side: Side) -> UElement {
        let mut u = UElement::zero();
        for a in 0..self.dim() {
            for (b, c) in &self.dual[a] {
                u.add_word(vec![Letter { side, gen: a }, Letter { side, gen: *b }], c.clone());
            }
        }
        u
    }

    /// `(tr ⊗ id)` of the ordered product of mixed Casimirs `Σ_a π(x^a) ⊗ x_a^{side}`.
    pub fn trace_word(&self, sides: &[Side]) -> UElement {
        let dual_mats: Vec<QMatrix> = (0..self.dim())
            .map(|a| {
                self.dual[a]
                    .iter()
                    .fold(QMatrix::zeros(self.n(), self.n()), |acc, (b, c)| {
                        &acc + &self.defining[*b].scale(c)
                    })
            })
            .collect();
        let mut out = UElement::zero();
        let mut stack: Vec<(Vec<Letter>, QMatrix)> = vec![(Vec::new(), QMatrix::identity(self.n()))];
        while let Some((word, prod)) = stack.pop() {
            if word.len() == sides.len() {
                let t = prod.trace();
                if !t.is_zero() {
                    out.add_word(word, t);
                }
                continue;
            }
            let side = sides[word.len()];
            for (a, m) in dual_mats.iter().enumerate() {
                let next = &prod * m;
                if next.is_zero() {
                    continue;
                }
                let mut w = word.clone();
                w.push(Letter { side, gen: a });
                stack.push((w, next));
            }
        }
        out
    }
}

/// Matrices of the basis in an irrep, in basis order.
pub fn basis_matrices(irrep: &Irrep) -> Vec<QMatrix> {
    let p = irrep.rs.positive_roots.len();
    let mut out = Vec::with_capacity(2 * p + irrep.rank());
    for index in 0..p {
        out.push(irrep.root_vector(Root { index, positive: true }));
    }
    for index in 0..p {
        out.push(irrep.root_vector(Root {
            index,
            positive: false,
        }));
    }
    out.extend(irrep.h.iter().cloned());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub side: Side,
    pub gen: usize,
}

/// Linear combination of words; the word `y_1 y_2 ⋯` acts as the operator
/// product with `y_1` outermost.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct UElement {
    pub terms: BTreeMap<Vec<Letter>, Q>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(side: Side, gen: usize) -> Self {
        let mut u = Self::zero();
        u.add_word(vec![Letter { side, gen }], q(1));
        u
    }

    pub fn add_word(&mut self, word: Vec<Letter>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(word.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_word(w.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend(b);
                out.add_word(w, x * y);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = w.iter().map(|l| format!("{:?}{}", l.side, l.gen)).collect();
                format!("{}·{}", crate::linalg::fmt_q(c), letters.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_constants_reproduce_brackets() {
        let lie = LieAlgebra::new(3).unwrap();
        assert_eq!(lie.dim(), 8);
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                let expect = lie.defining[a].commutator(&lie.defining[b]);
                let got = lie.brackets[a][b]
                    .iter()
                    .fold(QMatrix::zeros(3, 3), |acc, (k, c)| &acc + &lie.defining[*k].scale(c));
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn dual_basis_under_trace_form() {
        let lie = LieAlgebra::new(4).unwrap();
        for a in 0..lie.dim() {
            let dual = lie.dual[a]
                .iter()
                .fold(QMatrix::zeros(4, 4), |acc, (k, c)| &acc + &lie.defining[*k].scale(c));
            for b in 0..lie.dim() {
                let t = (&lie.defining[b] * &dual).trace();
                assert_eq!(t, if a == b { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn trace_of_single_mixed_casimir_vanishes() {
        let lie = LieAlgebra::new(3).unwrap();
        assert!(lie.trace_word(&[Side::L]).is_zero());
        assert_eq!(lie.trace_word(&[Side::L, Side::L]), lie.casimir(Side::L));
    }
}
