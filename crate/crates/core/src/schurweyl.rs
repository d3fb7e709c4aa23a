//! Zero-weight slices of tensor powers and the identities `t_ij = 1 + P_ij`,
//! `[t_ij + t_kj, t_ik] = 0` on `V_μ[0]`.
//!
//! Indices `i, j, k` are 0-based. `N` is the number of tensor factors and `n`
//! the local dimension. On `V_μ[0]` with `μ ⊢ N = n` the symmetric group acts
//! by `P_ij = -lift(s_ij)`: the lifts `exp(e)exp(-f)exp(e)` are signed permutation
//! matrices, and on a word with each letter once exactly one sign survives.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, q, QMatrix, Q};
use crate::opalg::RationalCoeff;
use crate::repmodel::{build_irrep_with_cap, zero_weight_space, Irrep, ZeroWeightSpace, DEFAULT_DIM_CAP};
use crate::rootsys::Weight;

/// Fundamental-weight coordinates of a partition with at most `n` rows.
pub fn partition_weight(n: usize, parts: &[u32]) -> Result<Weight> {
    if parts.len() > n {
        return Err(Error::Precondition(format!("partition {parts:?} has more than {n} rows")));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!("{parts:?} is not a partition")));
    }
    let part = |i: usize| parts.get(i).copied().unwrap_or(0) as i64;
    Ok(Weight((0..n - 1).map(|i| part(i) - part(i + 1)).collect()))
}

/// All partitions of `total` with at most `rows` parts, in reverse lexicographic order.
pub fn partitions(total: u32, rows: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == rows {
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, rows, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, rows, &mut Vec::new(), &mut out);
    out
}

/// Balanced words spanning the zero-weight space of `(C^n)^{⊗N}`.
#[derive(Clone, Debug)]
pub struct TensorZeroBasis {
    pub n: usize,
    pub big_n: usize,
    pub words: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl TensorZeroBasis {
    pub fn new(n: usize, big_n: usize) -> Result<Self> {
        if n < 2 || big_n == 0 || big_n % n != 0 {
            return Err(Error::Precondition(format!("need n ≥ 2 dividing N, got n={n}, N={big_n}")));
        }
        let per = big_n / n;
        let mut words = Vec::new();
        let mut counts = vec![0usize; n];
        let mut cur = Vec::with_capacity(big_n);
        fn go(per: usize, big_n: usize, counts: &mut [usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == big_n {
                out.push(cur.clone());
                return;
            }
            for a in 0..counts.len() {
                if counts[a] < per {
                    counts[a] += 1;
                    cur.push(a);
                    go(per, big_n, counts, cur, out);
                    cur.pop();
                    counts[a] -= 1;
                }
            }
        }
        go(per, big_n, &mut counts, &mut cur, &mut words);
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(TensorZeroBasis { n, big_n, words, index })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `N! / ((N/n)!)^n`.
    pub fn expected_len(&self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        fact(self.big_n) / fact(self.big_n / self.n).pow(self.n as u32)
    }

    /// `E_ab E_ba` on the span of balanced words.
    pub fn t_matrix(&self, a: usize, b: usize) -> QMatrix {
        let mut m = QMatrix::zeros(self.len(), self.len());
        for (col, w) in self.words.iter().enumerate() {
            // E_ba replaces one letter a by b, then E_ab replaces one b by a
            for p in (0..w.len()).filter(|&p| w[p] == a) {
                let mut u = w.clone();
                u[p] = b;
                for r in (0..u.len()).filter(|&r| u[r] == b) {
                    let mut x = u.clone();
                    x[r] = a;
                    m[(self.index[&x], col)] += q(1);
                }
            }
        }
        m
    }

    /// Exchange of the letters `a` and `b` in every word.
    pub fn letter_swap(&self, a: usize, b: usize) -> QMatrix {
        let mut m = QMatrix::zeros(self.len(), self.len());
        for (col, w) in self.words.iter().enumerate() {
            let x: Vec<usize> = w
                .iter()
                .map(|&c| if c == a { b } else if c == b { a } else { c })
                .collect();
            m[(self.index[&x], col)] = q(1);
        }
        m
    }
}

fn zero_space(n: usize, mu: &Weight) -> Result<(Irrep, ZeroWeightSpace)> {
    let v = build_irrep_with_cap(n, mu, DEFAULT_DIM_CAP)?;
    let zero = zero_weight_space(&v);
    if zero.is_empty() {
        return Err(Error::EmptyZeroWeight(mu.to_string()));
    }
    Ok((v, zero))
}

fn t_on(v: &Irrep, zero: &ZeroWeightSpace, i: usize, j: usize) -> QMatrix {
    zero.restrict(&(&v.elementary(i, j) * &v.elementary(j, i)))
}

/// `π(E_ij E_ji)` on `V_μ[0]`.
pub fn t_matrix(n: usize, mu: &Weight, i: usize, j: usize) -> Result<QMatrix> {
    check_pair(n, i, j)?;
    let (v, zero) = zero_space(n, mu)?;
    Ok(t_on(&v, &zero, i, j))
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            len: n,
        });
    }
    if i == j {
        return Err(Error::Precondition(format!("indices must differ, got ({i},{j})")));
    }
    Ok(())
}

/// `P_ij = -lift(s_ij)` on `V_μ[0]`.
fn p_on(v: &Irrep, zero: &ZeroWeightSpace, i: usize, j: usize) -> QMatrix {
    let (a, b) = (i.min(j), i.max(j));
    zero.word_action(&v.rs.transposition_word(a, b)).scale(&q(-1))
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(fmt_q).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub pass: bool,
    /// `t_ij - (1 + P_ij)` when nonzero.
    pub discrepancy: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OnePlusPReport {
    pub partition: Vec<u32>,
    pub mu: Weight,
    pub zero_dim: usize,
    pub pairs: Vec<PairCheck>,
    /// `t_ij = t_ji` for every pair.
    pub t_symmetric: bool,
    /// Involution and braid relations of the `P_ij`.
    pub symmetric_group: bool,
    pub pass: bool,
}

/// Exact comparison of `t_ij` with `1 + P_ij` on `V_μ[0]`, `μ ⊢ N = n`.
pub fn check_t_equals_one_plus_p(n: usize, partition: &[u32]) -> Result<OnePlusPReport> {
    if partition.iter().sum::<u32>() as usize != n {
        return Err(Error::Precondition(format!("{partition:?} is not a partition of {n}")));
    }
    let mu = partition_weight(n, partition)?;
    let (v, zero) = zero_space(n, &mu)?;
    let id = QMatrix::identity(zero.dim());
    let mut pairs = Vec::new();
    let mut t_symmetric = true;
    for i in 0..n {
        for j in i + 1..n {
            let t = t_on(&v, &zero, i, j);
            t_symmetric &= t == t_on(&v, &zero, j, i);
            let diff = &t - &(&id + &p_on(&v, &zero, i, j));
            pairs.push(PairCheck {
                i,
                j,
                pass: diff.is_zero(),
                discrepancy: (!diff.is_zero()).then(|| matrix_strings(&diff)),
            });
        }
    }
    let symmetric_group = check_symmetric_group(&v, &zero);
    let pass = pairs.iter().all(|p| p.pass) && t_symmetric && symmetric_group;
    Ok(OnePlusPReport {
        partition: partition.to_vec(),
        mu,
        zero_dim: zero.dim(),
        pairs,
        t_symmetric,
        symmetric_group,
        pass,
    })
}

/// Coxeter relations for adjacent `P_{i,i+1}` and consistency of `P_ij` with conjugation.
fn check_symmetric_group(v: &Irrep, zero: &ZeroWeightSpace) -> bool {
    let n = v.n;
    let id = QMatrix::identity(zero.dim());
    let s: Vec<QMatrix> = (0..n - 1).map(|i| p_on(v, zero, i, i + 1)).collect();
    let mut ok = s.iter().all(|m| m * m == id);
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            let (a, b) = (&s[i], &s[j]);
            ok &= if j == i + 1 {
                &(a * b) * a == &(b * a) * b
            } else {
                a * b == b * a
            };
        }
    }
    // (i, j+1) = (j, j+1)(i, j)(j, j+1)
    for i in 0..n {
        for j in i + 1..n - 1 {
            let conj = &(&s[j] * &p_on(v, zero, i, j)) * &s[j];
            ok &= conj == p_on(v, zero, i, j + 1);
        }
    }
    ok
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketReport {
    pub n: usize,
    pub mu: Weight,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub zero: bool,
}

/// `[t_ij + t_kj, t_ik]` on `V_μ[0]`.
pub fn check_bracket_identity(n: usize, mu: &Weight, i: usize, j: usize, k: usize) -> Result<BracketReport> {
    check_pair(n, i, j)?;
    check_pair(n, k, j)?;
    check_pair(n, i, k)?;
    let (v, zero) = zero_space(n, mu)?;
    Ok(bracket_on(&v, &zero, i, j, k))
}

fn bracket_on(v: &Irrep, zero: &ZeroWeightSpace, i: usize, j: usize, k: usize) -> BracketReport {
    let sum = &t_on(v, zero, i, j) + &t_on(v, zero, k, j);
    BracketReport {
        n: v.n,
        mu: v.highest_weight.clone(),
        i,
        j,
        k,
        zero: sum.commutator(&t_on(v, zero, i, k)).is_zero(),
    }
}

/// The bracket identity for every ordered triple of distinct indices.
pub fn check_bracket_all(n: usize, mu: &Weight) -> Result<Vec<BracketReport>> {
    let (v, zero) = zero_space(n, mu)?;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    out.push(bracket_on(&v, &zero, i, j, k));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct OneRowReport {
    pub n: usize,
    pub k: u32,
    pub mu: Weight,
    /// `E_ij E_ji` on the one-dimensional `V_μ[0]`.
    pub unsymmetrized: String,
    /// `E_ij E_ji + E_ji E_ij`.
    pub symmetrized: String,
    /// The closed form `2k(k+1)`.
    pub closed_form: String,
    pub closed_form_matches: &'static str,
    /// Same scalar for every pair `(i, j)`.
    pub pair_independent: bool,
}

pub fn one_row_scalar(n: usize, k: u32) -> Result<OneRowReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let mu = partition_weight(n, &[n as u32 * k])?;
    let (v, zero) = zero_space(n, &mu)?;
    if zero.dim() != 1 {
        return Err(Error::Internal(format!("one-row V[0] has dimension {}", zero.dim())));
    }
    let mut scalars = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let t = t_on(&v, &zero, i, j);
                scalars.push(t[(0, 0)].clone());
            }
        }
    }
    let un = scalars[0].clone();
    let sym = t_on(&v, &zero, 0, 1)[(0, 0)].clone() + t_on(&v, &zero, 1, 0)[(0, 0)].clone();
    let closed = q(2 * k as i64 * (k as i64 + 1));
    let matches = if closed == un {
        "unsymmetrized"
    } else if closed == sym {
        "symmetrized"
    } else {
        "neither"
    };
    Ok(OneRowReport {
        n,
        k,
        mu,
        unsymmetrized: fmt_q(&un),
        symmetrized: fmt_q(&sym),
        closed_form: fmt_q(&closed),
        closed_form_matches: matches,
        pair_independent: scalars.iter().all(|s| s == &un),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinChainEntry {
    pub partition: Vec<u32>,
    pub mu: Weight,
    pub zero_dim: usize,
    pub pass: bool,
    /// Coupling `1 + P_ij` per pair when `V_μ[0]` is one-dimensional.
    pub couplings: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinChainReport {
    pub big_n: usize,
    pub entries: Vec<SpinChainEntry>,
    pub pass: bool,
}

/// `Σ_α π(X_α X_{-α}) r_α = Σ_{i<j} (1 + P_ij) r_{e_i - e_j}` on `V_μ[0]` for all `μ ⊢ N`,
/// with `r_α` the potential coefficient of the Hamiltonian.
pub fn spin_chain_potential_check(big_n: usize) -> Result<SpinChainReport> {
    let n = big_n;
    let mut entries = Vec::new();
    for partition in partitions(n as u32, n) {
        let mu = partition_weight(n, &partition)?;
        let (v, zero) = zero_space(n, &mu)?;
        let d = zero.dim();
        let rank = v.rank();
        let mut lhs = vec![vec![RationalCoeff::zero(rank); d]; d];
        let mut rhs = lhs.clone();
        let id = QMatrix::identity(d);
        let mut couplings = Vec::new();
        for (index, root) in v.rs.positive_roots.iter().enumerate() {
            let r = &RationalCoeff::monomial(root.weight.clone(), q(-1)) * &RationalCoeff::one_minus_pow(&root.weight, -2);
            let xy = zero.restrict(
                &(&v.root_vector(crate::rootsys::Root { index, positive: true })
                    * &v.root_vector(crate::rootsys::Root {
                        index,
                        positive: false,
                    })),
            );
            let one_p = &id + &p_on(&v, &zero, root.a, root.b);
            if d == 1 {
                couplings.push(fmt_q(&one_p[(0, 0)]));
            }
            for a in 0..d {
                for b in 0..d {
                    accumulate(&mut lhs[a][b], &xy[(a, b)], &r);
                    accumulate(&mut rhs[a][b], &one_p[(a, b)], &r);
                }
            }
        }
        let pass = lhs
            .iter()
            .zip(&rhs)
            .all(|(x, y)| x.iter().zip(y).all(|(p, q)| p == q));
        entries.push(SpinChainEntry {
            partition,
            mu,
            zero_dim: d,
            pass,
            couplings: (d == 1).then_some(couplings),
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(SpinChainReport { big_n, entries, pass })
}

fn accumulate(acc: &mut RationalCoeff, c: &Q, r: &RationalCoeff) {
    if !c.is_zero() {
        *acc = &*acc + &r.scale(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4, 4).len(), 5);
        assert_eq!(partitions(4, 2), vec![vec![4], vec![3, 1], vec![2, 2]]);
        assert_eq!(partition_weight(3, &[2, 1]).unwrap(), Weight(vec![1, 1]));
    }

    #[test]
    fn tensor_zero_basis_counts() {
        let b = TensorZeroBasis::new(2, 4).unwrap();
        assert_eq!(b.len() as u64, b.expected_len());
        assert_eq!(b.len(), 6);
        assert!(TensorZeroBasis::new(3, 4).is_err());
    }

    #[test]
    fn tensor_t_is_one_plus_letter_swap() {
        let b = TensorZeroBasis::new(3, 3).unwrap();
        let id = QMatrix::identity(b.len());
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(b.t_matrix(i, j), &id + &b.letter_swap(i, j));
        }
    }

    #[test]
    fn t_matrix_examples() {
        let t = t_matrix(2, &Weight(vec![2]), 0, 1).unwrap();
        assert_eq!(t, QMatrix::identity(1).scale(&q(2)));
        let t = t_matrix(2, &Weight(vec![0]), 0, 1).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn degenerate_bracket_indices() {
        assert!(check_bracket_identity(3, &Weight(vec![1, 1]), 0, 1, 0).is_err());
    }

    #[test]
    fn one_row_values() {
        let r = one_row_scalar(2, 1).unwrap();
        assert_eq!((r.unsymmetrized.as_str(), r.symmetrized.as_str()), ("2", "4"));
        assert_eq!(one_row_scalar(2, 2).unwrap().unsymmetrized, "6");
        assert!(one_row_scalar(3, 1).unwrap().pair_independent);
    }
}
