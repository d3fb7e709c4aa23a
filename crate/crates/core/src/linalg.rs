//! Dense exact rational linear algebra.
//!
//! Everything here works over `BigRational`. Matrices are small (a few hundred
//! rows at most) but often very sparse, so products skip zero entries.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` string (`p` alone when the denominator is one).
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(&self[(r, c)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Q]) {
        assert_eq!(v.len(), self.rows);
        for (r, x) in v.iter().enumerate() {
            self[(r, c)] = x.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<Q> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Q::zero());
        }
        let c = self[(0, 0)].clone();
        if *self == Self::identity(self.rows).scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Q) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "mul_vec shape");
        let mut out = vec![Q::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `exp` of a nilpotent matrix, exact.
    pub fn exp_nilpotent(&self) -> Self {
        let n = self.rows;
        let mut acc = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n {
            term = (&term * self).scale(&qf(1, k as i64));
            if term.is_zero() {
                return acc;
            }
            acc = &acc + &term;
        }
        assert!((&term * self).is_zero(), "exp_nilpotent on non-nilpotent matrix");
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = &other[(r2, c2)];
                        if !b.is_zero() {
                            out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Submatrix selecting the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(p) = (pr..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            if p != pr {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, pr * self.cols + k);
                }
            }
            let inv = self[(pr, c)].recip();
            for k in c..self.cols {
                let v = &self[(pr, k)] * &inv;
                self[(pr, k)] = v;
            }
            for r in 0..self.rows {
                if r == pr || self[(r, c)].is_zero() {
                    continue;
                }
                let factor = self[(r, c)].clone();
                for k in c..self.cols {
                    if self[(pr, k)].is_zero() {
                        continue;
                    }
                    let v = &self[(r, k)] - &factor * &self[(pr, k)];
                    self[(r, k)] = v;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Q::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Solve `self * x = b` exactly; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(q_to_f64).collect())
            .collect()
    }

    pub fn max_abs(&self) -> Q {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(&q(-1))
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Column-sparse copy of a matrix, for repeated products with vectors.
#[derive(Clone, Debug)]
pub struct SparseCols {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, Q)>>,
}

impl SparseCols {
    pub fn from_matrix(m: &QMatrix) -> Self {
        let cols = (0..m.cols)
            .map(|c| {
                (0..m.rows)
                    .filter(|&r| !m[(r, c)].is_zero())
                    .map(|r| (r, m[(r, c)].clone()))
                    .collect()
            })
            .collect();
        SparseCols { rows: m.rows, cols }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        SparseCols { rows, cols }
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |(i, _)| *i)
            .map_or_else(|_| Q::zero(), |k| col[k].1.clone())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                m[(*r, c)] = x.clone();
            }
        }
        m
    }

    pub fn scale(&self, k: &Q) -> Self {
        let cols = self.cols.iter().map(|col| sparse_scale(col, k)).collect();
        SparseCols { rows: self.rows, cols }
    }

    /// `self - k · other`.
    pub fn sub_scaled(&self, k: &Q, other: &Self) -> Self {
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc = SparseAcc::default();
                acc.axpy(&Q::one(), a);
                acc.axpy(&-k.clone(), b);
                acc.finish()
            })
            .collect();
        SparseCols { rows: self.rows, cols }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] += a * x;
            }
        }
        out
    }
}

/// Sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_scale(v: &[(usize, Q)], k: &Q) -> SparseVec {
    if k.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * k)).collect()
}

pub fn sparse_dot(a: &[(usize, Q)], b: &[(usize, Q)]) -> Q {
    let (mut i, mut j) = (0, 0);
    let mut s = Q::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// Accumulator for sparse linear combinations.
#[derive(Default)]
pub struct SparseAcc(std::collections::BTreeMap<usize, Q>);

impl SparseAcc {
    pub fn add(&mut self, i: usize, x: Q) {
        *self.0.entry(i).or_insert_with(Q::zero) += x;
    }

    pub fn axpy(&mut self, k: &Q, v: &[(usize, Q)]) {
        for (i, x) in v {
            self.add(*i, k * x);
        }
    }

    pub fn finish(self) -> SparseVec {
        self.0.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// Sparse version of [`tensor_sum_apply`].
pub fn tensor_sum_apply_sparse(a: &SparseCols, b: &SparseCols, u: &[(usize, Q)]) -> SparseVec {
    let db = b.cols.len();
    let mut acc = SparseAcc::default();
    for (idx, x) in u {
        let (i, j) = (idx / db, idx % db);
        for (r, c) in &a.cols[i] {
            acc.add(r * b.rows + j, c * x);
        }
        for (r, c) in &b.cols[j] {
            acc.add(i * b.rows + r, c * x);
        }
    }
    acc.finish()
}

/// Sparse version of [`tensor_product_apply`].
pub fn tensor_product_apply_sparse(a: &SparseCols, b: &SparseCols, u: &[(usize, Q)]) -> SparseVec {
    let db = b.cols.len();
    let mut acc = SparseAcc::default();
    for (idx, x) in u {
        let (i, j) = (idx / db, idx % db);
        for (r, c) in &a.cols[i] {
            let cx = c * x;
            for (s, d) in &b.cols[j] {
                acc.add(r * b.rows + s, &cx * d);
            }
        }
    }
    acc.finish()
}

/// `(a ⊗ 1 + 1 ⊗ b) u` for `u` indexed by `i * dim_b + j`.
pub fn tensor_sum_apply(a: &SparseCols, b: &SparseCols, u: &[Q]) -> Vec<Q> {
    let db = b.cols.len();
    let mut out = vec![Q::zero(); a.rows * b.rows];
    for (idx, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (i, j) = (idx / db, idx % db);
        for (r, c) in &a.cols[i] {
            out[r * b.rows + j] += c * x;
        }
        for (r, c) in &b.cols[j] {
            out[i * b.rows + r] += c * x;
        }
    }
    out
}

/// `(a ⊗ b) u` for `u` indexed by `i * dim_b + j`.
pub fn tensor_product_apply(a: &SparseCols, b: &SparseCols, u: &[Q]) -> Vec<Q> {
    let db = b.cols.len();
    let mut out = vec![Q::zero(); a.rows * b.rows];
    for (idx, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (i, j) = (idx / db, idx % db);
        for (r, c) in &a.cols[i] {
            let cx = c * x;
            for (s, d) in &b.cols[j] {
                out[r * b.rows + s] += &cx * d;
            }
        }
    }
    out
}

/// Incremental echelon basis of a subspace of a sparse coordinate space.
///
/// Keeps the original spanning vectors and expresses arbitrary vectors in
/// their coordinates. Keys are any ordered type (tensor basis labels).
#[derive(Clone, Debug)]
pub struct SparseSpan<K: Ord + Clone> {
    /// `(pivot key, echelon row, combination of original vectors)`
    rows: Vec<(K, std::collections::BTreeMap<K, Q>, Vec<Q>)>,
    len: usize,
}

impl<K: Ord + Clone> Default for SparseSpan<K> {
    fn default() -> Self {
        SparseSpan {
            rows: Vec::new(),
            len: 0,
        }
    }
}

impl<K: Ord + Clone> SparseSpan<K> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Reduce `v` against the echelon rows; returns the remainder and the
    /// coordinates (in the original vectors) of the part removed.
    fn reduce(&self, v: &std::collections::BTreeMap<K, Q>) -> (std::collections::BTreeMap<K, Q>, Vec<Q>) {
        let mut rem = v.clone();
        let mut coords = vec![Q::zero(); self.len];
        for (pivot, row, comb) in &self.rows {
            let Some(x) = rem.get(pivot).cloned() else {
                continue;
            };
            let c = &x / &row[pivot];
            for (k, a) in row {
                let e = rem.entry(k.clone()).or_insert_with(Q::zero);
                *e -= &c * a;
                if e.is_zero() {
                    rem.remove(k);
                }
            }
            for (co, t) in coords.iter_mut().zip(comb) {
                if !t.is_zero() {
                    *co += &c * t;
                }
            }
        }
        (rem, coords)
    }

    /// Add `v` if it is independent of the current span. Returns whether it was added.
    pub fn try_insert(&mut self, v: &std::collections::BTreeMap<K, Q>) -> bool {
        let (rem, coords) = self.reduce(v);
        let Some((pivot, _)) = rem.iter().next() else {
            return false;
        };
        let pivot = pivot.clone();
        for (_, _, comb) in self.rows.iter_mut() {
            comb.push(Q::zero());
        }
        let mut comb: Vec<Q> = coords.into_iter().map(|c| -c).collect();
        comb.push(Q::one());
        self.rows.push((pivot, rem, comb));
        self.len += 1;
        true
    }

    /// Coordinates of `v` in the inserted vectors, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &std::collections::BTreeMap<K, Q>) -> Option<Vec<Q>> {
        let (rem, coords) = self.reduce(v);
        rem.is_empty().then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn tensor_actions_match_kron() {
        let a = QMatrix::from_i64(&[vec![0, 1], vec![2, 3]]);
        let b = QMatrix::from_i64(&[vec![1, 0, 4], vec![0, 0, 1], vec![5, 1, 0]]);
        let u: Vec<Q> = (0..6).map(|k| q(k - 2)).collect();
        let (sa, sb) = (SparseCols::from_matrix(&a), SparseCols::from_matrix(&b));
        assert_eq!(tensor_product_apply(&sa, &sb, &u), a.kron(&b).mul_vec(&u));
        let sum = &a.kron(&QMatrix::identity(3)) + &QMatrix::identity(2).kron(&b);
        assert_eq!(tensor_sum_apply(&sa, &sb, &u), sum.mul_vec(&u));
    }

    #[test]
    fn inverse_and_solve() {
        let m = QMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert_eq!(inv[(0, 0)], qf(2, 3));
        let x = m.solve(&[q(1), q(1)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let singular = QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[q(1), q(0)]).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = QMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn exp_of_nilpotent_jordan_block() {
        let n = QMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let e = n.exp_nilpotent();
        assert_eq!(e[(0, 2)], qf(1, 2));
        assert_eq!(e[(0, 1)], q(1));
    }

    #[test]
    fn sparse_span_coordinates() {
        let vec_of = |pairs: &[(u8, i64)]| -> BTreeMap<u8, Q> {
            pairs.iter().map(|&(k, v)| (k, q(v))).collect()
        };
        let mut span = SparseSpan::default();
        assert!(span.try_insert(&vec_of(&[(0, 1), (1, 1)])));
        assert!(span.try_insert(&vec_of(&[(1, 1), (2, 1)])));
        assert!(!span.try_insert(&vec_of(&[(0, 1), (2, -1)])));
        let coords = span.coordinates(&vec_of(&[(0, 2), (1, 3), (2, 1)])).unwrap();
        assert_eq!(coords, vec![q(2), q(1)]);
        assert!(span.coordinates(&vec_of(&[(0, 1)])).is_none());
    }
}
