//! Small dense integer and rational matrices.
//!
//! Integer matrices act on column vectors of `X*(T) = Z^rank`. Everything
//! here is sized for root data of rank at most a few dozen, so storage is a
//! flat row-major `Vec`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul_rational_vec(&self, v: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (&a, b)| acc + b * a)).collect()
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Rational::from_integer(x)).collect(),
        }
    }

    /// Inverse, if it exists over the integers.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        inv.to_integer()
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &pj) in perm.iter().enumerate() {
            m.set(pj, j, 1);
        }
        m
    }
}

impl IntMatrix {
    /// Product, or `None` if an entry overflows `i64`.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    acc = acc.checked_add(self.get(i, k).checked_mul(rhs.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Some(out)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    /// Bilinear form `xᵗ·self·y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let sy = self.mul_vec(y);
        dot(x, &sy)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sylvester's criterion: all leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| {
            let minor = QMatrix::from_rows(&(0..k).map(|i| self.row(i)[..k].to_vec()).collect::<Vec<_>>());
            minor.determinant() > Rational::zero()
        })
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c);
            det *= piv;
            for r in c + 1..n {
                let f = a.get(r, c) / piv;
                if !f.is_zero() {
                    for k in c..n {
                        let v = a.get(r, k) - f * a.get(c, k);
                        a.set(r, k, v);
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Gauss-Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a.get(c, c);
            for k in 0..n {
                a.set(c, k, a.get(c, k) / piv);
                inv.set(c, k, inv.get(c, k) / piv);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c);
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    a.set(r, k, a.get(r, k) - f * a.get(c, k));
                    inv.set(r, k, inv.get(r, k) - f * inv.get(c, k));
                }
            }
        }
        Some(inv)
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self.get(i, j);
                if !q.is_integer() {
                    return None;
                }
                out.set(i, j, q.to_integer());
            }
        }
        Some(out)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let v = (0..self.cols).fold(Rational::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j));
                out.set(i, j, v);
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

pub fn int_dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

/// Rank over the rationals of a list of integer vectors.
pub fn rank_of(vectors: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| to_rational_vec(v)).collect();
    row_echelon(rows).len()
}

/// Nonzero rows of a reduced row echelon form.
pub fn row_echelon(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let piv = rows[r][c];
        for k in c..ncols {
            rows[r][k] /= piv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for k in c..ncols {
                    let v = rows[r][k];
                    rows[i][k] -= f * v;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Solves `Σ c_j·basis_j = target` for rational coefficients, if a solution
/// exists. The basis must be linearly independent.
pub fn solve_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // Augmented system: n equations in k unknowns.
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let ech = row_echelon(std::mem::take(&mut rows));
    let mut coeffs = vec![Rational::zero(); k];
    for row in &ech {
        let pivot = row.iter().position(|q| !q.is_zero())?;
        if pivot == k {
            return None;
        }
        coeffs[pivot] = row[k];
    }
    Some(coeffs)
}

/// Integer basis of `{x ∈ Z^n : A·x = 0}` for an integer matrix `A` with
/// `n` columns. The returned lattice is saturated by construction.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let m = a.rows();
    let n = a.cols();
    let mut work: Vec<Vec<i128>> = (0..m).map(|i| a.row(i).iter().map(|&x| i128::from(x)).collect()).collect();
    let mut unimod: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    // Column operations bring `work` to column echelon form; `unimod` tracks
    // them, so trailing columns past the last pivot span the kernel.
    let mut next = 0usize;
    for r in 0..m {
        if next == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (next..n).filter(|&c| work[r][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&c| work[r][c].abs()).unwrap();
            swap_cols(&mut work, next, piv);
            swap_cols(&mut unimod, next, piv);
            let p = work[r][next];
            let mut done = true;
            for c in next + 1..n {
                let q = Integer::div_floor(&work[r][c], &p);
                if q != 0 {
                    col_axpy(&mut work, c, next, q);
                    col_axpy(&mut unimod, c, next, q);
                }
                if work[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                next += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<i64>> = (next..n).map(|c| unimod.iter().map(|row| row[c] as i64).collect()).collect();
    hermite_rows(basis)
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// column[dst] -= q * column[src]
fn col_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128) {
    for row in m.iter_mut() {
        row[dst] -= q * row[src];
    }
}

/// Row-style Hermite normal form of a set of linearly independent integer
/// vectors: pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(vectors: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let ncols = vectors.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<i128>> = vectors.into_iter().map(|v| v.into_iter().map(i128::from).collect()).collect();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, piv);
            let p = rows[r][c];
            let mut clean = true;
            for i in r + 1..rows.len() {
                let q = Integer::div_floor(&rows[i][c], &p);
                if q != 0 {
                    let src = rows[r].clone();
                    for (x, s) in rows[i].iter_mut().zip(&src) {
                        *x -= q * s;
                    }
                }
                if rows[i][c] != 0 {
                    clean = false;
                }
            }
            if clean {
                if rows[r][c] < 0 {
                    for x in rows[r].iter_mut() {
                        *x = -*x;
                    }
                }
                let p = rows[r][c];
                for i in 0..r {
                    let q = Integer::div_floor(&rows[i][c], &p);
                    if q != 0 {
                        let src = rows[r].clone();
                        for (x, s) in rows[i].iter_mut().zip(&src) {
                            *x -= q * s;
                        }
                    }
                }
                r += 1;
                break;
            }
        }
    }
    rows.truncate(r);
    rows.into_iter().map(|v| v.into_iter().map(|x| x as i64).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn product_and_inverse() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]));
        assert!((&a * &inv).is_identity());
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(b.inverse().is_none());
    }

    #[test]
    fn permutation_matrix_moves_basis() {
        let p = IntMatrix::permutation(&[1, 2, 0]);
        assert_eq!(p.mul_vec(&[1, 0, 0]), vec![0, 1, 0]);
        assert_eq!(p.mul_vec(&[0, 0, 1]), vec![1, 0, 0]);
    }

    #[test]
    fn kernel_of_block_swaps() {
        // rows (s_1 - I) and (s_3 - I) on Z^4
        let a = IntMatrix::from_rows(&[vec![-1, 1, 0, 0], vec![1, -1, 0, 0], vec![0, 0, -1, 1], vec![0, 0, 1, -1]]);
        assert_eq!(integer_kernel(&a), vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 2y = 0 has kernel spanned by (1,1), not (2,2).
        let a = IntMatrix::from_rows(&[vec![2, -2]]);
        assert_eq!(integer_kernel(&a), vec![vec![1, 1]]);
        let full = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert!(integer_kernel(&full).is_empty());
    }

    #[test]
    fn hermite_reduces_above_pivots() {
        let h = hermite_rows(vec![vec![1, 3], vec![0, 2]]);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
        let h = hermite_rows(vec![vec![0, -1], vec![2, 4]]);
        assert_eq!(h, vec![vec![2, 0], vec![0, 1]]);
    }

    #[test]
    fn span_solver() {
        let basis = vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let got = solve_in_span(&basis, &[q(2), q(2), q(5)]).unwrap();
        assert_eq!(got, vec![q(2), q(5)]);
        assert!(solve_in_span(&basis, &[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn positive_definite() {
        let g = QMatrix::from_rows(&[vec![q(2), q(-1)], vec![q(-1), q(2)]]);
        assert!(g.is_positive_definite());
        let h = QMatrix::from_rows(&[vec![q(1), q(2)], vec![q(2), q(1)]]);
        assert!(!h.is_positive_definite());
        assert_eq!(g.determinant(), q(3));
    }
}
