//! Dense exact linear algebra, generic over the scalar.
//!
//! Everything here works for any ring implementing the `num-traits`
//! arithmetic traits; the crate instantiates it with [`crate::Int`] and
//! [`crate::Rational`]. No floating point is ever involved.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_integer::Integer;
use num_traits::{Num, Signed};

/// Commutative ring scalar with exact arithmetic.
pub trait Scalar: Num + Clone + fmt::Debug {}
impl<T: Num + Clone + fmt::Debug> Scalar for T {}

/// Euclidean scalar, used for Smith normal form.
pub trait EuclideanScalar: Scalar + Integer + Signed {}
impl<T: Scalar + Integer + Signed> EuclideanScalar for T {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Fraction-free (Bareiss) determinant. Valid over any integral domain:
    /// every division performed is exact.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_flip {
            T::zero() - d
        } else {
            d
        }
    }

    /// Inverse over a field by Gauss-Jordan elimination. `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let pivot = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(pivot, c);
            inv.swap_rows(pivot, c);
            let p = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = a[(c, j)].clone() / p.clone();
                inv[(c, j)] = inv[(c, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(c, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(c, j)].clone();
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: EuclideanScalar> Matrix<T> {
    /// Invariant factors d_1 | d_2 | ... of the Smith normal form, all
    /// non-negative. Zero factors are included for rank-deficient input.
    pub fn smith_invariants(&self) -> Vec<T> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let r = m.min(n);
        for t in 0..r {
            // pivot: smallest nonzero absolute value in the trailing block
            let Some((pi, pj)) = a.min_abs_entry(t) else {
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    for j in t..n {
                        a[(i, j)] = a[(i, j)].clone() - q.clone() * a[(t, j)].clone();
                    }
                    if !a[(i, t)].is_zero() {
                        a.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    for i in t..m {
                        a[(i, j)] = a[(i, j)].clone() - q.clone() * a[(i, t)].clone();
                    }
                    if !a[(t, j)].is_zero() {
                        a.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility: fold any offending row into row t and redo
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
                match bad {
                    Some((i, _)) => {
                        for j in t..n {
                            a[(t, j)] = a[(t, j)].clone() + a[(i, j)].clone();
                        }
                    }
                    None => break,
                }
            }
        }
        (0..r).map(|i| a[(i, i)].abs()).collect()
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + self[(i, k)].clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows(&[[2i64, -1], [-1, 2]]);
        assert_eq!(m.determinant(), 3);
        let g2 = Matrix::from_rows(&[[2i64, -1], [-3, 2]]);
        assert_eq!(g2.determinant(), 1);
        let pivoting = Matrix::from_rows(&[[0i64, 1, 0], [1, 0, 0], [0, 0, 5]]);
        assert_eq!(pivoting.determinant(), -5);
        let singular = Matrix::from_rows(&[[1i64, 2], [2, 4]]);
        assert_eq!(singular.determinant(), 0);
        assert_eq!(Matrix::<i64>::zeros(0, 0).determinant(), 1);
    }

    #[test]
    fn determinant_matches_over_rationals() {
        let m = Matrix::from_rows(&[[3i64, 1, 4], [1, 5, 9], [2, 6, 5]]);
        let q = m.map(|&x| Ratio::from_integer(x));
        assert_eq!(q.determinant(), Ratio::from_integer(m.determinant()));
        assert_eq!(m.determinant(), -90);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(&[[2i64, -1, 0], [-1, 2, -1], [0, -1, 2]]).map(|&x| Ratio::from_integer(x));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(Matrix::from_rows(&[[Ratio::from_integer(1i64), Ratio::from_integer(1)]; 2]).inverse().is_none());
    }

    #[test]
    fn smith_invariants_known() {
        let m = Matrix::from_rows(&[[2i64, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        assert_eq!(m.smith_invariants(), vec![2, 6, 12]);
        let diag = Matrix::from_rows(&[[4i64, 0], [0, 6]]);
        assert_eq!(diag.smith_invariants(), vec![2, 12]);
        let rank1 = Matrix::from_rows(&[[1i64, 2], [2, 4]]);
        assert_eq!(rank1.smith_invariants(), vec![1, 0]);
    }
}
