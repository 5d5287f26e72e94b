use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;

use crate::scalar::{Complex64, Scalar};

/// Dense row-major matrix. Products skip zero entries, which keeps the
/// permutation-like structure maps of group models cheap.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length");
            for (r, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m[(r, c)] = x.clone();
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [S] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Nonzero entries of column `c` as `(row, value)`.
    pub fn column_nonzeros(&self, c: usize) -> Vec<(usize, S)> {
        (0..self.rows)
            .filter_map(|r| {
                let x = &self[(r, c)];
                (!x.is_zero()).then(|| (r, x.clone()))
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out: Mat<S> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        o.add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = vec![S::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        out
    }

    /// Kronecker product; row/column index of the left factor is most significant.
    pub fn kron(&self, other: &Mat<S>) -> Mat<S> {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Mat::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * r2 + k, j * c2 + l)] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(S::conj).collect() }
    }

    pub fn adjoint(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn add(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().filter(|x| !x.is_zero()).map(S::magnitude).fold(0.0, f64::max)
    }

    /// Max-norm of `self - other` together with the position of the worst entry.
    pub fn max_diff(&self, other: &Mat<S>) -> (f64, Option<(usize, usize)>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix comparison shape");
        let mut worst = (0.0, None);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let d = self[(r, c)].sub(&other[(r, c)]);
                if d.is_zero() {
                    continue;
                }
                let m = d.magnitude();
                // exact nonzero differences always register, even if tiny
                let m = if S::EXACT && m == 0.0 { f64::MIN_POSITIVE } else { m };
                if worst.1.is_none() || m > worst.0 {
                    worst = (m, Some((r, c)));
                }
            }
        }
        worst
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_c64(&self) -> Mat<Complex64> {
        self.map(S::to_c64)
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_c64())
    }

    /// Reorders rows and columns: `out[(r, c)] = self[(row_src[r], col_src[c])]`.
    pub fn permuted(&self, row_src: &[usize], col_src: &[usize]) -> Mat<S> {
        assert_eq!(row_src.len(), self.rows);
        assert_eq!(col_src.len(), self.cols);
        Mat::from_fn(self.rows, self.cols, |r, c| self[(row_src[r], col_src[c])].clone())
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

/// Max-norm of a vector difference.
pub fn vec_max_diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x.sub(y);
            if d.is_zero() {
                0.0
            } else if S::EXACT {
                d.magnitude().max(f64::MIN_POSITIVE)
            } else {
                d.magnitude()
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclo;

    #[test]
    fn kron_matches_definition() {
        let a = Mat::from_fn(2, 2, |r, c| Cyclo::from_int((r * 2 + c) as i64 + 1));
        let b = Mat::from_fn(2, 3, |r, c| Cyclo::from_int((r * 3 + c) as i64 - 2));
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..3 {
                        assert_eq!(k[(i * 2 + p, j * 3 + q)], a[(i, j)].mul_ref(&b[(p, q)]));
                    }
                }
            }
        }
    }

    #[test]
    fn product_is_associative() {
        let a = Mat::from_fn(3, 2, |r, c| Cyclo::from_int(r as i64 - c as i64));
        let b = Mat::from_fn(2, 4, |r, c| Cyclo::from_int((r + 2 * c) as i64));
        let c = Mat::from_fn(4, 2, |r, c| Cyclo::from_int((r * c) as i64 + 1));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
