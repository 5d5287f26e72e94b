//! Gauss–Jordan elimination over any [`Scalar`]: exact over Q(ζ_N), partially
//! pivoted with a zero tolerance over the complex doubles.

use super::mat::Mat;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reduced row echelon form together with bookkeeping from the elimination.
#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub reduced: Mat<S>,
    pub pivots: Vec<usize>,
    /// Determinant of the leading square block, when the input is square.
    pub det: Option<S>,
}

impl<S: Scalar> Rref<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space of the first `ncols` columns.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<S>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().copied().filter(|&c| c < ncols).collect();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![S::zero(); ncols];
            v[free] = S::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                let x = &self.reduced[(row, free)];
                if !x.is_zero() {
                    v[pc] = x.neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Gauss–Jordan elimination restricted to pivots in the first `pivot_cols` columns.
pub fn rref_limited<S: Scalar>(m: &Mat<S>, pivot_cols: usize, tol: f64) -> Rref<S> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut det = S::one();
    let mut row = 0;
    for col in 0..pivot_cols.min(cols) {
        if row == rows {
            break;
        }
        let pick = if S::EXACT {
            (row..rows).find(|&r| !a[(r, col)].is_zero())
        } else {
            (row..rows)
                .filter(|&r| !a[(r, col)].is_negligible(tol))
                .max_by(|&x, &y| a[(x, col)].magnitude().total_cmp(&a[(y, col)].magnitude()))
        };
        let Some(p) = pick else {
            continue;
        };
        if p != row {
            a.swap_rows(p, row);
            det = det.neg();
        }
        let pv = a[(row, col)].clone();
        det = det.mul(&pv);
        let inv = pv.inv().expect("pivot is nonzero");
        let nz: Vec<usize> = (col..cols).filter(|&c| !a[(row, c)].is_zero()).collect();
        for &c in &nz {
            a[(row, c)] = a[(row, c)].mul(&inv);
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let f = a[(r, col)].clone();
            if f.is_zero() {
                continue;
            }
            for &c in &nz {
                let t = f.mul(&a[(row, c)]);
                a[(r, c)] = a[(r, c)].sub(&t);
            }
            if !S::EXACT {
                a[(r, col)] = S::zero();
            }
        }
        pivots.push(col);
        row += 1;
    }
    let square = m.rows() == pivot_cols.min(cols);
    let det = if square {
        Some(if pivots.len() == m.rows() { det } else { S::zero() })
    } else {
        None
    };
    Rref { reduced: a, pivots, det }
}

pub fn rref<S: Scalar>(m: &Mat<S>, tol: f64) -> Rref<S> {
    rref_limited(m, m.cols(), tol)
}

pub fn rank<S: Scalar>(m: &Mat<S>, tol: f64) -> usize {
    rref(m, tol).rank()
}

pub fn determinant<S: Scalar>(m: &Mat<S>) -> S {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    rref(m, 0.0).det.expect("square")
}

pub fn kernel<S: Scalar>(m: &Mat<S>, tol: f64) -> Vec<Vec<S>> {
    rref(m, tol).kernel(m.cols())
}

/// Solution of `A x = b`: one particular solution plus a kernel basis of `A`.
#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub particular: Vec<S>,
    pub kernel: Vec<Vec<S>>,
}

pub fn solve<S: Scalar>(a: &Mat<S>, b: &[S], tol: f64) -> Result<Solution<S>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension { what: "right-hand side".into(), expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let aug = Mat::from_fn(a.rows(), n + 1, |r, c| if c < n { a[(r, c)].clone() } else { b[r].clone() });
    let e = rref_limited(&aug, n, tol);
    // a nonzero right-hand side in a zero row means no solution
    for r in e.rank()..a.rows() {
        if !e.reduced[(r, n)].is_negligible(tol) {
            return Err(Error::Inconsistent);
        }
    }
    let mut x = vec![S::zero(); n];
    for (row, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.reduced[(row, n)].clone();
    }
    Ok(Solution { particular: x, kernel: e.kernel(n) })
}

/// Solves `A X = B` column by column with a single elimination.
pub fn solve_many<S: Scalar>(a: &Mat<S>, b: &Mat<S>, tol: f64) -> Result<Mat<S>> {
    if b.rows() != a.rows() {
        return Err(Error::Dimension { what: "right-hand side rows".into(), expected: a.rows(), found: b.rows() });
    }
    let n = a.cols();
    let k = b.cols();
    let aug = Mat::from_fn(a.rows(), n + k, |r, c| if c < n { a[(r, c)].clone() } else { b[(r, c - n)].clone() });
    let e = rref_limited(&aug, n, tol);
    for r in e.rank()..a.rows() {
        for c in n..n + k {
            if !e.reduced[(r, c)].is_negligible(tol) {
                return Err(Error::Inconsistent);
            }
        }
    }
    let mut x = Mat::zeros(n, k);
    for (row, &pc) in e.pivots.iter().enumerate() {
        for c in 0..k {
            x[(pc, c)] = e.reduced[(row, n + c)].clone();
        }
    }
    Ok(x)
}

pub fn inverse<S: Scalar>(m: &Mat<S>, tol: f64) -> Result<Mat<S>> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Dimension { what: "inverse of non-square matrix".into(), expected: n, found: m.cols() });
    }
    let aug = Mat::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else if c - n == r {
            S::one()
        } else {
            S::zero()
        }
    });
    let e = rref_limited(&aug, n, tol);
    if e.rank() < n {
        return Err(Error::Singular { rank: e.rank(), dim: n });
    }
    Ok(Mat::from_fn(n, n, |r, c| e.reduced[(r, n + c)].clone()))
}
