//! Float-tier spectral calculus backed by nalgebra's Hermitian eigensolver.

use nalgebra::DMatrix;

use super::mat::{from_nalgebra, Mat};
use crate::error::{Error, Result};
use crate::scalar::Complex64;

/// Eigendecomposition `H = U diag(λ) U*` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Mat<Complex64>,
}

pub fn hermitian_eigen(h: &Mat<Complex64>) -> HermitianEigen {
    assert_eq!(h.rows(), h.cols(), "eigendecomposition of a non-square matrix");
    let m = h.to_nalgebra();
    // symmetrize away rounding noise so the solver sees an exactly Hermitian input
    let sym = (&m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    HermitianEigen { values: eig.eigenvalues.iter().copied().collect(), vectors: from_nalgebra(&eig.eigenvectors) }
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `U f(Λ) U*`
    pub fn apply_fn(&self, f: impl Fn(f64) -> Complex64) -> Mat<Complex64> {
        let n = self.dim();
        let u = &self.vectors;
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        Mat::from_fn(n, n, |r, c| (0..n).map(|k| u[(r, k)] * fv[k] * u[(c, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> Mat<Complex64> {
        self.apply_fn(|l| Complex64::new(l, 0.0))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Orthogonal projections onto the eigenspaces, eigenvalues grouped when
    /// they agree to `tol` relative to the spectral radius.
    pub fn spectral_projections(&self, tol: f64) -> Vec<(f64, Mat<Complex64>)> {
        let n = self.dim();
        let scale = self.values.iter().fold(1.0f64, |m, l| m.max(l.abs()));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for k in order {
            match groups.last_mut() {
                Some(g) if (self.values[k] - self.values[*g.last().unwrap()]).abs() <= tol * scale => g.push(k),
                _ => groups.push(vec![k]),
            }
        }
        let u = &self.vectors;
        groups
            .into_iter()
            .map(|g| {
                let value = g.iter().map(|&k| self.values[k]).sum::<f64>() / g.len() as f64;
                let p = Mat::from_fn(n, n, |r, c| g.iter().map(|&k| u[(r, k)] * u[(c, k)].conj()).sum());
                (value, p)
            })
            .collect()
    }
}

/// A strictly positive operator with its functional calculus `z ↦ A^z`.
#[derive(Clone, Debug)]
pub struct PositiveOp {
    eigen: HermitianEigen,
}

impl PositiveOp {
    /// Fails when the matrix is not Hermitian to `tol` or has a spectral value ≤ `tol`.
    pub fn new(name: &str, a: &Mat<Complex64>, tol: f64) -> Result<Self> {
        let herm = a.max_diff(&a.adjoint()).0;
        let scale = 1.0 + a.max_abs();
        if herm > tol * scale {
            return Err(Error::NotQuantumGroup(format!("{name} is not self-adjoint (residual {herm:.3e})")));
        }
        let eigen = hermitian_eigen(a);
        let min = eigen.min_value();
        if min <= tol * scale {
            return Err(Error::NotQuantumGroup(format!("{name} is not strictly positive (eigenvalue {min:.3e})")));
        }
        Ok(PositiveOp { eigen })
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn power(&self, z: Complex64) -> Mat<Complex64> {
        self.eigen.apply_fn(|l| (z * l.ln()).exp())
    }

    pub fn power_real(&self, t: f64) -> Mat<Complex64> {
        self.power(Complex64::new(t, 0.0))
    }

    pub fn matrix(&self) -> Mat<Complex64> {
        self.eigen.reconstruct()
    }
}

/// Largest singular value.
pub fn operator_norm(m: &Mat<Complex64>) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let a: DMatrix<Complex64> = m.to_nalgebra();
    a.singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_positive() -> Mat<Complex64> {
        let b = Mat::from_rows(3, 3, vec![c(1.0, 0.0), c(0.5, 1.0), c(0.0, -0.3), c(0.2, 0.0), c(2.0, 0.1), c(0.4, 0.0), c(0.0, 0.7), c(-1.0, 0.0), c(1.5, 0.0)]);
        b.adjoint().mul(&b).add(&Mat::identity(3).scale(&c(0.1, 0.0)))
    }

    #[test]
    fn reconstruction_and_unitarity() {
        let h = sample_positive();
        let e = hermitian_eigen(&h);
        assert!(e.reconstruct().max_diff(&h).0 <= 1e-12);
        let u = &e.vectors;
        assert!(u.adjoint().mul(u).max_diff(&Mat::identity(3)).0 <= 1e-12);
    }

    #[test]
    fn powers_form_a_group() {
        let p = PositiveOp::new("A", &sample_positive(), 1e-10).unwrap();
        assert!(p.power(c(0.0, 0.0)).max_diff(&Mat::identity(3)).0 <= 1e-12);
        assert!(p.power_real(1.0).max_diff(&sample_positive()).0 <= 1e-10);
        let (y, z) = (c(0.3, -1.2), c(-0.5, 0.4));
        assert!(p.power(y).mul(&p.power(z)).max_diff(&p.power(y + z)).0 <= 1e-9);
        let u = p.power(c(0.0, 0.7));
        assert!(u.adjoint().mul(&u).max_diff(&Mat::identity(3)).0 <= 1e-12);
    }

    #[test]
    fn rejects_non_positive() {
        let m = Mat::from_rows(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        assert!(PositiveOp::new("X", &m, 1e-10).is_err());
    }

    #[test]
    fn projections_resolve_identity() {
        let m = Mat::from_rows(3, 3, vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)]);
        let projs = hermitian_eigen(&m).spectral_projections(1e-8);
        assert_eq!(projs.len(), 2);
        let sum = projs.iter().fold(Mat::zeros(3, 3), |acc, (_, p)| acc.add(p));
        assert!(sum.max_diff(&Mat::identity(3)).0 <= 1e-12);
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let m = Mat::from_rows(2, 2, vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -4.0)]);
        assert!((operator_norm(&m) - 4.0).abs() <= 1e-12);
    }
}
