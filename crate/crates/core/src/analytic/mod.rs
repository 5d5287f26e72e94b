//! The Hilbert-space layer of a positive quantum group with μ = 1: the GNS
//! space of the Haar integral, the regular representations, the unitary W
//! and the modular operators, all as matrices in an orthonormal frame.
//!
//! Coordinates: `Λ(f) = G^{1/2} f` where `G_ij = φ(ē_i e_j)`, so the standard
//! inner product on ℂ^d is the GNS inner product. An operator `X` on the
//! algebra (acting as `Λ(f) ↦ Λ(Xf)`) becomes `G^{1/2} X G^{-1/2}`.

mod checks;

pub use checks::*;

use nalgebra::{DMatrix, DVector};

use crate::duality::{AlgMultUnitary, Dual};
use crate::error::{Error, Result};
use crate::integrals::{gram, QuantumGroup};
use crate::linalg::mat::{from_nalgebra, Mat};
use crate::linalg::spectral::{hermitian_eigen, PositiveOp};
use crate::scalar::{Complex64, Cyclo, Scalar};

type C = Cyclo;
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Identity residuals.
pub const TOL: f64 = 1e-10;
/// Spectral reconstructions and simultaneous diagonalization.
pub const SPECTRAL_TOL: f64 = 1e-8;
/// Multiplier extraction and complex powers.
pub const MULTIPLIER_TOL: f64 = 1e-9;
/// Largest algebra dimension for which the dense L²⊗L² computations run.
pub const MAX_DIM: usize = 16;

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn to_cm(m: &Mat<C>) -> CMat {
    m.to_nalgebra()
}

pub(crate) fn to_cv(v: &[C]) -> CVec {
    CVec::from_iterator(v.len(), v.iter().map(Scalar::to_c64))
}

/// A conjugate-linear map `ξ ↦ A·conj(ξ)`, stored by `A`.
#[derive(Clone, Debug)]
pub struct Antilinear(pub CMat);

impl Antilinear {
    pub fn apply(&self, v: &CVec) -> CVec {
        &self.0 * v.conjugate()
    }

    /// The adjoint, `⟨Tξ, η⟩ = ⟨T*η, ξ⟩`.
    pub fn adjoint(&self) -> Antilinear {
        Antilinear(self.0.transpose())
    }

    /// `self ∘ inner`, which is linear.
    pub fn after(&self, inner: &Antilinear) -> CMat {
        &self.0 * inner.0.conjugate()
    }

    /// `self ∘ x ∘ self` for a linear `x`.
    pub fn conjugate_op(&self, x: &CMat) -> CMat {
        &self.0 * x.conjugate() * self.0.conjugate()
    }
}

/// A strictly positive matrix with its functional calculus.
#[derive(Clone, Debug)]
pub struct PositiveMatrix {
    pub name: &'static str,
    pub matrix: CMat,
    calc: PositiveOp,
}

impl PositiveMatrix {
    pub fn new(name: &'static str, matrix: CMat) -> Result<Self> {
        let calc = PositiveOp::new(name, &from_nalgebra(&matrix), SPECTRAL_TOL)?;
        Ok(PositiveMatrix { name, matrix, calc })
    }

    pub fn power(&self, z: Complex64) -> CMat {
        self.calc.power(z).to_nalgebra()
    }

    pub fn power_real(&self, t: f64) -> CMat {
        self.power(c64(t, 0.0))
    }

    /// `A^{it}`
    pub fn unitary(&self, t: f64) -> CMat {
        self.power(c64(0.0, t))
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.calc.eigen().values
    }

    pub fn projections(&self) -> Vec<CMat> {
        self.calc.eigen().spectral_projections(SPECTRAL_TOL).into_iter().map(|(_, p)| p.to_nalgebra()).collect()
    }
}

/// The positive operators of the modular theory.
#[derive(Clone, Debug)]
pub struct ModularOperators {
    /// `δΛ(f) = Λ(δ_G f)`
    pub delta: PositiveMatrix,
    /// `δ'Λ(f) = Λ(f δ_G)`
    pub delta_prime: PositiveMatrix,
    /// `δ̂Λ(f) = Λ(δ̂ * f)`
    pub delta_hat: PositiveMatrix,
    /// `δ̂'Λ(f) = Λ(f * δ̂)`
    pub delta_hat_prime: PositiveMatrix,
    /// `∇Λ(f) = Λ(σ(f))`
    pub nabla: PositiveMatrix,
    /// `∇̂Λ(f) = Λ(S²(f)δ_G^{-1})`
    pub nabla_hat: PositiveMatrix,
    /// `NΛ(f) = Λ(S²(f))`
    pub n: PositiveMatrix,
    /// `M = δ'N`
    pub m: PositiveMatrix,
    /// `TΛ(f) = Λ(f̄)`
    pub t: Antilinear,
    /// `T = J∇^{1/2}`
    pub j: Antilinear,
    /// `KΛ(f) = Λ'(S(f̄))`, into the GNS space of `ψ = φ∘S`.
    pub k: Antilinear,
    /// `LΛ(f) = Λ_δ(f)`, into the GNS space of `f ↦ φ(f̄ δ f)`.
    pub l: CMat,
}

/// Float copies of the algebra and convolution structure, in algebra coordinates.
#[derive(Clone, Debug)]
pub struct FloatStructure {
    /// Left multiplication by `e_i`.
    pub left: Vec<CMat>,
    /// Left convolution by `e_i`.
    pub conv: Vec<CMat>,
    pub unit: CVec,
    pub conv_unit: CVec,
    pub phi: CVec,
}

impl FloatStructure {
    pub fn mul(&self, a: &CVec, b: &CVec) -> CVec {
        combine(&self.left, a) * b
    }

    pub fn conv(&self, f: &CVec, g: &CVec) -> CVec {
        combine(&self.conv, f) * g
    }

    pub fn phi(&self, a: &CVec) -> Complex64 {
        self.phi.iter().zip(a.iter()).map(|(x, y)| x * y).sum()
    }
}

/// `Σ_i c_i X_i`
pub fn combine(ops: &[CMat], c: &CVec) -> CMat {
    let n = ops[0].nrows();
    let mut out = CMat::zeros(n, ops[0].ncols());
    for (x, k) in ops.iter().zip(c.iter()) {
        if *k != Complex64::new(0.0, 0.0) {
            out += x * *k;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct GnsRealization {
    pub dim: usize,
    /// `G_ij = φ(ē_i e_j)`
    pub gram: CMat,
    /// `Q = G^{-1/2}`, so `Q*GQ = I`.
    pub frame: CMat,
    /// `G^{1/2}`: `Λ(f) = coord · f`.
    pub coord: CMat,
    pub m_rep: Vec<CMat>,
    pub lambda_rep: Vec<CMat>,
    /// The multiplicative unitary on L²⊗L².
    pub w: CMat,
    pub ops: ModularOperators,
    pub alg: FloatStructure,
}

fn sqrt_pd(name: &str, g: &Mat<C>) -> Result<(CMat, CMat)> {
    let e = hermitian_eigen(&g.to_c64());
    let min = e.min_value();
    if min <= 0.0 {
        return Err(Error::TierRefusal { operation: "build_gns", reason: format!("{name} Gram matrix is not positive definite (eigenvalue {min:.3e})") });
    }
    let root = e.apply_fn(|l| c64(l.sqrt(), 0.0)).to_nalgebra();
    let inv = e.apply_fn(|l| c64(1.0 / l.sqrt(), 0.0)).to_nalgebra();
    Ok((root, inv))
}

/// Why the analytic layer does not apply, if it does not.
pub fn refusal(qg: &QuantumGroup) -> Option<String> {
    if !qg.haar.positive {
        return Some(match &qg.haar.positivity_detail {
            Some(d) => format!("the Haar integral is not positive: {d}"),
            None => "the Haar integral is not positive".to_string(),
        });
    }
    if !qg.modular.mu.is_one() {
        return Some(format!("the scaling constant is {} rather than 1", qg.modular.mu));
    }
    if qg.dim() > MAX_DIM {
        return Some(format!("dimension {} exceeds the dense cap {MAX_DIM}", qg.dim()));
    }
    None
}

fn conv_matrix(dual: &Dual, f: &[C], left: bool) -> Mat<C> {
    let d = f.len();
    let cols: Vec<Vec<C>> = (0..d)
        .map(|j| {
            let e = crate::hopf::basis_vec(d, j);
            if left {
                dual.conv(f, &e)
            } else {
                dual.conv(&e, f)
            }
        })
        .collect();
    Mat::from_columns(d, &cols)
}

pub fn build_gns(qg: &QuantumGroup, dual: &Dual) -> Result<GnsRealization> {
    if let Some(reason) = refusal(qg) {
        return Err(Error::TierRefusal { operation: "build_gns", reason });
    }
    let model = &qg.model;
    let d = qg.dim();
    let g_exact = gram(model, &qg.haar.phi);
    let (coord, frame) = sqrt_pd("φ", &g_exact)?;
    let op = |x: &Mat<C>| &coord * to_cm(x) * &frame;

    let m_rep: Vec<CMat> = (0..d).map(|i| op(&model.left_mult_matrix(&qg.e(i)))).collect();
    let conv_exact: Vec<Mat<C>> = (0..d).map(|i| conv_matrix(dual, &qg.e(i), true)).collect();
    let lambda_rep: Vec<CMat> = conv_exact.iter().map(&op).collect();

    let wa = AlgMultUnitary::new(qg);
    let rr = coord.kronecker(&coord);
    let rr_inv = frame.kronecker(&frame);
    let w = &rr * to_cm(&wa.w) * &rr_inv;

    let md = &qg.modular;
    let delta = md.delta.clone();
    let s2 = &md.s2;
    let delta_op = PositiveMatrix::new("δ", op(&model.left_mult_matrix(&delta)))?;
    let delta_prime = PositiveMatrix::new("δ'", op(&model.right_mult_matrix(&delta)))?;
    let delta_hat = PositiveMatrix::new("δ̂", op(&conv_matrix(dual, dual.delta_hat(), true)))?;
    let delta_hat_prime = PositiveMatrix::new("δ̂'", op(&conv_matrix(dual, dual.delta_hat(), false)))?;
    let nabla = PositiveMatrix::new("∇", op(&md.sigma))?;
    let nabla_hat = PositiveMatrix::new("∇̂", op(&model.right_mult_matrix(&md.delta_inv).mul(s2)))?;
    let n = PositiveMatrix::new("N", op(s2))?;
    let m = PositiveMatrix::new("M", &delta_prime.matrix * &n.matrix)?;

    let invol = to_cm(model.invol_matrix());
    let t = Antilinear(&coord * &invol * frame.conjugate());
    // J = T∇^{-1/2}
    let j = Antilinear(&t.0 * nabla.power_real(-0.5).conjugate());

    let psi_gram = gram(model, &qg.haar.psi);
    let (coord_psi, _) = sqrt_pd("ψ", &psi_gram)?;
    let k = Antilinear(&coord_psi * to_cm(&qg.hopf.antipode) * &invol * frame.conjugate());

    let delta_gram = Mat::from_fn(d, d, |a, b| qg.phi(&qg.mul(&qg.bar(&qg.e(a)), &qg.mul(&delta, &qg.e(b)))));
    let (coord_delta, _) = sqrt_pd("φ(·δ·)", &delta_gram)?;
    let l = &coord_delta * &frame;

    let alg = FloatStructure {
        left: (0..d).map(|i| to_cm(&model.left_mult_matrix(&qg.e(i)))).collect(),
        conv: conv_exact.iter().map(to_cm).collect(),
        unit: to_cv(model.unit()),
        conv_unit: to_cv(dual.conv_unit()),
        phi: to_cv(&qg.haar.phi),
    };

    Ok(GnsRealization {
        dim: d,
        gram: to_cm(&g_exact),
        frame,
        coord,
        m_rep,
        lambda_rep,
        w,
        ops: ModularOperators { delta: delta_op, delta_prime, delta_hat, delta_hat_prime, nabla, nabla_hat, n, m, t, j, k, l },
        alg,
    })
}

impl GnsRealization {
    /// `Λ(f)`
    pub fn lam(&self, f: &CVec) -> CVec {
        &self.coord * f
    }

    pub fn lam_exact(&self, f: &[C]) -> CVec {
        self.lam(&to_cv(f))
    }

    /// Back from L² to algebra coordinates.
    pub fn unlam(&self, v: &CVec) -> CVec {
        &self.frame * v
    }

    /// The L² form of an algebra operator.
    pub fn op(&self, x: &CMat) -> CMat {
        &self.coord * x * &self.frame
    }

    pub fn m(&self, f: &CVec) -> CMat {
        combine(&self.m_rep, f)
    }

    pub fn lambda(&self, f: &CVec) -> CMat {
        combine(&self.lambda_rep, f)
    }

    /// `A^z` of a positive operator, transported back to an element via `A^z Λ(unit)`.
    pub fn element_power(&self, op: &PositiveMatrix, unit: &CVec, z: Complex64) -> CVec {
        self.unlam(&(op.power(z) * self.lam(unit)))
    }

    /// `δ_G^z` as an element of the algebra.
    pub fn delta_elem(&self, z: Complex64) -> CVec {
        self.element_power(&self.ops.delta, &self.alg.unit, z)
    }

    /// `δ_Ĝ^z` as an element of the convolution algebra.
    pub fn delta_hat_elem(&self, z: Complex64) -> CVec {
        self.element_power(&self.ops.delta_hat, &self.alg.conv_unit, z)
    }
}
