//! Finite-dimensional *-algebras with coproduct: element calculus, the Galois
//! maps, and the counit/antipode derived from cancellation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::linmap::unflatten;
use crate::linalg::solve;
use crate::linalg::{LinMap, Mat};
use crate::report::{compare_vecs, Outcome, Report};
use crate::scalar::{Cyclo, Scalar};

pub type C = Cyclo;
pub type Sparse = Vec<(usize, C)>;

/// Models up to this dimension also solve the antipode from the full
/// d²-unknown linear system as an independent uniqueness check.
pub const DIRECT_ANTIPODE_MAX_DIM: usize = 9;

/// Nonzero entries of each column.
pub fn columns(m: &Mat<C>) -> Vec<Sparse> {
    (0..m.cols()).map(|c| m.column_nonzeros(c)).collect()
}

pub fn basis_vec(d: usize, i: usize) -> Vec<C> {
    let mut v = vec![C::zero(); d];
    v[i] = C::one();
    v
}

pub(crate) fn nonzeros(v: &[C]) -> impl Iterator<Item = (usize, &C)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

/// Raw structure data, as read from a model file or produced by a builder.
#[derive(Clone, Debug)]
pub struct ModelData {
    pub name: String,
    pub basis: Vec<String>,
    /// Cyclotomic order N of the scalar field Q(ζ_N).
    pub order: u32,
    pub unit: Vec<C>,
    /// d × d² matrix of the product.
    pub mult: Mat<C>,
    /// Matrix of the involution before coefficient conjugation: ā = invol · conj(a).
    pub invol: Mat<C>,
    /// d² × d matrix of the coproduct.
    pub coprod: Mat<C>,
    pub counit: Option<Vec<C>>,
    pub antipode: Option<Mat<C>>,
    /// Whether the model is expected to carry a positive Haar integral.
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct QGModel {
    data: ModelData,
    mult_table: Vec<Sparse>,
    coprod_table: Vec<Sparse>,
    invol_table: Vec<Sparse>,
}

impl QGModel {
    pub fn new(data: ModelData) -> Result<Self> {
        let d = data.basis.len();
        if d == 0 {
            return Err(Error::Format("model has dimension 0".into()));
        }
        let shape = |what: &str, m: &Mat<C>, r: usize, c: usize| -> Result<()> {
            if m.rows() != r || m.cols() != c {
                return Err(Error::Format(format!("{what} has shape {}x{}, expected {r}x{c}", m.rows(), m.cols())));
            }
            Ok(())
        };
        shape("mult", &data.mult, d, d * d)?;
        shape("invol", &data.invol, d, d)?;
        shape("coprod", &data.coprod, d * d, d)?;
        if let Some(s) = &data.antipode {
            shape("antipode", s, d, d)?;
        }
        if data.unit.len() != d {
            return Err(Error::Dimension { what: "unit".into(), expected: d, found: data.unit.len() });
        }
        if let Some(e) = &data.counit {
            if e.len() != d {
                return Err(Error::Dimension { what: "counit".into(), expected: d, found: e.len() });
            }
        }
        let mult_table = columns(&data.mult);
        let coprod_table = columns(&data.coprod);
        let invol_table = columns(&data.invol);
        Ok(QGModel { data, mult_table, coprod_table, invol_table })
    }

    pub fn data(&self) -> &ModelData {
        &self.data
    }

    pub fn into_data(self) -> ModelData {
        self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn dim(&self) -> usize {
        self.data.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.data.basis
    }

    pub fn order(&self) -> u32 {
        self.data.order
    }

    pub fn positive(&self) -> bool {
        self.data.positive
    }

    pub fn unit(&self) -> &[C] {
        &self.data.unit
    }

    pub fn mult(&self) -> LinMap<C> {
        let d = self.dim();
        LinMap::new(vec![d, d], vec![d], self.data.mult.clone()).expect("validated shape")
    }

    pub fn coprod(&self) -> LinMap<C> {
        let d = self.dim();
        LinMap::new(vec![d], vec![d, d], self.data.coprod.clone()).expect("validated shape")
    }

    pub fn invol_matrix(&self) -> &Mat<C> {
        &self.data.invol
    }

    pub fn supplied_counit(&self) -> Option<&[C]> {
        self.data.counit.as_deref()
    }

    pub fn supplied_antipode(&self) -> Option<&Mat<C>> {
        self.data.antipode.as_ref()
    }

    pub fn e(&self, i: usize) -> Vec<C> {
        basis_vec(self.dim(), i)
    }

    /// Structure constants of `e_i e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, C)] {
        &self.mult_table[i * self.dim() + j]
    }

    pub fn coprod_basis(&self, a: usize) -> &[(usize, C)] {
        &self.coprod_table[a]
    }

    pub fn mul(&self, a: &[C], b: &[C]) -> Vec<C> {
        let d = self.dim();
        let mut out = vec![C::zero(); d];
        for (i, x) in nonzeros(a) {
            for (j, y) in nonzeros(b) {
                let xy = x.mul_ref(y);
                for (k, c) in &self.mult_table[i * d + j] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    pub fn bar(&self, a: &[C]) -> Vec<C> {
        let mut out = vec![C::zero(); self.dim()];
        for (i, x) in nonzeros(a) {
            let xc = x.conj();
            for (k, c) in &self.invol_table[i] {
                out[*k].add_mul(&xc, c);
            }
        }
        out
    }

    pub fn coproduct(&self, a: &[C]) -> Vec<C> {
        let d = self.dim();
        let mut out = vec![C::zero(); d * d];
        for (i, x) in nonzeros(a) {
            for (k, c) in &self.coprod_table[i] {
                out[*k].add_mul(x, c);
            }
        }
        out
    }

    /// Product in A^{⊗k}.
    pub fn tensor_mul(&self, x: &[C], y: &[C], k: usize) -> Vec<C> {
        let d = self.dim();
        let dims = vec![d; k];
        let mut out = vec![C::zero(); d.pow(k as u32)];
        for (i, a) in nonzeros(x) {
            let mi = unflatten(i, &dims);
            for (j, b) in nonzeros(y) {
                let mj = unflatten(j, &dims);
                let mut terms = vec![(0usize, a.mul_ref(b))];
                for l in 0..k {
                    let table = &self.mult_table[mi[l] * d + mj[l]];
                    terms = terms.iter().flat_map(|(idx, c)| table.iter().map(move |(t, m)| (idx * d + t, c.mul_ref(m)))).collect();
                }
                for (idx, c) in terms {
                    out[idx] = out[idx].add_ref(&c);
                }
            }
        }
        out
    }

    /// The involution on A^{⊗k}, acting legwise.
    pub fn tensor_bar(&self, x: &[C], k: usize) -> Vec<C> {
        let conj: Vec<C> = x.iter().map(Cyclo::conj).collect();
        let invols = vec![&self.data.invol; k];
        tensor_apply(&invols, &conj)
    }

    /// The matrix of left multiplication by `a`.
    pub fn left_mult_matrix(&self, a: &[C]) -> Mat<C> {
        let d = self.dim();
        let cols: Vec<Vec<C>> = (0..d).map(|j| self.mul(a, &self.e(j))).collect();
        Mat::from_columns(d, &cols)
    }

    pub fn right_mult_matrix(&self, a: &[C]) -> Mat<C> {
        let d = self.dim();
        let cols: Vec<Vec<C>> = (0..d).map(|j| self.mul(&self.e(j), a)).collect();
        Mat::from_columns(d, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            let x = self.coproduct(&self.e(a));
            (0..d).all(|p| (0..d).all(|q| x[p * d + q] == x[q * d + p]))
        })
    }

    /// Renders an element of A^{⊗k} with basis labels.
    pub fn format_elem(&self, v: &[C], k: usize) -> String {
        let d = self.dim();
        let dims = vec![d; k];
        let mut s = String::new();
        for (i, x) in nonzeros(v) {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let label: Vec<&str> = unflatten(i, &dims).iter().map(|&b| self.data.basis[b].as_str()).collect();
            let _ = write!(s, "({x})·{}", label.join("⊗"));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Same structure with a replaced name.
    pub fn renamed(&self, name: &str) -> QGModel {
        let mut m = self.clone();
        m.data.name = name.to_string();
        m
    }
}

/// Applies per-leg maps to an element of a tensor product; `maps[l]` acts on leg `l`.
pub fn tensor_apply(maps: &[&Mat<C>], x: &[C]) -> Vec<C> {
    let cols: Vec<Vec<Sparse>> = maps.iter().map(|m| columns(m)).collect();
    let in_dims: Vec<usize> = maps.iter().map(|m| m.cols()).collect();
    let out_dims: Vec<usize> = maps.iter().map(|m| m.rows()).collect();
    let refs: Vec<&[Sparse]> = cols.iter().map(|c| c.as_slice()).collect();
    tensor_apply_cols(&refs, &in_dims, &out_dims, x)
}

/// [`tensor_apply`] with the sparse columns of each map precomputed.
pub fn tensor_apply_cols(cols: &[&[Sparse]], in_dims: &[usize], out_dims: &[usize], x: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); out_dims.iter().product()];
    for (i, a) in nonzeros(x) {
        let mi = unflatten(i, in_dims);
        let mut terms = vec![(0usize, a.clone())];
        for l in 0..cols.len() {
            let col = &cols[l][mi[l]];
            let dl = out_dims[l];
            terms = terms.iter().flat_map(|(idx, c)| col.iter().map(move |(t, m)| (idx * dl + t, c.mul_ref(m)))).collect();
        }
        for (idx, c) in terms {
            out[idx] = out[idx].add_ref(&c);
        }
    }
    out
}

/// The flip on A⊗A as an index permutation.
fn flip_index(d: usize) -> Vec<usize> {
    (0..d * d).map(|i| (i % d) * d + i / d).collect()
}

fn flip_rows(m: &Mat<C>, d: usize) -> Mat<C> {
    let id: Vec<usize> = (0..m.cols()).collect();
    m.permuted(&flip_index(d), &id)
}

fn flip_cols(m: &Mat<C>, d: usize) -> Mat<C> {
    let id: Vec<usize> = (0..m.rows()).collect();
    m.permuted(&id, &flip_index(d))
}

/// Conjugation `B ∘ M ∘ B` by the antilinear involution `B = bar ⊗ bar` of A⊗A,
/// whose matrix is `(I⊗I)·conj(M)·conj(I⊗I)` for `I` the involution matrix.
fn conj_by_involution(model: &QGModel, m: &Mat<C>) -> Mat<C> {
    let d = model.dim();
    let inv = model.invol_matrix();
    let inv_cols = columns(inv);
    let m_cols = columns(m);
    let mut out = Mat::zeros(d * d, d * d);
    for j in 0..d * d {
        let mut v = vec![C::zero(); d * d];
        for (p, a) in &inv_cols[j / d] {
            for (q, b) in &inv_cols[j % d] {
                let coef = a.mul_ref(b).conj();
                for (r, x) in &m_cols[p * d + q] {
                    v[*r].add_mul(&coef, &x.conj());
                }
            }
        }
        for (r, x) in tensor_apply(&[inv, inv], &v).into_iter().enumerate() {
            if !x.is_zero() {
                out[(r, j)] = x;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaloisKind {
    GammaL,
    GammaR,
    RhoL,
    RhoR,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisVariant {
    pub kind: GaloisKind,
    pub op: bool,
    pub cop: bool,
}

impl GaloisVariant {
    pub fn all() -> Vec<GaloisVariant> {
        let mut v = Vec::with_capacity(16);
        for kind in [GaloisKind::GammaL, GaloisKind::GammaR, GaloisKind::RhoL, GaloisKind::RhoR] {
            for (op, cop) in [(false, false), (true, false), (false, true), (true, true)] {
                v.push(GaloisVariant { kind, op, cop });
            }
        }
        v
    }

    pub fn name(&self) -> String {
        let base = match self.kind {
            GaloisKind::GammaL => "gamma_l",
            GaloisKind::GammaR => "gamma_r",
            GaloisKind::RhoL => "rho_l",
            GaloisKind::RhoR => "rho_r",
        };
        match (self.op, self.cop) {
            (false, false) => base.to_string(),
            (true, false) => format!("{base}^op"),
            (false, true) => format!("{base}^cop"),
            (true, true) => format!("{base}^op,cop"),
        }
    }
}

/// The two basic Galois maps `γ_l(a⊗b) = Δ(a)(b⊗1)` and `ρ_r(a⊗b) = (1⊗a)Δ(b)`;
/// the other fourteen are derived from them with flips and the involution.
#[derive(Clone, Debug)]
pub struct GaloisMaps {
    pub gamma_l: Mat<C>,
    pub rho_r: Mat<C>,
}

pub fn build_galois(model: &QGModel) -> GaloisMaps {
    let d = model.dim();
    let mut gamma_l: Mat<C> = Mat::zeros(d * d, d * d);
    let mut rho_r: Mat<C> = Mat::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let col = a * d + b;
            for (pq, c) in model.coprod_basis(a) {
                let (p, q) = (pq / d, pq % d);
                for (k, m) in model.mul_basis(p, b) {
                    gamma_l[(k * d + q, col)].add_mul(c, m);
                }
            }
            for (pq, c) in model.coprod_basis(b) {
                let (p, q) = (pq / d, pq % d);
                for (k, m) in model.mul_basis(a, q) {
                    rho_r[(p * d + k, col)].add_mul(c, m);
                }
            }
        }
    }
    GaloisMaps { gamma_l, rho_r }
}

impl GaloisMaps {
    pub fn gamma_r(&self, model: &QGModel) -> Mat<C> {
        flip_cols(&conj_by_involution(model, &self.rho_r), model.dim())
    }

    pub fn rho_l(&self, model: &QGModel) -> Mat<C> {
        flip_cols(&conj_by_involution(model, &self.gamma_l), model.dim())
    }

    /// γ_l, γ_r, ρ_l, ρ_r in [`GaloisKind`] order.
    pub fn basic(&self, model: &QGModel) -> [Mat<C>; 4] {
        [self.gamma_l.clone(), self.gamma_r(model), self.rho_l(model), self.rho_r.clone()]
    }

    pub fn variant(&self, model: &QGModel, v: GaloisVariant) -> Mat<C> {
        let base = match (v.op, v.cop, v.kind) {
            (false, false, GaloisKind::GammaL) => return self.gamma_l.clone(),
            (false, false, GaloisKind::RhoR) => return self.rho_r.clone(),
            _ => self.basic(model),
        };
        variant_from(&base, model.dim(), v)
    }
}

fn kind_index(k: GaloisKind) -> usize {
    match k {
        GaloisKind::GammaL => 0,
        GaloisKind::GammaR => 1,
        GaloisKind::RhoL => 2,
        GaloisKind::RhoR => 3,
    }
}

/// Builds a variant from the four basic maps using flips only.
pub fn variant_from(basic: &[Mat<C>; 4], d: usize, v: GaloisVariant) -> Mat<C> {
    use GaloisKind::*;
    let base = |k: GaloisKind| &basic[kind_index(k)];
    match (v.op, v.cop) {
        (false, false) => base(v.kind).clone(),
        // replacing m by m^op swaps which factor multiplies which
        (true, false) => {
            let partner = match v.kind {
                GammaL => RhoL,
                GammaR => RhoR,
                RhoL => GammaL,
                RhoR => GammaR,
            };
            flip_cols(base(partner), d)
        }
        (false, true) => {
            let partner = match v.kind {
                GammaL => GammaR,
                GammaR => GammaL,
                RhoL => RhoR,
                RhoR => RhoL,
            };
            flip_rows(base(partner), d)
        }
        (true, true) => {
            let partner = match v.kind {
                GammaL => RhoR,
                GammaR => RhoL,
                RhoL => GammaR,
                RhoR => GammaL,
            };
            flip_rows(&flip_cols(base(partner), d), d)
        }
    }
}

/// Counit, antipode and inverse antipode of a model with the cancellation property.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub counit: Vec<C>,
    pub antipode: Mat<C>,
    pub antipode_inv: Mat<C>,
}

impl HopfData {
    pub fn eps(&self, a: &[C]) -> C {
        a.iter().zip(&self.counit).fold(C::zero(), |mut acc, (x, e)| {
            acc.add_mul(x, e);
            acc
        })
    }

    pub fn s(&self, a: &[C]) -> Vec<C> {
        self.antipode.mul_vec(a)
    }

    pub fn s_inv(&self, a: &[C]) -> Vec<C> {
        self.antipode_inv.mul_vec(a)
    }
}

/// Solves the counit from `(ε⊗ι)Δ = ι = (ι⊗ε)Δ`; it must be unique.
pub fn solve_counit(model: &QGModel) -> Result<Vec<C>> {
    let d = model.dim();
    let mut a: Mat<C> = Mat::zeros(2 * d * d, d);
    let mut rhs = vec![C::zero(); 2 * d * d];
    for x in 0..d {
        for (pq, c) in model.coprod_basis(x) {
            let (p, q) = (pq / d, pq % d);
            // (ε⊗ι)Δ(e_x), coefficient of e_q
            a[(x * d + q, p)].add_mul(c, &C::one());
            // (ι⊗ε)Δ(e_x), coefficient of e_p
            a[(d * d + x * d + p, q)].add_mul(c, &C::one());
        }
        for y in 0..d {
            if x == y {
                rhs[x * d + y] = C::one();
                rhs[d * d + x * d + y] = C::one();
            }
        }
    }
    let sol = solve::solve(&a, &rhs, 0.0).map_err(|_| Error::NotQuantumGroup("counit axioms have no solution".into()))?;
    if !sol.kernel.is_empty() {
        return Err(Error::NotQuantumGroup(format!("counit is not unique ({}-dimensional ambiguity)", sol.kernel.len())));
    }
    Ok(sol.particular)
}

/// Solves `S` from `m(S⊗ι)γ_r = ε⊗ι`, i.e. `S(a) = (ε⊗ι)γ_r^{-1}(a⊗1)`.
pub fn solve_antipode(model: &QGModel, galois: &GaloisMaps, counit: &[C]) -> Result<Mat<C>> {
    let d = model.dim();
    let gamma_r = galois.gamma_r(model);
    let rank = solve::rank(&gamma_r, 0.0);
    if rank < d * d {
        return Err(Error::NotQuantumGroup(format!("gamma_r is singular (rank {rank} of {})", d * d)));
    }
    let unit = model.unit();
    let rhs = Mat::from_fn(d * d, d, |row, p| if row / d == p { unit[row % d].clone() } else { C::zero() });
    let x = solve::solve_many(&gamma_r, &rhs, 0.0)?;
    Ok(Mat::from_fn(d, d, |k, p| {
        let mut acc = C::zero();
        for a in 0..d {
            acc.add_mul(&counit[a], &x[(a * d + k, p)]);
        }
        acc
    }))
}

/// Solves both antipode axioms as one linear system in the d² entries of `S`
/// and returns the unique solution, or an error naming the failure.
pub fn solve_antipode_direct(model: &QGModel, galois: &GaloisMaps, counit: &[C]) -> Result<Mat<C>> {
    let d = model.dim();
    let gamma_r = galois.gamma_r(model);
    let rho_l = galois.rho_l(model);
    let n_eq = 2 * d * d * d;
    let mut a: Mat<C> = Mat::zeros(n_eq, d * d);
    let mut rhs = vec![C::zero(); n_eq];
    // unknown (k, p) is the coefficient of e_k in S(e_p)
    for x in 0..d {
        for y in 0..d {
            let col = x * d + y;
            // m(S⊗ι)γ_r(e_x⊗e_y) = ε(e_x) e_y
            for (pq, c) in gamma_r.column_nonzeros(col) {
                let (p, q) = (pq / d, pq % d);
                for k in 0..d {
                    for (t, m) in model.mul_basis(k, q) {
                        a[((x * d + y) * d + t, k * d + p)].add_mul(&c, m);
                    }
                }
            }
            rhs[(x * d + y) * d + y] = counit[x].clone();
            // m(ι⊗S)ρ_l(e_x⊗e_y) = ε(e_y) e_x
            let off = d * d * d;
            for (pq, c) in rho_l.column_nonzeros(col) {
                let (p, q) = (pq / d, pq % d);
                for k in 0..d {
                    for (t, m) in model.mul_basis(p, k) {
                        a[(off + (x * d + y) * d + t, k * d + q)].add_mul(&c, m);
                    }
                }
            }
            rhs[off + (x * d + y) * d + x] = counit[y].clone();
        }
    }
    let sol = solve::solve(&a, &rhs, 0.0).map_err(|_| Error::NotQuantumGroup("antipode axioms have no solution".into()))?;
    if !sol.kernel.is_empty() {
        return Err(Error::NotQuantumGroup(format!("antipode is not unique ({}-dimensional ambiguity)", sol.kernel.len())));
    }
    Ok(Mat::from_fn(d, d, |k, p| sol.particular[k * d + p].clone()))
}

/// Derives counit and antipode, requiring γ_l and ρ_r to be invertible.
pub fn derive_hopf(model: &QGModel, galois: &GaloisMaps) -> Result<HopfData> {
    let d = model.dim();
    for (name, m) in [("gamma_l", &galois.gamma_l), ("rho_r", &galois.rho_r)] {
        let r = solve::rank(m, 0.0);
        if r < d * d {
            return Err(Error::NotQuantumGroup(format!("{name} is singular (rank {r} of {})", d * d)));
        }
    }
    let counit = solve_counit(model)?;
    let antipode = solve_antipode(model, galois, &counit)?;
    let antipode_inv = solve::inverse(&antipode, 0.0).map_err(|_| Error::NotQuantumGroup("antipode is not invertible".into()))?;
    Ok(HopfData { counit, antipode, antipode_inv })
}

/// `m((L⊗R)x)` for `x` in A⊗A, with optional maps on each leg.
pub fn mult_after(model: &QGModel, x: &[C], left: Option<&Mat<C>>, right: Option<&Mat<C>>) -> Vec<C> {
    let d = model.dim();
    let id = Mat::identity(d);
    let y = tensor_apply(&[left.unwrap_or(&id), right.unwrap_or(&id)], x);
    let mut out = vec![C::zero(); d];
    for (i, c) in nonzeros(&y) {
        for (k, m) in model.mul_basis(i / d, i % d) {
            out[*k].add_mul(c, m);
        }
    }
    out
}

fn basis_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (0..d).map(move |j| (i, j)))
}

/// Exact comparison over all basis elements.
pub(crate) fn over_basis(d: usize, f: impl Fn(usize) -> Outcome) -> Outcome {
    let mut acc = Outcome::pass();
    for i in 0..d {
        acc = acc.merge(f(i));
        if !acc.passed {
            break;
        }
    }
    acc
}

pub(crate) fn over_pairs(d: usize, f: impl Fn(usize, usize) -> Outcome) -> Outcome {
    let mut acc = Outcome::pass();
    for (i, j) in basis_pairs(d) {
        acc = acc.merge(f(i, j));
        if !acc.passed {
            break;
        }
    }
    acc
}

/// Algebra, involution and coproduct axioms.
pub fn check_structure(model: &QGModel) -> Report {
    let d = model.dim();
    let lbl = |i: usize| model.basis()[i].clone();
    let mut r = Report::new(model.name());
    r.run("algebra.associative", "associativity", 0.0, || {
        let mut acc = Outcome::pass();
        'outer: for i in 0..d {
            for j in 0..d {
                let ij = model.mul(&model.e(i), &model.e(j));
                for k in 0..d {
                    let lhs = model.mul(&ij, &model.e(k));
                    let rhs = model.mul(&model.e(i), &model.mul(&model.e(j), &model.e(k)));
                    acc = acc.merge(compare_vecs(&lhs, &rhs, 0.0, || format!("({})({})({})", lbl(i), lbl(j), lbl(k))));
                    if !acc.passed {
                        break 'outer;
                    }
                }
            }
        }
        acc
    });
    r.run("algebra.unit", "unit", 0.0, || {
        over_basis(d, |i| {
            let e = model.e(i);
            compare_vecs(&model.mul(model.unit(), &e), &e, 0.0, || format!("1·{}", lbl(i)))
                .merge(compare_vecs(&model.mul(&e, model.unit()), &e, 0.0, || format!("{}·1", lbl(i))))
        })
    });
    r.run("involution.involutive", "involution", 0.0, || {
        over_basis(d, |i| compare_vecs(&model.bar(&model.bar(&model.e(i))), &model.e(i), 0.0, || lbl(i)))
    });
    r.run("involution.anti_multiplicative", "involution", 0.0, || {
        over_pairs(d, |i, j| {
            let lhs = model.bar(&model.mul(&model.e(i), &model.e(j)));
            let rhs = model.mul(&model.bar(&model.e(j)), &model.bar(&model.e(i)));
            compare_vecs(&lhs, &rhs, 0.0, || format!("({}, {})", lbl(i), lbl(j)))
        })
    });
    r.run("coproduct.multiplicative", "coproduct", 0.0, || {
        over_pairs(d, |i, j| {
            let lhs = model.coproduct(&model.mul(&model.e(i), &model.e(j)));
            let rhs = model.tensor_mul(&model.coproduct(&model.e(i)), &model.coproduct(&model.e(j)), 2);
            compare_vecs(&lhs, &rhs, 0.0, || format!("({}, {})", lbl(i), lbl(j)))
        })
    });
    r.run("coproduct.star", "coproduct", 0.0, || {
        over_basis(d, |i| {
            let lhs = model.coproduct(&model.bar(&model.e(i)));
            let rhs = model.tensor_bar(&model.coproduct(&model.e(i)), 2);
            compare_vecs(&lhs, &rhs, 0.0, || lbl(i))
        })
    });
    r.run("coproduct.unital", "coproduct", 0.0, || {
        let one = model.unit();
        let lhs = model.coproduct(one);
        let rhs = Mat::from_columns(d, &[one.to_vec()]).kron(&Mat::from_columns(d, &[one.to_vec()])).column(0);
        compare_vecs(&lhs, &rhs, 0.0, || "Δ(1)".into())
    });
    r.run("coproduct.coassociative", "coproduct", 0.0, || {
        let delta = model.data().coprod.clone();
        let id = Mat::identity(d);
        over_basis(d, |i| {
            let x = model.coproduct(&model.e(i));
            let lhs = tensor_apply(&[&id, &delta], &x);
            let rhs = tensor_apply(&[&delta, &id], &x);
            compare_vecs(&lhs, &rhs, 0.0, || lbl(i))
        })
    });
    r
}

fn kernel_witness(model: &QGModel, m: &Mat<C>) -> String {
    let ker = solve::kernel(m, 0.0);
    match ker.first() {
        Some(v) => format!("kernel dimension {}, e.g. {}", ker.len(), model.format_elem(v, 2)),
        None => "full rank".into(),
    }
}

/// Invertibility of γ_l, ρ_r and all sixteen variants, with determinants.
pub fn check_cancellation(model: &QGModel, galois: &GaloisMaps) -> Report {
    let d = model.dim();
    let mut r = Report::new(model.name());
    for (id, m) in [("galois.gamma_l.invertible", &galois.gamma_l), ("galois.rho_r.invertible", &galois.rho_r)] {
        r.run(id, "cancellation property", 0.0, || {
            let e = solve::rref(m, 0.0);
            if e.rank() == d * d {
                Outcome::pass_with(format!("det = {}", e.det.expect("square")))
            } else {
                Outcome::fail(kernel_witness(model, m))
            }
        });
    }
    r.run("galois.variants.invertible", "cancellation property", 0.0, || {
        let basic = galois.basic(model);
        let singular: Vec<String> = GaloisVariant::all()
            .into_iter()
            .filter(|v| solve::rank(&variant_from(&basic, d, *v), 0.0) < d * d)
            .map(|v| v.name())
            .collect();
        Outcome::from_bool(singular.is_empty(), || format!("singular: {}", singular.join(", ")))
    });
    r.run("galois.sweedler_legs", "Galois maps", 0.0, || {
        let gamma_r = galois.gamma_r(model);
        let id = Mat::identity(d);
        let right: Vec<Mat<C>> = (0..d).map(|b| model.right_mult_matrix(&model.e(b))).collect();
        over_pairs(d, |a, b| {
            let direct = tensor_apply(&[&id, &right[b]], &model.coproduct(&model.e(a)));
            compare_vecs(&gamma_r.column(a * d + b), &direct, 0.0, || format!("({}, {})", model.basis()[a], model.basis()[b]))
        })
    });
    r
}

/// Counit and antipode axioms plus their involution compatibilities.
pub fn check_counit_antipode(model: &QGModel, galois: &GaloisMaps, hopf: &HopfData) -> Report {
    let d = model.dim();
    let lbl = |i: usize| model.basis()[i].clone();
    let s = &hopf.antipode;
    let eps_row = Mat::from_rows(1, d, hopf.counit.clone());
    let id = Mat::identity(d);
    let mut r = Report::new(model.name());
    if let Some(e) = model.supplied_counit() {
        r.run("counit.supplied_matches", "counit uniqueness", 0.0, || compare_vecs(e, &hopf.counit, 0.0, || "supplied counit differs".into()));
    }
    if let Some(sup) = model.supplied_antipode() {
        r.run("antipode.supplied_matches", "antipode uniqueness", 0.0, || crate::report::compare_mats(sup, s, 0.0));
    }
    r.run("counit.axioms", "Hopf-type axioms", 0.0, || {
        over_basis(d, |a| {
            let x = model.coproduct(&model.e(a));
            compare_vecs(&tensor_apply(&[&eps_row, &id], &x), &model.e(a), 0.0, || format!("(ε⊗ι)Δ({})", lbl(a)))
                .merge(compare_vecs(&tensor_apply(&[&id, &eps_row], &x), &model.e(a), 0.0, || format!("(ι⊗ε)Δ({})", lbl(a))))
        })
    });
    r.run("counit.unital_multiplicative", "counit", 0.0, || {
        let unit = Outcome::from_bool(hopf.eps(model.unit()).is_one(), || "ε(1) ≠ 1".into());
        unit.merge(over_pairs(d, |i, j| {
            let lhs = hopf.eps(&model.mul(&model.e(i), &model.e(j)));
            let rhs = hopf.counit[i].mul_ref(&hopf.counit[j]);
            compare_vecs(&[lhs], &[rhs], 0.0, || format!("ε({}{})", lbl(i), lbl(j)))
        }))
    });
    r.run("antipode.axioms", "Hopf-type axioms", 0.0, || {
        over_pairs(d, |a, b| {
            let (ea, eb) = (model.e(a), model.e(b));
            let left = model.tensor_mul(&model.coproduct(&ea), &Mat::from_columns(d, &[model.unit().to_vec()]).kron(&Mat::from_columns(d, &[eb.clone()])).column(0), 2);
            let lhs = mult_after(model, &left, Some(s), None);
            let rhs: Vec<C> = eb.iter().map(|x| x.mul_ref(&hopf.counit[a])).collect();
            let o1 = compare_vecs(&lhs, &rhs, 0.0, || format!("m(S⊗ι)(Δ({})(1⊗{}))", lbl(a), lbl(b)));
            let right = model.tensor_mul(&Mat::from_columns(d, &[ea.clone()]).kron(&Mat::from_columns(d, &[model.unit().to_vec()])).column(0), &model.coproduct(&eb), 2);
            let lhs = mult_after(model, &right, None, Some(s));
            let rhs: Vec<C> = ea.iter().map(|x| x.mul_ref(&hopf.counit[b])).collect();
            o1.merge(compare_vecs(&lhs, &rhs, 0.0, || format!("m(ι⊗S)(({}⊗1)Δ({}))", lbl(a), lbl(b))))
        })
    });
    r.run("antipode.unique", "antipode uniqueness", 0.0, || {
        if d > DIRECT_ANTIPODE_MAX_DIM {
            return Outcome::pass_with(format!("unique since gamma_r is invertible; direct system skipped for dim {d} > {DIRECT_ANTIPODE_MAX_DIM}"));
        }
        match solve_antipode_direct(model, galois, &hopf.counit) {
            Ok(direct) => crate::report::compare_mats(&direct, s, 0.0),
            Err(e) => Outcome::fail(e.to_string()),
        }
    });
    r.run("involution.counit", "involution compatibility", 0.0, || {
        over_basis(d, |a| {
            let lhs = hopf.eps(&model.bar(&model.e(a)));
            compare_vecs(&[lhs], &[hopf.counit[a].conj()], 0.0, || lbl(a))
        })
    });
    r.run("involution.antipode", "involution compatibility", 0.0, || {
        over_basis(d, |a| {
            let lhs = hopf.s(&model.bar(&model.e(a)));
            let rhs = model.bar(&hopf.s_inv(&model.e(a)));
            compare_vecs(&lhs, &rhs, 0.0, || lbl(a))
        })
    });
    r.run("antipode.anti_multiplicative", "antipode", 0.0, || {
        let unit = compare_vecs(&hopf.s(model.unit()), model.unit(), 0.0, || "S(1) ≠ 1".into());
        unit.merge(over_pairs(d, |i, j| {
            let lhs = hopf.s(&model.mul(&model.e(i), &model.e(j)));
            let rhs = model.mul(&hopf.s(&model.e(j)), &hopf.s(&model.e(i)));
            compare_vecs(&lhs, &rhs, 0.0, || format!("S({}{})", lbl(i), lbl(j)))
        }))
    });
    r.run("antipode.anti_comultiplicative", "antipode", 0.0, || {
        let flip_idx = flip_index(d);
        over_basis(d, |a| {
            let lhs = model.coproduct(&hopf.s(&model.e(a)));
            let delta = model.coproduct(&model.e(a));
            let flipped: Vec<C> = (0..d * d).map(|i| delta[flip_idx[i]].clone()).collect();
            let rhs = tensor_apply(&[s, s], &flipped);
            compare_vecs(&lhs, &rhs, 0.0, || lbl(a))
        })
    });
    r
}

/// Checks that `pi` (matrix in the two bases) is a unital *-homomorphism
/// intertwining coproducts, antipodes and counits.
pub fn check_morphism(src: &QGModel, src_h: &HopfData, tgt: &QGModel, tgt_h: &HopfData, pi: &Mat<C>, prefix: &str, anchor: &str) -> Report {
    let (d, e) = (src.dim(), tgt.dim());
    let mut r = Report::new(format!("{} -> {}", src.name(), tgt.name()));
    if pi.rows() != e || pi.cols() != d {
        r.run(&format!("{prefix}.shape"), anchor, 0.0, || Outcome::fail(format!("matrix is {}x{}, expected {e}x{d}", pi.rows(), pi.cols())));
        return r;
    }
    let lbl = |i: usize| src.basis()[i].clone();
    let p = |v: &[C]| pi.mul_vec(v);
    r.run(&format!("{prefix}.unital"), anchor, 0.0, || compare_vecs(&p(src.unit()), tgt.unit(), 0.0, || "π(1) ≠ 1".into()));
    r.run(&format!("{prefix}.multiplicative"), anchor, 0.0, || {
        over_pairs(d, |i, j| {
            let lhs = p(&src.mul(&src.e(i), &src.e(j)));
            let rhs = tgt.mul(&p(&src.e(i)), &p(&src.e(j)));
            compare_vecs(&lhs, &rhs, 0.0, || format!("({}, {})", lbl(i), lbl(j)))
        })
    });
    r.run(&format!("{prefix}.star"), anchor, 0.0, || {
        over_basis(d, |i| compare_vecs(&p(&src.bar(&src.e(i))), &tgt.bar(&p(&src.e(i))), 0.0, || lbl(i)))
    });
    r.run(&format!("{prefix}.coproduct"), anchor, 0.0, || {
        over_basis(d, |i| {
            let lhs = tgt.coproduct(&p(&src.e(i)));
            let rhs = tensor_apply(&[pi, pi], &src.coproduct(&src.e(i)));
            compare_vecs(&lhs, &rhs, 0.0, || lbl(i))
        })
    });
    r.run(&format!("{prefix}.antipode"), anchor, 0.0, || {
        over_basis(d, |i| compare_vecs(&tgt_h.s(&p(&src.e(i))), &p(&src_h.s(&src.e(i))), 0.0, || lbl(i)))
    });
    r.run(&format!("{prefix}.counit"), anchor, 0.0, || {
        over_basis(d, |i| compare_vecs(&[tgt_h.eps(&p(&src.e(i)))], &[src_h.counit[i].clone()], 0.0, || lbl(i)))
    });
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The one-dimensional model C with everything equal to 1.
    pub(crate) fn trivial() -> QGModel {
        let one = Mat::from_rows(1, 1, vec![C::one()]);
        QGModel::new(ModelData {
            name: "trivial".into(),
            basis: vec!["1".into()],
            order: 1,
            unit: vec![C::one()],
            mult: one.clone(),
            invol: one.clone(),
            coprod: one,
            counit: None,
            antipode: None,
            positive: true,
        })
        .unwrap()
    }

    #[test]
    fn trivial_model_is_a_hopf_algebra() {
        let m = trivial();
        let g = build_galois(&m);
        for v in GaloisVariant::all() {
            assert_eq!(g.variant(&m, v), Mat::identity(1), "{}", v.name());
        }
        let h = derive_hopf(&m, &g).unwrap();
        assert_eq!(h.antipode, Mat::identity(1));
        assert_eq!(h.counit, vec![C::one()]);
        let mut r = check_structure(&m);
        r.extend(check_cancellation(&m, &g));
        r.extend(check_counit_antipode(&m, &g, &h));
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn variant_names_are_distinct() {
        let names: std::collections::HashSet<String> = GaloisVariant::all().iter().map(|v| v.name()).collect();
        assert_eq!(names.len(), 16);
    }
}
