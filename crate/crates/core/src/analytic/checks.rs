use nalgebra::SVD;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::integrals::QuantumGroup;
use crate::report::{Outcome, Report};

const Z_GRID: [(f64, f64); 3] = [(0.5, 0.0), (0.0, 1.0), (1.0, 1.0)];
const T_GRID: [f64; 3] = [-1.0, 0.35, 2.0];
/// Full pentagon on L²^{⊗3} up to this dimension, random vectors above it.
const PENTAGON_CAP: usize = 1000;
const PENTAGON_SAMPLES: usize = 20;

fn scale_of(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm()).fold(1.0, f64::max)
}

/// Max-norm distance relative to the operands.
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max) / scale_of(a).max(scale_of(b))
}

fn vrel(a: &CVec, b: &CVec) -> f64 {
    let s = a.iter().chain(b.iter()).map(|x| x.norm()).fold(1.0, f64::max);
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max) / s
}

fn close(a: &CMat, b: &CMat, tol: f64, witness: impl FnOnce() -> String) -> Outcome {
    let r = rel_diff(a, b);
    Outcome::within(r, tol, if r <= tol { None } else { Some(witness()) })
}

fn vclose(a: &CVec, b: &CVec, tol: f64, witness: impl FnOnce() -> String) -> Outcome {
    let r = vrel(a, b);
    Outcome::within(r, tol, if r <= tol { None } else { Some(witness()) })
}

fn zstr(z: Complex64) -> String {
    format!("z = {}{:+}i", z.re, z.im)
}

fn basis(d: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(d);
    v[i] = c64(1.0, 0.0);
    v
}

fn vectorize(m: &CMat) -> CVec {
    CVec::from_iterator(m.len(), m.iter().copied())
}

/// Numerical rank of a family of equally sized matrices, from the
/// eigenvalues of their Frobenius Gram matrix.
pub fn span_rank(mats: &[CMat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let cols: Vec<CVec> = mats.iter().map(vectorize).collect();
    let b = CMat::from_columns(&cols);
    let g = b.adjoint() * &b;
    let ev = ((&g + g.adjoint()) * c64(0.5, 0.0)).symmetric_eigenvalues();
    let top = ev.iter().copied().fold(0.0, f64::max);
    ev.iter().filter(|&&l| l > 1e-10 * top.max(1.0)).count()
}

/// Least-squares projection onto the span of a family of matrices.
pub struct SpanProjector {
    svd: SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    basis: CMat,
}

impl SpanProjector {
    pub fn new(mats: &[CMat]) -> Self {
        let cols: Vec<CVec> = mats.iter().map(vectorize).collect();
        let basis = CMat::from_columns(&cols);
        SpanProjector { svd: basis.clone().svd(true, true), basis }
    }

    /// Coefficients of the best approximation and the relative residual.
    pub fn project(&self, x: &CMat) -> (CVec, f64) {
        let v = vectorize(x);
        let c = self.svd.solve(&v, 1e-13).expect("svd has both factors");
        let back = &self.basis * &c;
        (c, vrel(&back, &v))
    }
}

/// Applies a two-leg operator to legs `(i, j)` of a vector in (ℂ^d)^{⊗3}.
fn apply_on_pair(w: &CMat, d: usize, legs: (usize, usize), v: &CVec) -> CVec {
    let mut out = CVec::zeros(v.len());
    for idx in 0..v.len() {
        let c = v[idx];
        if c.norm() == 0.0 {
            continue;
        }
        let x = [idx / (d * d), (idx / d) % d, idx % d];
        let col = x[legs.0] * d + x[legs.1];
        for row in 0..d * d {
            let y = w[(row, col)];
            if y.norm() == 0.0 {
                continue;
            }
            let mut z = x;
            z[legs.0] = row / d;
            z[legs.1] = row % d;
            out[(z[0] * d + z[1]) * d + z[2]] += c * y;
        }
    }
    out
}

/// `(ι⊗ω_{ξ,η})(X)` with `ω_{ξ,η}(y) = ⟨ξ, yη⟩`.
fn slice_right(x: &CMat, d: usize, xi: &CVec, eta: &CVec) -> CMat {
    CMat::from_fn(d, d, |p, q| {
        let mut s = c64(0.0, 0.0);
        for k in 0..d {
            for l in 0..d {
                s += xi[k].conj() * x[(p * d + k, q * d + l)] * eta[l];
            }
        }
        s
    })
}

/// `(ω_{ξ,η}⊗ι)(X)`
fn slice_left(x: &CMat, d: usize, xi: &CVec, eta: &CVec) -> CMat {
    CMat::from_fn(d, d, |p, q| {
        let mut s = c64(0.0, 0.0);
        for k in 0..d {
            for l in 0..d {
                s += xi[k].conj() * x[(k * d + p, l * d + q)] * eta[l];
            }
        }
        s
    })
}

fn coproduct_op(gns: &GnsRealization, x: &CMat) -> CMat {
    let id = CMat::identity(gns.dim, gns.dim);
    gns.w.adjoint() * id.kronecker(x) * &gns.w
}

/// `(m⊗m)(Δf)`
fn mm_coproduct(qg: &QuantumGroup, gns: &GnsRealization, f: &[C]) -> CMat {
    let d = gns.dim;
    let cop = qg.model.coproduct(f);
    let mut out = CMat::zeros(d * d, d * d);
    for (pq, c) in cop.iter().enumerate() {
        if !c.is_zero() {
            out += gns.m_rep[pq / d].kronecker(&gns.m_rep[pq % d]) * c.to_c64();
        }
    }
    out
}

fn lbl(qg: &QuantumGroup, i: usize) -> &str {
    &qg.model.basis()[i]
}

/// Skips every analytic check with the refusal reason.
pub fn refused_report(qg: &QuantumGroup, reason: &str) -> Report {
    let mut r = Report::new(qg.model.name());
    r.skip("analytic", "L²(G) realization", reason);
    r
}

/// GNS identities, W and the identification of the dual's regular representation.
pub fn check_gns(qg: &QuantumGroup, dual: &Dual, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let e = |i: usize| basis(d, i);

    r.run("gns.frame", "Q*GQ = I", TOL, || close(&(gns.frame.adjoint() * &gns.gram * &gns.frame), &CMat::identity(d, d), TOL, || "frame".into()));
    r.run("gns.inner_product", "⟨Λ(f), Λ(g)⟩ = φ(f̄g)", TOL, || {
        Outcome::all((0..d).flat_map(|a| (0..d).map(move |b| (a, b))).map(|(a, b)| {
            let lhs = gns.lam(&e(a)).dotc(&gns.lam(&e(b)));
            let rhs = qg.phi(&qg.mul(&qg.bar(&qg.e(a)), &qg.e(b))).to_c64();
            let res = (lhs - rhs).norm();
            Outcome::within(res, TOL, Some(format!("({}, {})", lbl(qg, a), lbl(qg, b))))
        }))
    });
    r.run("gns.m_representation", "m(fg) = m(f)m(g), m(f̄) = m(f)*", TOL, || {
        let mut out = Outcome::pass();
        for a in 0..d {
            let bar = to_cv(&qg.bar(&qg.e(a)));
            out = out.merge(close(&gns.m(&bar), &gns.m_rep[a].adjoint(), TOL, || format!("m({})*", lbl(qg, a))));
            for b in 0..d {
                let ab = to_cv(&qg.mul(&qg.e(a), &qg.e(b)));
                out = out.merge(close(&gns.m(&ab), &(&gns.m_rep[a] * &gns.m_rep[b]), TOL, || format!("({}, {})", lbl(qg, a), lbl(qg, b))));
            }
        }
        out
    });
    r.run("gns.m_faithful", "m injective", 0.0, || {
        let k = span_rank(&gns.m_rep);
        Outcome::from_bool(k == d, || format!("rank {k} < {d}"))
    });
    r.run("gns.lambda_representation", "λ(f*g) = λ(f)λ(g), λ(f^*) = λ(f)*", TOL, || {
        let mut out = Outcome::pass();
        for a in 0..d {
            let adj = to_cv(&dual.conv_adj(&qg.e(a)));
            out = out.merge(close(&gns.lambda(&adj), &gns.lambda_rep[a].adjoint(), TOL, || format!("λ({})*", lbl(qg, a))));
            for b in 0..d {
                let ab = to_cv(&dual.conv(&qg.e(a), &qg.e(b)));
                out = out.merge(close(&gns.lambda(&ab), &(&gns.lambda_rep[a] * &gns.lambda_rep[b]), TOL, || format!("({}, {})", lbl(qg, a), lbl(qg, b))));
            }
        }
        out
    });
    r.run("gns.w_unitary", "W*W = WW* = 1", TOL, || {
        let id = CMat::identity(d * d, d * d);
        close(&(gns.w.adjoint() * &gns.w), &id, TOL, || "W*W".into()).merge(close(&(&gns.w * gns.w.adjoint()), &id, TOL, || "WW*".into()))
    });
    r.run("gns.w_defining", "W(Λ⊗Λ)(Δ(g)(f⊗1)) = Λ(f)⊗Λ(g)", TOL, || {
        let mut out = Outcome::pass();
        for f in 0..d {
            for g in 0..d {
                let x = qg.model.tensor_mul(&qg.model.coproduct(&qg.e(g)), &tensor(&qg.e(f), unit_exact(qg)), 2);
                let lhs = &gns.w * (gns.coord.kronecker(&gns.coord) * to_cv(&x));
                let rhs = gns.lam(&e(f)).kronecker(&gns.lam(&e(g)));
                out = out.merge(vclose(&lhs, &rhs, TOL, || format!("(f, g) = ({}, {})", lbl(qg, f), lbl(qg, g))));
            }
        }
        out
    });
    r.run("gns.w_element", "W = (m⊗λ)(𝒲)", TOL, || {
        // 𝒲 is unique because m⊗λ is injective; recover it by least squares
        let family: Vec<CMat> = (0..d * d).map(|ij| gns.m_rep[ij / d].kronecker(&gns.lambda_rep[ij % d])).collect();
        let (_, res) = SpanProjector::new(&family).project(&gns.w);
        Outcome::within(res, TOL, Some("W outside (m⊗λ)(A⊗D)".into()))
    });
    r.run("gns.pentagon", "W₁₂W₁₃W₂₃ = W₂₃W₁₂ on L²⊗L²⊗L²", TOL, || {
        let n = d * d * d;
        let vectors: Vec<CVec> = if n <= PENTAGON_CAP {
            (0..n).map(|i| basis(n, i)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..PENTAGON_SAMPLES).map(|_| CVec::from_fn(n, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect()
        };
        Outcome::all(vectors.iter().enumerate().map(|(k, v)| {
            let lhs = apply_on_pair(&gns.w, d, (0, 1), &apply_on_pair(&gns.w, d, (0, 2), &apply_on_pair(&gns.w, d, (1, 2), v)));
            let rhs = apply_on_pair(&gns.w, d, (1, 2), &apply_on_pair(&gns.w, d, (0, 1), v));
            vclose(&lhs, &rhs, TOL, || format!("vector {k}"))
        }))
    });
    r.run("gns.fourier_isometry", "⟨Λ̂(F f), Λ̂(F g)⟩ = ⟨Λ(f), Λ(g)⟩", 0.0, || {
        let g_hat = crate::integrals::gram(&dual.model, &dual.phi_hat);
        let g = crate::integrals::gram(&qg.model, &qg.haar.phi);
        let (res, at) = g_hat.max_diff(&g);
        Outcome::within(res, 0.0, at.map(|(a, b)| format!("({}, {})", lbl(qg, a), lbl(qg, b))))
    });
    r.run("gns.dual_regular", "λ(f) = F m̂(f) F*", TOL, || {
        let g_hat = crate::integrals::gram(&dual.model, &dual.phi_hat);
        match super::sqrt_pd("φ̂", &g_hat) {
            Err(err) => Outcome::fail(err.to_string()),
            Ok((root, inv)) => Outcome::all((0..d).map(|i| {
                let m_hat = &root * to_cm(&dual.model.left_mult_matrix(&qg.e(i))) * &inv;
                close(&m_hat, &gns.lambda_rep[i], TOL, || lbl(qg, i).to_string())
            })),
        }
    });
    r
}

/// The slice formulas and the span equalities for both regular representations.
pub fn check_regular_reps(qg: &QuantumGroup, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let e = |i: usize| basis(d, i);

    r.run("slices.left", "(ι⊗ω_{Λf,Λg})(W)Λ(h) = Λ((ι⊗φ)(Δ(f̄)(1⊗g))h)", TOL, || {
        let mut out = Outcome::pass();
        for f in 0..d {
            let cop = qg.model.coproduct(&qg.bar(&qg.e(f)));
            for g in 0..d {
                let prod = qg.model.tensor_mul(&cop, &tensor(unit_exact(qg), &qg.e(g)), 2);
                let y: Vec<C> = (0..d).map(|p| (0..d).fold(C::zero(), |acc, q| acc.add_ref(&prod[p * d + q].mul_ref(&qg.phi(&qg.e(q)))))).collect();
                let lhs = slice_right(&gns.w, d, &gns.lam(&e(f)), &gns.lam(&e(g)));
                out = out.merge(close(&lhs, &gns.m(&to_cv(&y)), TOL, || format!("(f, g) = ({}, {})", lbl(qg, f), lbl(qg, g))));
            }
        }
        out
    });
    r.run("slices.right", "(ω_{Λf,Λg}⊗ι)(W) = λ(gσ(f̄))", TOL, || {
        let mut out = Outcome::pass();
        for f in 0..d {
            let sf = qg.sigma(&qg.bar(&qg.e(f)));
            for g in 0..d {
                let y = qg.mul(&qg.e(g), &sf);
                let lhs = slice_left(&gns.w, d, &gns.lam(&e(f)), &gns.lam(&e(g)));
                out = out.merge(close(&lhs, &gns.lambda(&to_cv(&y)), TOL, || format!("(f, g) = ({}, {})", lbl(qg, f), lbl(qg, g))));
            }
        }
        out
    });
    let spans = |slicer: fn(&CMat, usize, &CVec, &CVec) -> CMat, target: &[CMat]| -> Outcome {
        let mut slices = Vec::with_capacity(d * d);
        for f in 0..d {
            for g in 0..d {
                slices.push(slicer(&gns.w, d, &e(f), &e(g)));
            }
        }
        let k = span_rank(&slices);
        let t = span_rank(target);
        let mut all = slices;
        all.extend(target.iter().cloned());
        let u = span_rank(&all);
        Outcome::from_bool(k == t && u == t, || format!("ranks: slices {k}, target {t}, union {u}"))
    };
    r.run("slices.left_span", "span (ι⊗ω)(W) = m(A)", 0.0, || spans(slice_right, &gns.m_rep));
    r.run("slices.right_span", "span (ω⊗ι)(W) = λ(D)", 0.0, || spans(slice_left, &gns.lambda_rep));
    r
}

fn unit_exact(qg: &QuantumGroup) -> &[C] {
    qg.model.unit()
}

fn tensor(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul_ref(y));
        }
    }
    out
}

/// `Δ(x) = W*(1⊗x)W` on m(A), and the density statements as span equalities.
pub fn check_coproduct_implementation(qg: &QuantumGroup, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let deltas: Vec<CMat> = gns.m_rep.iter().map(|x| coproduct_op(gns, x)).collect();
    r.run("coproduct.implemented", "W*(1⊗m(f))W = (m⊗m)Δ(f)", TOL, || {
        Outcome::all((0..d).map(|f| close(&deltas[f], &mm_coproduct(qg, gns, &qg.e(f)), TOL, || lbl(qg, f).to_string())))
    });
    let id = CMat::identity(d, d);
    let target: Vec<CMat> = (0..d * d).map(|pq| gns.m_rep[pq / d].kronecker(&gns.m_rep[pq % d])).collect();
    let density = |right: bool| -> Outcome {
        let mut family = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let leg = if right { id.kronecker(&gns.m_rep[b]) } else { gns.m_rep[b].kronecker(&id) };
                family.push(&deltas[a] * leg);
            }
        }
        let k = span_rank(&family);
        let t = span_rank(&target);
        family.extend(target.iter().cloned());
        let u = span_rank(&family);
        Outcome::from_bool(k == d * d && t == d * d && u == d * d, || format!("ranks: products {k}, m(A)⊗m(A) {t}, union {u}"))
    };
    r.run("coproduct.density_left", "span Δ(m(A))(m(A)⊗1) = m(A)⊗m(A)", 0.0, || density(false));
    r.run("coproduct.density_right", "span Δ(m(A))(1⊗m(A)) = m(A)⊗m(A)", 0.0, || density(true));
    r
}

fn positives(gns: &GnsRealization) -> [&PositiveMatrix; 8] {
    let o = &gns.ops;
    [&o.delta, &o.delta_prime, &o.delta_hat, &o.delta_hat_prime, &o.nabla, &o.nabla_hat, &o.n, &o.m]
}

/// The defining properties of the modular operators and of T, J, K, L.
pub fn check_modular_operators(qg: &QuantumGroup, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let o = &gns.ops;
    let id = CMat::identity(d, d);
    let lam = |f: &[C]| gns.lam_exact(f);

    r.run("ops.positive", "spectra of δ, δ', δ̂, δ̂', ∇, ∇̂, N, M are positive", SPECTRAL_TOL, || {
        Outcome::all(positives(gns).into_iter().map(|p| {
            let min = p.spectrum().iter().copied().fold(f64::INFINITY, f64::min);
            Outcome::from_bool(min > SPECTRAL_TOL, || format!("{} has eigenvalue {min:.3e}", p.name))
        }))
    });
    r.run("ops.functional_calculus", "A^1 = A, A^0 = 1, A^{it} unitary", SPECTRAL_TOL, || {
        Outcome::all(positives(gns).into_iter().map(|p| {
            let u = p.unitary(0.7);
            close(&p.power_real(1.0), &p.matrix, SPECTRAL_TOL, || format!("{}^1", p.name))
                .merge(close(&p.power_real(0.0), &id, SPECTRAL_TOL, || format!("{}^0", p.name)))
                .merge(close(&(u.adjoint() * &u), &id, SPECTRAL_TOL, || format!("{}^{{it}}", p.name)))
        }))
    });
    r.run("ops.t_defining", "TΛ(f) = Λ(f̄), T*Λ(f) = Λ(σ(f̄))", TOL, || {
        let ts = o.t.adjoint();
        Outcome::all((0..d).map(|f| {
            let bar = qg.bar(&qg.e(f));
            vclose(&o.t.apply(&lam(&qg.e(f))), &lam(&bar), TOL, || format!("T at {}", lbl(qg, f)))
                .merge(vclose(&ts.apply(&lam(&qg.e(f))), &lam(&qg.sigma(&bar)), TOL, || format!("T* at {}", lbl(qg, f))))
        }))
    });
    r.run("ops.nabla_polar", "∇ = T*T", TOL, || close(&o.t.adjoint().after(&o.t), &o.nabla.matrix, TOL, || "T*T".into()));
    r.run("ops.j_antiunitary", "J antiunitary, J² = 1", TOL, || {
        close(&(o.j.0.adjoint() * &o.j.0), &id, TOL, || "J*J".into()).merge(close(&o.j.after(&o.j), &id, TOL, || "J²".into()))
    });
    r.run("ops.polar_decomposition", "T = J∇^{1/2} = ∇^{-1/2}J", TOL, || {
        let half = o.nabla.power_real(0.5);
        let lhs = &o.j.0 * half.conjugate();
        let rhs = o.nabla.power_real(-0.5) * &o.j.0;
        close(&lhs, &o.t.0, TOL, || "J∇^{1/2}".into()).merge(close(&rhs, &o.t.0, TOL, || "∇^{-1/2}J".into()))
    });
    r.run("ops.delta_prime", "δ' = JδJ", TOL, || close(&o.j.conjugate_op(&o.delta.matrix), &o.delta_prime.matrix, TOL, || "JδJ".into()));
    r.run("ops.delta_factorization", "δ = L*L", TOL, || close(&(o.l.adjoint() * &o.l), &o.delta.matrix, TOL, || "L*L".into()));
    r.run("ops.k_adjoint", "K*Λ'(f) = Λ(conj(S(f)))", TOL, || {
        let psi_gram = crate::integrals::gram(&qg.model, &qg.haar.psi);
        let Ok((coord_psi, _)) = super::sqrt_pd("ψ", &psi_gram) else { return Outcome::fail("ψ Gram not positive") };
        let ks = o.k.adjoint();
        Outcome::all((0..d).map(|f| {
            let lhs = ks.apply(&(&coord_psi * to_cv(&qg.e(f))));
            vclose(&lhs, &lam(&qg.bar(&qg.s(&qg.e(f)))), TOL, || lbl(qg, f).to_string())
        }))
    });
    r.run("ops.n_factorization", "N = K*K", TOL, || close(&o.k.adjoint().after(&o.k), &o.n.matrix, TOL, || "K*K".into()));
    r.run("ops.nabla_hat", "∇̂ = δ'^{-1}N", TOL, || close(&(o.delta_prime.power_real(-1.0) * &o.n.matrix), &o.nabla_hat.matrix, TOL, || "δ'^{-1}N".into()));
    r.run("ops.m_product", "M = δ'N = Nδ'", TOL, || close(&(&o.n.matrix * &o.delta_prime.matrix), &o.m.matrix, TOL, || "Nδ'".into()));
    let unmet = (!qg.is_kac()).then(|| "the model is not of Kac type".to_string());
    r.run_assuming("ops.kac_identity", "δ = ∇ = ∇̂ = N = M = 1 for Kac models", TOL, unmet, || {
        Outcome::all(positives(gns).into_iter().map(|p| close(&p.matrix, &id, TOL, || p.name.to_string())))
    });
    r
}

fn strongly_commute(a: &PositiveMatrix, b: &PositiveMatrix) -> Outcome {
    let comm = rel_diff(&(&a.matrix * &b.matrix), &(&b.matrix * &a.matrix));
    let mut res = comm;
    for p in a.projections() {
        res = res.max(rel_diff(&(&p * &b.matrix), &(&b.matrix * &p)));
        for q in b.projections() {
            res = res.max(rel_diff(&(&p * &q), &(&q * &p)));
        }
    }
    Outcome::within(res, SPECTRAL_TOL, Some(format!("({}, {})", a.name, b.name)))
}

/// W-intertwining of δ and N, and strong commutation of the modular operators.
pub fn check_commutation_relations(qg: &QuantumGroup, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let o = &gns.ops;
    let id = CMat::identity(d, d);
    let w = &gns.w;

    r.run("comm.delta_w", "(1⊗δ)W = W(δ⊗δ)", TOL, || {
        close(&(id.kronecker(&o.delta.matrix) * w), &(w * o.delta.matrix.kronecker(&o.delta.matrix)), TOL, || "(1⊗δ)W".into())
    });
    r.run("comm.delta_group_like", "W*(1⊗δ^{it})W = δ^{it}⊗δ^{it}", TOL, || {
        Outcome::all(T_GRID.iter().map(|&t| {
            let u = o.delta.unitary(t);
            close(&coproduct_op(gns, &u), &u.kronecker(&u), TOL, || format!("t = {t}"))
        }))
    });
    r.run("comm.delta_affiliated", "δ^{it} m(A) δ^{-it} ⊂ m(A)", MULTIPLIER_TOL, || {
        let proj = SpanProjector::new(&gns.m_rep);
        Outcome::all(T_GRID.iter().flat_map(|&t| {
            let u = o.delta.unitary(t);
            let proj = &proj;
            (0..d).map(move |i| {
                let (_, res) = proj.project(&(&u * &gns.m_rep[i] * u.adjoint()));
                Outcome::within(res, MULTIPLIER_TOL, Some(format!("t = {t}, {}", lbl(qg, i))))
            })
        }))
    });
    r.run("comm.n_w", "(N⊗N)W = W(N⊗N)", TOL, || {
        let nn = o.n.matrix.kronecker(&o.n.matrix);
        close(&(&nn * w), &(w * &nn), TOL, || "(N⊗N)W".into())
    });
    let quotient = |a: &PositiveMatrix, b: &PositiveMatrix, name: &'static str| PositiveMatrix::new(name, &a.matrix * b.power_real(-1.0));
    let pairs: [(&PositiveMatrix, &PositiveMatrix); 5] = [(&o.delta, &o.n), (&o.delta_hat, &o.n), (&o.delta_prime, &o.n), (&o.delta_hat_prime, &o.n), (&o.delta, &o.delta_prime)];
    r.run("comm.strong", "δ, δ̂, δ', δ̂' strongly commute with N; δ with δ'", SPECTRAL_TOL, || Outcome::all(pairs.iter().map(|(a, b)| strongly_commute(a, b))));
    r.run("comm.strong_quotients", "δδ'^{-1} strongly commutes with δ̂δ̂'^{-1}", SPECTRAL_TOL, || {
        match (quotient(&o.delta, &o.delta_prime, "δδ'^{-1}"), quotient(&o.delta_hat, &o.delta_hat_prime, "δ̂δ̂'^{-1}")) {
            (Ok(a), Ok(b)) => strongly_commute(&a, &b),
            (Err(e), _) | (_, Err(e)) => Outcome::fail(e.to_string()),
        }
    });
    r
}

/// Complex powers of δ as multipliers of m(A), and the closed form of ρ_z.
pub fn check_complex_powers(qg: &QuantumGroup, gns: &GnsRealization, zs: &[Complex64]) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let o = &gns.ops;
    let id = CMat::identity(d, d);
    let proj = SpanProjector::new(&gns.m_rep);

    for &z in zs {
        let dz = o.delta.power(z);
        let elem = gns.delta_elem(z);
        r.run(&format!("powers.multiplier[{}]", zstr(z)), "δ^z m(a) = m(δ_G^z a)", MULTIPLIER_TOL, || {
            Outcome::all((0..d).map(|i| {
                let (coeffs, res) = proj.project(&(&dz * &gns.m_rep[i]));
                let expected = gns.alg.mul(&elem, &basis(d, i));
                Outcome::within(res, MULTIPLIER_TOL, Some(format!("{} leaves m(A)", lbl(qg, i)))).merge(vclose(&coeffs, &expected, MULTIPLIER_TOL, || format!("multiplier at {}", lbl(qg, i))))
            }))
        });
        r.run(&format!("powers.rho_closed_form[{}]", zstr(z)), "ρ_z(m(f)) = m(δ^{-iz/2}(δ̂^{iz/2}*f*δ̂^{-iz/2})δ^{iz/2})", MULTIPLIER_TOL, || {
            let iz = c64(0.0, 1.0) * z;
            let (nz, nzi) = (o.n.power(iz), o.n.power(-iz));
            let (dh_a, dh_b) = (gns.delta_hat_elem(iz / 2.0), gns.delta_hat_elem(-iz / 2.0));
            let (d_a, d_b) = (gns.delta_elem(-iz / 2.0), gns.delta_elem(iz / 2.0));
            Outcome::all((0..d).map(|i| {
                let f = basis(d, i);
                let inner = gns.alg.conv(&gns.alg.conv(&dh_a, &f), &dh_b);
                let g = gns.alg.mul(&gns.alg.mul(&d_a, &inner), &d_b);
                close(&(&nz * &gns.m_rep[i] * &nzi), &gns.m(&g), MULTIPLIER_TOL, || lbl(qg, i).to_string())
            }))
        });
    }
    r.run("powers.integer", "δ^0 = 1, δ^1 m(a) = m(δ_G a)", TOL, || {
        let d1 = o.delta.power_real(1.0);
        let exact = to_cv(qg.delta());
        Outcome::all((0..d).map(|i| {
            let expected = gns.m(&gns.alg.mul(&exact, &basis(d, i)));
            close(&(&d1 * &gns.m_rep[i]), &expected, TOL, || lbl(qg, i).to_string())
        }))
        .merge(close(&o.delta.power_real(0.0), &id, TOL, || "δ^0".into()))
    });
    let grid = [c64(0.0, 0.0), c64(0.5, 0.0), c64(0.0, 1.0), c64(1.0, 1.0), c64(-0.7, 0.3)];
    r.run("powers.group_law", "δ^yδ^z = δ^{y+z}", SPECTRAL_TOL, || {
        Outcome::all(grid.iter().flat_map(|&y| grid.iter().map(move |&z| (y, z))).map(|(y, z)| {
            close(&(o.delta.power(y) * o.delta.power(z)), &o.delta.power(y + z), SPECTRAL_TOL, || format!("y = {y}, z = {z}"))
        }))
    });
    r.run("powers.unitary", "δ^{it} unitary", SPECTRAL_TOL, || {
        Outcome::all(T_GRID.iter().map(|&t| {
            let u = o.delta.unitary(t);
            close(&(u.adjoint() * &u), &id, SPECTRAL_TOL, || format!("t = {t}"))
        }))
    });
    r.run("powers.self_adjoint", "δ^{t/2} self-adjoint", SPECTRAL_TOL, || {
        Outcome::all(T_GRID.iter().map(|&t| {
            let h = o.delta.power_real(t / 2.0);
            close(&h.adjoint(), &h, SPECTRAL_TOL, || format!("t = {t}"))
        }))
    });
    r
}

/// `S^{-2n}(f)δ^n`, exactly.
fn sigma_hat_target(qg: &QuantumGroup, f: &[C], n: i32) -> Vec<C> {
    let md = &qg.modular;
    let mut x = f.to_vec();
    let (s, dl) = if n >= 0 { (&md.s2_inv, qg.delta()) } else { (&md.s2, qg.delta_inv()) };
    for _ in 0..n.unsigned_abs() {
        x = s.mul_vec(&x);
    }
    for _ in 0..n.unsigned_abs() {
        x = qg.mul(&x, dl);
    }
    x
}

/// The modular groups σ, σ̂, the group ρ and the scaling group τ on the regular representations.
pub fn check_modular_groups(qg: &QuantumGroup, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let o = &gns.ops;
    let i = c64(0.0, 1.0);
    // x ↦ A^{iz} x A^{-iz}
    let group = |a: &PositiveMatrix, z: Complex64, x: &CMat| a.power(i * z) * x * a.power(-i * z);

    r.run("groups.sigma_hat_integer", "σ̂_{in}(λ(f)) = λ(S^{-2n}(f)δ^n)", MULTIPLIER_TOL, || {
        Outcome::all((-2..=2).flat_map(|n: i32| (0..d).map(move |f| (n, f))).map(|(n, f)| {
            let lhs = group(&o.nabla_hat, c64(0.0, n as f64), &gns.lambda_rep[f]);
            let rhs = gns.lambda(&to_cv(&sigma_hat_target(qg, &qg.e(f), n)));
            close(&lhs, &rhs, MULTIPLIER_TOL, || format!("n = {n}, f = {}", lbl(qg, f)))
        }))
    });
    let zs: Vec<Complex64> = T_GRID.iter().map(|&t| c64(t, 0.0)).chain([c64(0.0, 0.5), c64(1.0, 1.0)]).collect();
    let m_proj = SpanProjector::new(&gns.m_rep);
    let l_proj = SpanProjector::new(&gns.lambda_rep);
    let stable = |a: &PositiveMatrix, sign: f64, reps: &[CMat], proj: &SpanProjector| -> Outcome {
        Outcome::all(zs.iter().flat_map(|&z| (0..d).map(move |k| (z, k))).map(|(z, k)| {
            let (_, res) = proj.project(&group(a, z * sign, &reps[k]));
            Outcome::within(res, MULTIPLIER_TOL, Some(format!("{}, {}", zstr(z), lbl(qg, k))))
        }))
    };
    r.run("groups.sigma_stability", "σ_z(m(A)) ⊂ m(A)", MULTIPLIER_TOL, || stable(&o.nabla, 1.0, &gns.m_rep, &m_proj));
    r.run("groups.sigma_hat_stability", "σ̂_z(λ(D)) ⊂ λ(D)", MULTIPLIER_TOL, || stable(&o.nabla_hat, 1.0, &gns.lambda_rep, &l_proj));
    r.run("groups.rho_stability", "ρ_z(m(A)) ⊂ m(A)", MULTIPLIER_TOL, || stable(&o.n, 1.0, &gns.m_rep, &m_proj));
    // τ_t(x) = M^{-it}xM^{it}
    r.run("groups.tau_stability", "τ_z(m(A)) ⊂ m(A)", MULTIPLIER_TOL, || stable(&o.m, -1.0, &gns.m_rep, &m_proj));
    r.run("groups.sigma_hat_decomposition", "σ̂_z(λ(f)) = δ'^{-iz}ρ_z(λ(f))δ'^{iz}", MULTIPLIER_TOL, || {
        Outcome::all(zs.iter().flat_map(|&z| (0..d).map(move |k| (z, k))).map(|(z, k)| {
            let x = &gns.lambda_rep[k];
            let rhs = o.delta_prime.power(-i * z) * group(&o.n, z, x) * o.delta_prime.power(i * z);
            close(&group(&o.nabla_hat, z, x), &rhs, MULTIPLIER_TOL, || format!("{}, {}", zstr(z), lbl(qg, k)))
        }))
    });
    r
}

/// The unitary antipode `R = τ_{i/2}∘S` in algebra coordinates.
pub fn unitary_antipode(qg: &QuantumGroup, gns: &GnsRealization) -> (CMat, f64) {
    let d = gns.dim;
    let o = &gns.ops;
    let (a, b) = (o.m.power_real(0.5), o.m.power_real(-0.5));
    let proj = SpanProjector::new(&gns.m_rep);
    let mut worst = 0.0f64;
    let cols: Vec<CVec> = (0..d)
        .map(|k| {
            let x = &a * gns.m(&to_cv(&qg.s(&qg.e(k)))) * &b;
            let (c, res) = proj.project(&x);
            worst = worst.max(res);
            c
        })
        .collect();
    (CMat::from_columns(&cols), worst)
}

/// Invariance of the Haar weight, the KMS bound and the unitary antipode.
pub fn check_invariance_and_kms(qg: &QuantumGroup, gns: &GnsRealization) -> Report {
    let mut r = Report::new(qg.model.name());
    let d = gns.dim;
    let o = &gns.ops;
    let id = CMat::identity(d, d);
    let one = gns.lam(&gns.alg.unit);

    r.run("weight.vector_state", "φ(m(f)) = ⟨Λ(1), m(f)Λ(1)⟩ = φ_G(f)", TOL, || {
        Outcome::all((0..d).map(|f| {
            let lhs = one.dotc(&(&gns.m_rep[f] * &one));
            let res = (lhs - qg.phi(&qg.e(f)).to_c64()).norm();
            Outcome::within(res, TOL, Some(lbl(qg, f).to_string()))
        }))
    });
    // E u_k = u_k ⊗ Λ(1), so E*XE is the slice (ι⊗φ)(X) in the orthonormal basis.
    let e_mat = id.kronecker(&CMat::from_column_slice(d, 1, one.as_slice()));
    r.run("weight.invariance_lemma", "(yω⊗φ)(Δ(x)) = ω(y)φ(x)", TOL, || {
        let mut out = Outcome::pass();
        for x in 0..d {
            let dx = coproduct_op(gns, &gns.m_rep[x]);
            let phi_x = qg.phi(&qg.e(x)).to_c64();
            for y in 0..d {
                let lhs = e_mat.adjoint() * &dx * gns.m_rep[y].kronecker(&id) * &e_mat;
                out = out.merge(close(&lhs, &(&gns.m_rep[y] * phi_x), TOL, || format!("(x, y) = ({}, {})", lbl(qg, x), lbl(qg, y))));
            }
        }
        out
    });
    r.run("weight.left_invariance", "(ω⊗φ)(Δ(x)) = ω(1)φ(x)", TOL, || {
        Outcome::all((0..d).map(|x| {
            let lhs = e_mat.adjoint() * coproduct_op(gns, &gns.m_rep[x]) * &e_mat;
            close(&lhs, &(&id * qg.phi(&qg.e(x)).to_c64()), TOL, || lbl(qg, x).to_string())
        }))
    });
    let sigma_half = |x: &CMat| o.nabla.power_real(-0.5) * x * o.nabla.power_real(0.5);
    r.run("kms.bound", "‖xΛ(a)‖ ≤ ‖σ_{i/2}(m(ā))‖‖Λ(x)‖", TOL, || {
        let mut out = Outcome::pass();
        for a in 0..d {
            let s = sigma_half(&gns.m(&to_cv(&qg.bar(&qg.e(a)))));
            let norm = s.singular_values().iter().copied().fold(0.0, f64::max);
            for x in 0..d {
                let lhs = (&gns.m_rep[x] * gns.lam(&basis(d, a))).norm();
                let rhs = norm * gns.lam(&basis(d, x)).norm();
                let excess = (lhs - rhs).max(0.0) / rhs.max(1.0);
                out = out.merge(Outcome::within(excess, TOL, Some(format!("(x, a) = ({}, {}): {lhs:.6} > {rhs:.6}", lbl(qg, x), lbl(qg, a)))));
            }
        }
        out
    });
    r.run("kms.right_multiplication", "Jσ_{i/2}(m(ā))JΛ(x) = Λ(xσ(a))", TOL, || {
        let mut out = Outcome::pass();
        for a in 0..d {
            let op = o.j.conjugate_op(&sigma_half(&gns.m(&to_cv(&qg.bar(&qg.e(a))))));
            let sa = qg.sigma(&qg.e(a));
            for x in 0..d {
                let rhs = gns.lam_exact(&qg.mul(&qg.e(x), &sa));
                out = out.merge(vclose(&(&op * gns.lam(&basis(d, x))), &rhs, TOL, || format!("(x, a) = ({}, {})", lbl(qg, x), lbl(qg, a))));
            }
        }
        out
    });
    let (rmat, res) = unitary_antipode(qg, gns);
    r.run("antipode.unitary_in_m", "τ_{i/2}(m(S(f))) ∈ m(A)", MULTIPLIER_TOL, || Outcome::within(res, MULTIPLIER_TOL, Some("R leaves m(A)".into())));
    r.run("antipode.involutive", "R² = 1", TOL, || close(&(&rmat * &rmat), &id, TOL, || "R²".into()));
    r.run("antipode.anti_multiplicative", "R(ab) = R(b)R(a)", TOL, || {
        let mut out = Outcome::pass();
        for a in 0..d {
            for b in 0..d {
                let ab = to_cv(&qg.mul(&qg.e(a), &qg.e(b)));
                let lhs = &rmat * ab;
                let rhs = gns.alg.mul(&rmat.column(b).into_owned(), &rmat.column(a).into_owned());
                out = out.merge(vclose(&lhs, &rhs, TOL, || format!("({}, {})", lbl(qg, a), lbl(qg, b))));
            }
        }
        out
    });
    r.run("antipode.star", "R(ā) = conj(R(a))", TOL, || {
        let invol = to_cm(qg.model.invol_matrix());
        Outcome::all((0..d).map(|a| {
            let lhs = &rmat * to_cv(&qg.bar(&qg.e(a)));
            let rhs = &invol * rmat.column(a).conjugate();
            vclose(&lhs, &rhs, TOL, || lbl(qg, a).to_string())
        }))
    });
    r.run("antipode.right_invariance", "(φ∘R⊗ι)Δ(a) = φ(R(a))1", TOL, || {
        let phi_r: Vec<Complex64> = (0..d).map(|p| gns.alg.phi(&rmat.column(p).into_owned())).collect();
        Outcome::all((0..d).map(|a| {
            let cop = qg.model.coproduct(&qg.e(a));
            let lhs = CVec::from_fn(d, |q, _| (0..d).map(|p| phi_r[p] * cop[p * d + q].to_c64()).sum());
            let rhs = &gns.alg.unit * gns.alg.phi(&rmat.column(a).into_owned());
            vclose(&lhs, &rhs, TOL, || lbl(qg, a).to_string())
        }))
    });
    r
}

/// Every analytic check, or a single skipped record when the layer does not apply.
pub fn analytic_suite(qg: &QuantumGroup, dual: &Dual) -> Report {
    if let Some(reason) = refusal(qg) {
        return refused_report(qg, &reason);
    }
    let gns = match build_gns(qg, dual) {
        Ok(g) => g,
        Err(e) => {
            let mut r = Report::new(qg.model.name());
            r.run("analytic.build", "L²(G) realization", 0.0, || Outcome::fail(e.to_string()));
            return r;
        }
    };
    let zs: Vec<Complex64> = Z_GRID.iter().map(|&(a, b)| c64(a, b)).collect();
    let mut r = check_gns(qg, dual, &gns);
    r.extend(check_regular_reps(qg, &gns));
    r.extend(check_coproduct_implementation(qg, &gns));
    r.extend(check_modular_operators(qg, &gns));
    r.extend(check_commutation_relations(qg, &gns));
    r.extend(check_complex_powers(qg, &gns, &zs));
    r.extend(check_modular_groups(qg, &gns));
    r.extend(check_invariance_and_kms(qg, &gns));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::build_dual;
    use crate::models;

    fn setup(name: &str) -> (QuantumGroup, Dual) {
        let qg = QuantumGroup::build(models::by_name(name).unwrap()).unwrap();
        let dual = build_dual(&qg).unwrap();
        (qg, dual)
    }

    #[test]
    fn counting_measure_gram() {
        let (qg, dual) = setup("c_z2");
        let gns = build_gns(&qg, &dual).unwrap();
        // the normalized Haar measure gives each point mass 1/2
        assert!(rel_diff(&gns.gram, &(CMat::identity(2, 2) * c64(0.5, 0.0))) < 1e-14);
    }

    #[test]
    fn sweedler_is_refused() {
        let (qg, dual) = setup("sweedler_h4");
        assert!(matches!(build_gns(&qg, &dual), Err(Error::TierRefusal { .. })));
    }

    #[test]
    fn perturbed_w_is_detected() {
        let (qg, dual) = setup("c_z3");
        let mut gns = build_gns(&qg, &dual).unwrap();
        gns.w[(0, 0)] += c64(1e-6, 0.0);
        let r = check_gns(&qg, &dual, &gns);
        for id in ["gns.w_unitary", "gns.w_defining", "gns.pentagon"] {
            assert_eq!(r.get(id).unwrap().status, crate::report::Status::Fail, "{id}");
        }
        let r = check_regular_reps(&qg, &gns);
        assert!(!r.passed());
    }

    #[test]
    fn rank_of_dependent_family() {
        let a = CMat::identity(2, 2);
        let b = CMat::from_fn(2, 2, |i, j| c64((i + 2 * j) as f64, 0.0));
        assert_eq!(span_rank(&[a.clone(), b.clone(), &a * c64(2.0, 0.0) - &b]), 2);
    }

    #[test]
    fn full_suite_on_s3() {
        let (qg, dual) = setup("c_s3");
        let r = analytic_suite(&qg, &dual);
        assert!(r.passed(), "{}", r.render_text());
    }
}
