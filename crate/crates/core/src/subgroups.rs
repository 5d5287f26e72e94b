//! Morphisms of quantum groups, closed quantum subgroups given by surjective
//! restriction maps, the dual morphism π̂ and its injectivity on the
//! regular representations.

use crate::analytic::{self, span_rank, to_cv};
use crate::duality::{build_dual, pairing_matrix, Dual};
use crate::error::{Error, Result};
use crate::hopf::{check_morphism, QGModel};
use crate::integrals::QuantumGroup;
use crate::linalg::solve::{inverse, kernel, rank};
use crate::linalg::Mat;
use crate::models::{function_algebra, GroupTable};
use crate::report::{compare_vecs, Outcome, Report};
use crate::scalar::Cyclo;

type C = Cyclo;

/// A quantum group together with its dual.
#[derive(Clone, Debug)]
pub struct Side {
    pub qg: QuantumGroup,
    pub dual: Dual,
}

impl Side {
    pub fn build(model: QGModel) -> Result<Side> {
        let qg = QuantumGroup::build(model)?;
        let dual = build_dual(&qg)?;
        Ok(Side { qg, dual })
    }

    pub fn dim(&self) -> usize {
        self.qg.dim()
    }

    fn e(&self, i: usize) -> Vec<C> {
        self.qg.e(i)
    }

    fn lbl(&self, i: usize) -> &str {
        &self.qg.model.basis()[i]
    }
}

/// `π: A(G) → A(H)` as a `dim H × dim G` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QGMorphism {
    pub pi: Mat<C>,
}

impl QGMorphism {
    pub fn apply(&self, a: &[C]) -> Vec<C> {
        self.pi.mul_vec(a)
    }

    pub fn is_surjective(&self) -> bool {
        rank(&self.pi, 0.0) == self.pi.rows()
    }

    /// `self ∘ first`
    pub fn after(&self, first: &QGMorphism) -> QGMorphism {
        QGMorphism { pi: self.pi.mul(&first.pi) }
    }
}

/// `π̂: D(H) → D(G)` as a `dim G × dim H` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMorphism {
    pub pi_hat: Mat<C>,
}

impl DualMorphism {
    pub fn apply(&self, x: &[C]) -> Vec<C> {
        self.pi_hat.mul_vec(x)
    }
}

pub fn identity_morphism(d: usize) -> QGMorphism {
    QGMorphism { pi: Mat::identity(d) }
}

/// The counit, as the restriction to the trivial subgroup.
pub fn counit_morphism(g: &QuantumGroup) -> (QGModel, QGMorphism) {
    let target = function_algebra(&GroupTable::trivial(), "trivial");
    let pi = Mat::from_rows(1, g.dim(), g.hopf.counit.clone());
    (target, QGMorphism { pi })
}

/// Restriction `C(G) ↠ C(K)` to the subgroup on `elems`; the target basis follows `elems`.
pub fn restriction(g: &GroupTable, elems: &[usize], name: &str) -> Result<(QGModel, QGMorphism)> {
    let k = g.subgroup(elems)?;
    let target = function_algebra(&k, name);
    let mut pi = Mat::zeros(elems.len(), g.order());
    for (row, &x) in elems.iter().enumerate() {
        pi[(row, x)] = C::one();
    }
    Ok((target, QGMorphism { pi }))
}

/// Morphism axioms, the automatic antipode/counit compatibilities and surjectivity.
pub fn validate_morphism(g: &Side, h: &Side, mor: &QGMorphism) -> Report {
    let mut r = check_morphism(&g.qg.model, &g.qg.hopf, &h.qg.model, &h.qg.hopf, &mor.pi, "morphism", "unital *-homomorphism with Δ_H∘π = (π⊗π)∘Δ_G");
    if r.passed() {
        if mor.is_surjective() {
            r.run("morphism.closed_subgroup", "π surjective", 0.0, || Outcome::pass_with(format!("{} is a closed quantum subgroup of {}", h.qg.model.name(), g.qg.model.name())));
        } else {
            r.skip("morphism.closed_subgroup", "π surjective", &format!("rank {} < {}", rank(&mor.pi, 0.0), h.dim()));
        }
    }
    r
}

/// Solves `(π̂(x), a) = (x, π(a))`, i.e. `φ_G(a π̂(x)) = φ_H(π(a) x)`, exactly.
pub fn build_dual_morphism(g: &Side, h: &Side, mor: &QGMorphism) -> Result<DualMorphism> {
    let (dg, dh) = (g.dim(), h.dim());
    if mor.pi.rows() != dh || mor.pi.cols() != dg {
        return Err(Error::Morphism(format!("matrix is {}x{}, expected {dh}x{dg}", mor.pi.rows(), mor.pi.cols())));
    }
    let b_inv = inverse(&pairing_matrix(&g.qg), 0.0).map_err(|_| Error::Morphism("the Haar integral of the source is not faithful".into()))?;
    let rhs = Mat::from_fn(dg, dh, |a, x| h.qg.phi(&h.qg.mul(&mor.apply(&g.e(a)), &h.e(x))));
    Ok(DualMorphism { pi_hat: b_inv.mul(&rhs) })
}

fn pair(side: &Side, x: &[C], a: &[C]) -> C {
    side.qg.phi(&side.qg.mul(a, x))
}

/// Pairing coherence, the two multiplier formulas, and π̂ as a unital convolution *-morphism.
pub fn check_dual_morphism(g: &Side, h: &Side, mor: &QGMorphism, dm: &DualMorphism) -> Report {
    let mut r = Report::new(format!("{} -> {}", g.qg.model.name(), h.qg.model.name()));
    let (dg, dh) = (g.dim(), h.dim());
    let xs = || (0..dh).flat_map(move |x| (0..dg).map(move |a| (x, a)));

    r.run("dual_morphism.pairing", "(π̂(x), a) = (x, π(a))", 0.0, || {
        Outcome::all(xs().map(|(x, a)| {
            let lhs = pair(g, &dm.apply(&h.e(x)), &g.e(a));
            let rhs = pair(h, &h.e(x), &mor.apply(&g.e(a)));
            compare_vecs(&[lhs], &[rhs], 0.0, || format!("(x, a) = ({}, {})", h.lbl(x), g.lbl(a)))
        }))
    });
    r.run("dual_morphism.left_action", "π̂(x)*u = φ_H(S⁻¹(π(u₁))x) u₂", 0.0, || {
        Outcome::all(xs().map(|(x, u)| {
            let cop = g.qg.model.coproduct(&g.e(u));
            let mut rhs = vec![C::zero(); dg];
            for (pq, c) in cop.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = h.qg.phi(&h.qg.mul(&h.qg.s_inv(&mor.apply(&g.e(pq / dg))), &h.e(x)));
                rhs[pq % dg] = rhs[pq % dg].add_ref(&c.mul_ref(&w));
            }
            compare_vecs(&g.dual.conv(&dm.apply(&h.e(x)), &g.e(u)), &rhs, 0.0, || format!("(x, u) = ({}, {})", h.lbl(x), g.lbl(u)))
        }))
    });
    r.run("dual_morphism.right_action", "u*π̂(x) = u₁ φ_H(π(δ_G S(u₂))x) = u₁ φ_H(S⁻¹(x)π(u₂)π(δ_G⁻¹)δ_H)", 0.0, || {
        let pi_dinv = mor.apply(g.qg.delta_inv());
        Outcome::all(xs().map(|(x, u)| {
            let cop = g.qg.model.coproduct(&g.e(u));
            let mut first = vec![C::zero(); dg];
            let mut second = vec![C::zero(); dg];
            let s_inv_x = h.qg.s_inv(&h.e(x));
            for (pq, c) in cop.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (p, q) = (pq / dg, pq % dg);
                let w1 = h.qg.phi(&h.qg.mul(&mor.apply(&g.qg.mul(g.qg.delta(), &g.qg.s(&g.e(q)))), &h.e(x)));
                let tail = h.qg.mul(&h.qg.mul(&mor.apply(&g.e(q)), &pi_dinv), h.qg.delta());
                let w2 = h.qg.phi(&h.qg.mul(&s_inv_x, &tail));
                first[p] = first[p].add_ref(&c.mul_ref(&w1));
                second[p] = second[p].add_ref(&c.mul_ref(&w2));
            }
            let lhs = g.dual.conv(&g.e(u), &dm.apply(&h.e(x)));
            let wit = || format!("(x, u) = ({}, {})", h.lbl(x), g.lbl(u));
            compare_vecs(&lhs, &first, 0.0, wit).merge(compare_vecs(&lhs, &second, 0.0, wit))
        }))
    });
    r.run("dual_morphism.unital", "π̂(1̂) = 1̂", 0.0, || compare_vecs(&dm.apply(h.dual.conv_unit()), g.dual.conv_unit(), 0.0, || "convolution unit".into()));
    r.run("dual_morphism.multiplicative", "π̂(x*y) = π̂(x)*π̂(y)", 0.0, || {
        Outcome::all((0..dh).flat_map(|x| (0..dh).map(move |y| (x, y))).map(|(x, y)| {
            let lhs = dm.apply(&h.dual.conv(&h.e(x), &h.e(y)));
            let rhs = g.dual.conv(&dm.apply(&h.e(x)), &dm.apply(&h.e(y)));
            compare_vecs(&lhs, &rhs, 0.0, || format!("({}, {})", h.lbl(x), h.lbl(y)))
        }))
    });
    r.run("dual_morphism.star", "π̂(x^*) = π̂(x)^*", 0.0, || {
        Outcome::all((0..dh).map(|x| compare_vecs(&dm.apply(&h.dual.conv_adj(&h.e(x))), &g.dual.conv_adj(&dm.apply(&h.e(x))), 0.0, || h.lbl(x).to_string())))
    });
    r.run("dual_morphism.l1_separation", "(x, a) ↦ φ(ax) nondegenerate", 0.0, || {
        let k = rank(&pairing_matrix(&g.qg), 0.0);
        Outcome::from_bool(k == dg, || format!("pairing rank {k} < {dg}"))
    });
    r
}

/// `π(π̂(x)*u*π̂(y)) = x*π(u)*y` over all basis triples, and whether π happens
/// to respect the convolution involutions (reported, not required).
pub fn check_expectation(g: &Side, h: &Side, mor: &QGMorphism, dm: &DualMorphism) -> Report {
    let mut r = Report::new(format!("{} -> {}", g.qg.model.name(), h.qg.model.name()));
    let (dg, dh) = (g.dim(), h.dim());
    let hats: Vec<Vec<C>> = (0..dh).map(|x| dm.apply(&h.e(x))).collect();
    r.run("expectation.identity", "π(π̂(x)*u*π̂(y)) = x*π(u)*y", 0.0, || {
        let mut out = Outcome::pass();
        for x in 0..dh {
            for u in 0..dg {
                let left = g.dual.conv(&hats[x], &g.e(u));
                let xpu = h.dual.conv(&h.e(x), &mor.apply(&g.e(u)));
                for y in 0..dh {
                    let lhs = mor.apply(&g.dual.conv(&left, &hats[y]));
                    let rhs = h.dual.conv(&xpu, &h.e(y));
                    out = out.merge(compare_vecs(&lhs, &rhs, 0.0, || format!("(x, u, y) = ({}, {}, {})", h.lbl(x), g.lbl(u), h.lbl(y))));
                }
            }
        }
        out
    });
    r.run("expectation.convolution_involution", "π(u^*) = π(u)^* (not required)", 0.0, || {
        let bad = (0..dg).find(|&u| mor.apply(&g.dual.conv_adj(&g.e(u))) != h.dual.conv_adj(&mor.apply(&g.e(u))));
        Outcome::pass_with(match bad {
            None => "π respects the convolution involutions here".to_string(),
            Some(u) => format!("π does not respect the convolution involutions, e.g. at {}", g.lbl(u)),
        })
    });
    r
}

/// The preimage of `a` under π of least norm: `P*(PP*)⁻¹a`.
pub fn min_norm_preimage(mor: &QGMorphism, a: &[C]) -> Result<Vec<C>> {
    let pstar = mor.pi.adjoint();
    let gram = mor.pi.mul(&pstar);
    let inv = inverse(&gram, 0.0).map_err(|_| Error::Morphism("π is not surjective".into()))?;
    Ok(pstar.mul_vec(&inv.mul_vec(a)))
}

/// The Vaes-square certificate: π̂ is a convolution *-morphism, the induced map
/// λ_H(D(H)) → λ_G(D(G)) is well defined and injective, and `â(x) = b̂(π̂(x))`.
pub fn certify_vaes(g: &Side, h: &Side, mor: &QGMorphism, dm: &DualMorphism) -> Report {
    let mut r = Report::new(format!("{} -> {}", g.qg.model.name(), h.qg.model.name()));
    let dh = h.dim();

    r.run("vaes.convolution_morphism", "π̂(x*y) = π̂(x)*π̂(y), π̂(x^*) = π̂(x)^*", 0.0, || {
        let mut out = Outcome::pass();
        for x in 0..dh {
            let px = dm.apply(&h.e(x));
            out = out.merge(compare_vecs(&dm.apply(&h.dual.conv_adj(&h.e(x))), &g.dual.conv_adj(&px), 0.0, || format!("star at {}", h.lbl(x))));
            for y in 0..dh {
                let lhs = dm.apply(&h.dual.conv(&h.e(x), &h.e(y)));
                out = out.merge(compare_vecs(&lhs, &g.dual.conv(&px, &dm.apply(&h.e(y))), 0.0, || format!("({}, {})", h.lbl(x), h.lbl(y))));
            }
        }
        out
    });
    r.run("vaes.kernel", "ker π̂ = 0", 0.0, || {
        let ker = kernel(&dm.pi_hat, 0.0);
        match ker.first() {
            None => Outcome::pass(),
            Some(v) => Outcome::fail(format!("π̂ kills {}", h.qg.model.format_elem(v, 1))),
        }
    });
    r.run("vaes.functionals", "â(x) = ε_H(x*a) = ε_G(π̂(x)*b) = b̂(π̂(x)) for π(b) = a", 0.0, || {
        let ker = kernel(&mor.pi, 0.0);
        let mut out = Outcome::pass();
        for a in 0..dh {
            let b = match min_norm_preimage(mor, &h.e(a)) {
                Ok(b) => b,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            let mut preimages = vec![b.clone()];
            if let Some(k) = ker.first() {
                preimages.push(b.iter().zip(k).map(|(x, y)| x.add_ref(y)).collect());
            }
            for x in 0..dh {
                let lhs = h.qg.hopf.eps(&h.dual.conv(&h.e(x), &h.e(a)));
                for (n, b) in preimages.iter().enumerate() {
                    let rhs = g.qg.hopf.eps(&g.dual.conv(&dm.apply(&h.e(x)), b));
                    out = out.merge(compare_vecs(&[lhs.clone()], &[rhs], 0.0, || format!("(x, a) = ({}, {}), preimage {n}", h.lbl(x), h.lbl(a))));
                }
            }
        }
        out
    });
    let reasons: Vec<String> = [analytic::refusal(&g.qg), analytic::refusal(&h.qg)].into_iter().flatten().collect();
    if let Some(reason) = reasons.first() {
        r.skip("vaes.regular_square", "λ_G∘π̂ = π̂∘λ_H, injective", reason);
        return r;
    }
    let built = analytic::build_gns(&g.qg, &g.dual).and_then(|gg| Ok((gg, analytic::build_gns(&h.qg, &h.dual)?)));
    let (gns_g, gns_h) = match built {
        Ok(p) => p,
        Err(e) => {
            r.run("vaes.regular_square", "λ_G∘π̂ = π̂∘λ_H, injective", 0.0, || Outcome::fail(e.to_string()));
            return r;
        }
    };
    let images: Vec<_> = (0..dh).map(|x| gns_g.lambda(&to_cv(&dm.apply(&h.e(x))))).collect();
    r.run("vaes.regular_square", "λ_G(π̂(x))λ_G(π̂(y)) = λ_G(π̂(x*y)), λ_G(π̂(x^*)) = λ_G(π̂(x))*", analytic::TOL, || {
        let mut out = Outcome::pass();
        for x in 0..dh {
            let adj = gns_g.lambda(&to_cv(&dm.apply(&h.dual.conv_adj(&h.e(x)))));
            out = out.merge(Outcome::within(analytic::rel_diff(&adj, &images[x].adjoint()), analytic::TOL, Some(format!("star at {}", h.lbl(x)))));
            for y in 0..dh {
                let prod = gns_g.lambda(&to_cv(&dm.apply(&h.dual.conv(&h.e(x), &h.e(y)))));
                let res = analytic::rel_diff(&prod, &(&images[x] * &images[y]));
                out = out.merge(Outcome::within(res, analytic::TOL, Some(format!("({}, {})", h.lbl(x), h.lbl(y)))));
            }
        }
        out
    });
    r.run("vaes.injective", "λ_H(x) ↦ λ_G(π̂(x)) injective", 0.0, || {
        let (src, img) = (span_rank(&gns_h.lambda_rep), span_rank(&images));
        Outcome::from_bool(src == dh && img == dh, || format!("rank λ_H = {src}, rank λ_G∘π̂ = {img}, expected {dh}"))
    });
    r
}

/// Functoriality of the dual: `(π₂∘π₁)^ = π̂₁∘π̂₂`.
pub fn check_functoriality(g: &Side, h: &Side, k: &Side, first: &QGMorphism, second: &QGMorphism) -> Report {
    let mut r = Report::new(format!("{} -> {} -> {}", g.qg.model.name(), h.qg.model.name(), k.qg.model.name()));
    r.run("dual_morphism.functorial", "(π₂∘π₁)^ = π̂₁∘π̂₂", 0.0, || {
        let built = (build_dual_morphism(g, h, first), build_dual_morphism(h, k, second), build_dual_morphism(g, k, &second.after(first)));
        match built {
            (Ok(d1), Ok(d2), Ok(d12)) => crate::report::compare_mats(&d12.pi_hat, &d1.pi_hat.mul(&d2.pi_hat), 0.0),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Outcome::fail(e.to_string()),
        }
    });
    r
}

/// Every subgroup check for one morphism.
pub fn subgroup_suite(g: &Side, h: &Side, mor: &QGMorphism) -> Report {
    let mut r = validate_morphism(g, h, mor);
    if !r.passed() || !mor.is_surjective() {
        r.skip("dual_morphism", "π̂", "π is not a valid surjective morphism");
        return r;
    }
    match build_dual_morphism(g, h, mor) {
        Ok(dm) => {
            r.extend(check_dual_morphism(g, h, mor, &dm));
            r.extend(check_expectation(g, h, mor, &dm));
            r.extend(certify_vaes(g, h, mor, &dm));
        }
        Err(e) => {
            r.run("dual_morphism.build", "π̂", 0.0, || Outcome::fail(e.to_string()));
        }
    }
    r
}
