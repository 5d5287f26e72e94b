//! The Hilbert-space layer against closed forms: for C(G) the unitary W is the
//! permutation e_a⊗e_c ↦ e_a⊗e_{ac}; Gram matrices of counting and trace functionals.

use nalgebra::DMatrix;
use proptest::prelude::*;

use bqg_core::analytic::{analytic_suite, build_gns, refusal, PositiveMatrix};
use bqg_core::duality::build_dual;
use bqg_core::integrals::QuantumGroup;
use bqg_core::linalg::spectral::hermitian_eigen;
use bqg_core::linalg::Mat;
use bqg_core::models::{by_name, function_algebra, GroupTable};
use bqg_core::report::Status;
use bqg_core::scalar::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_dev(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn setup(name: &str) -> (QuantumGroup, bqg_core::duality::Dual) {
    let qg = QuantumGroup::build(by_name(name).unwrap()).unwrap();
    let dual = build_dual(&qg).unwrap();
    (qg, dual)
}

#[test]
fn w_is_the_group_permutation_on_function_algebras() {
    for g in [GroupTable::cyclic(3), GroupTable::symmetric3()] {
        let n = g.order();
        let qg = QuantumGroup::build(function_algebra(&g, "c")).unwrap();
        let dual = build_dual(&qg).unwrap();
        let gns = build_gns(&qg, &dual).unwrap();
        let mut expected = DMatrix::from_element(n * n, n * n, c(0.0, 0.0));
        for a in 0..n {
            for x in 0..n {
                expected[(a * n + g.mul(a, x), a * n + x)] = c(1.0, 0.0);
            }
        }
        assert!(max_dev(&gns.w, &expected) < 1e-12);
        let gram = DMatrix::identity(n, n).map(|v: f64| c(v / n as f64, 0.0));
        assert!(max_dev(&gns.gram, &gram) < 1e-14);
    }
}

#[test]
fn group_algebra_gram_is_the_identity() {
    let (qg, dual) = setup("cg_s3");
    let gns = build_gns(&qg, &dual).unwrap();
    assert!(max_dev(&gns.gram, &DMatrix::identity(6, 6)) < 1e-14);
}

#[test]
fn kac_models_have_trivial_modular_operators() {
    for name in ["c_z3", "cg_s3", "d_z3"] {
        let (qg, dual) = setup(name);
        assert!(qg.is_kac());
        let gns = build_gns(&qg, &dual).unwrap();
        let id = DMatrix::identity(gns.dim, gns.dim);
        let o = &gns.ops;
        for p in [&o.delta, &o.delta_prime, &o.delta_hat, &o.delta_hat_prime, &o.nabla, &o.nabla_hat, &o.n, &o.m] {
            assert!(max_dev(&p.matrix, &id) < 1e-10, "{name}: {}", p.name);
        }
    }
}

#[test]
fn full_suite_passes_on_positive_models() {
    for name in ["trivial", "c_z2", "c_s3", "cg_z2", "cg_s3", "d_z3"] {
        let (qg, dual) = setup(name);
        let r = analytic_suite(&qg, &dual);
        assert!(r.passed() && r.count(Status::Fail) == 0, "{}", r.render_text());
        assert!(r.count(Status::Pass) > 50, "{name}");
    }
}

#[test]
fn relaxed_and_oversized_models_are_refused() {
    for (name, why) in [("sweedler_h4", "not positive"), ("taft_t3", "not positive"), ("d_s3", "dense cap")] {
        let (qg, dual) = setup(name);
        let reason = refusal(&qg).unwrap();
        assert!(reason.contains(why), "{name}: {reason}");
        let r = analytic_suite(&qg, &dual);
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].status, Status::Skipped);
    }
}

fn hermitian(entries: &[(f64, f64)], n: usize) -> Mat<Complex64> {
    Mat::from_fn(n, n, |i, j| {
        let (a, b) = entries[i.min(j) * n + i.max(j)];
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => c(a, 0.0),
            std::cmp::Ordering::Less => c(a, b),
            std::cmp::Ordering::Greater => c(a, -b),
        }
    })
}

fn to_dm(m: &Mat<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_eigendecomposition(entries in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 25)) {
        let h = hermitian(&entries, 5);
        let e = hermitian_eigen(&h);
        let u = to_dm(&e.vectors);
        prop_assert!(max_dev(&to_dm(&e.reconstruct()), &to_dm(&h)) < 1e-10);
        prop_assert!(max_dev(&(u.adjoint() * &u), &DMatrix::identity(5, 5)) < 1e-10);
    }

    #[test]
    fn functional_calculus_is_coherent(entries in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 16), t in -3.0f64..3.0) {
        let b = to_dm(&hermitian(&entries, 4));
        let a = b.adjoint() * &b + DMatrix::identity(4, 4);
        let p = PositiveMatrix::new("A", a.clone()).unwrap();
        prop_assert!(max_dev(&p.power(c(1.0, 0.0)), &a) < 1e-9);
        let u = p.unitary(t);
        prop_assert!(max_dev(&(u.adjoint() * &u), &DMatrix::identity(4, 4)) < 1e-9);
        let (y, z) = (c(0.3, t), c(-t, 0.5));
        prop_assert!(max_dev(&(p.power(y) * p.power(z)), &p.power(y + z)) < 1e-8 * (1.0 + p.power(y + z).norm()));
    }
}
