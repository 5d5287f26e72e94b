//! Pontryagin duality for cyclic groups through a Fourier matrix built here,
//! and closed forms of the dual structure against the dual's own derivation.

use bqg_core::duality::{build_dual, check_biduality, check_dft};
use bqg_core::integrals::QuantumGroup;
use bqg_core::models::{by_name, function_algebra, group_algebra, GroupTable, STANDARD};
use bqg_core::scalar::Cyclo;

type C = Cyclo;

fn e(d: usize, i: usize) -> Vec<C> {
    let mut v = vec![C::zero(); d];
    v[i] = C::one();
    v
}

/// `u_k ↦ Σ_j ζ^{jk} δ_j`.
fn fourier(n: usize, k: usize) -> Vec<C> {
    (0..n).map(|j| C::root_of_unity(n as u32, ((j * k) % n) as i64)).collect()
}

#[test]
fn fourier_transform_is_a_hopf_star_isomorphism() {
    for n in [2usize, 3, 4, 5] {
        let z = GroupTable::cyclic(n);
        let cg = group_algebra(&z, "cg");
        let cf = function_algebra(&z, "cf");
        let lin = |v: &[C]| -> Vec<C> {
            (0..n).fold(vec![C::zero(); n], |acc, k| {
                let f = fourier(n, k);
                acc.iter().zip(&f).map(|(a, b)| a.add_ref(&b.mul_ref(&v[k]))).collect()
            })
        };
        for a in 0..n {
            let (ua, fa) = (e(n, a), fourier(n, a));
            // conjugation
            assert_eq!(lin(&cg.bar(&ua)), cf.bar(&fa));
            // coproduct: Δ(F u_a) = F u_a ⊗ F u_a
            let expected: Vec<C> = (0..n * n).map(|ij| fa[ij / n].mul_ref(&fa[ij % n])).collect();
            assert_eq!(cf.coproduct(&fa), expected, "n = {n}, a = {a}");
            for b in 0..n {
                assert_eq!(lin(&cg.mul(&ua, &e(n, b))), cf.mul(&fa, &fourier(n, b)));
            }
        }
        // the matrix is invertible: F F̄ᵀ = n·I
        for a in 0..n {
            for b in 0..n {
                let ip = fourier(n, a).iter().zip(&fourier(n, b)).fold(C::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(&y.conj())));
                assert_eq!(ip, if a == b { C::from_int(n as i64) } else { C::zero() });
            }
        }
    }
}

#[test]
fn dual_of_a_cyclic_group_algebra_is_pointwise() {
    for n in [2usize, 3, 4] {
        let qg = QuantumGroup::build(group_algebra(&GroupTable::cyclic(n), "cg")).unwrap();
        let dual = build_dual(&qg).unwrap();
        for j in 0..n {
            for k in 0..n {
                let expected = if j == k { e(n, j) } else { vec![C::zero(); n] };
                assert_eq!(dual.conv(&e(n, j), &e(n, k)), expected);
            }
        }
        assert_eq!(dual.conv_unit(), &vec![C::one(); n][..]);
    }
}

#[test]
fn library_dft_report_passes() {
    for n in [2, 3, 4] {
        let r = check_dft(n).unwrap();
        assert!(r.passed() && r.checks.iter().all(|c| c.max_residual == 0.0), "{}", r.render_text());
    }
}

#[test]
fn closed_form_dual_antipode_matches_the_derived_one() {
    for name in STANDARD {
        if name == "d_s3" {
            continue;
        }
        let qg = QuantumGroup::build(by_name(name).unwrap()).unwrap();
        let dual = build_dual(&qg).unwrap();
        let d = qg.dim();
        for i in 0..d {
            // Ŝ(f) = σ(δS(f))
            let closed = qg.sigma(&qg.mul(qg.delta(), &qg.s(&e(d, i))));
            assert_eq!(dual.qg.s(&e(d, i)), closed, "{name}");
        }
        assert_eq!(dual.qg.hopf.counit, qg.haar.phi, "{name}: ε̂ = φ");
    }
}

#[test]
fn biduality_is_exact_on_every_small_model() {
    for name in STANDARD {
        if name == "d_s3" {
            continue;
        }
        let qg = QuantumGroup::build(by_name(name).unwrap()).unwrap();
        let dual = build_dual(&qg).unwrap();
        let bidual = build_dual(&dual.qg).unwrap();
        let r = check_biduality(&qg, &bidual);
        assert!(r.passed(), "{}", r.render_text());
        assert_eq!(bidual.model.data().mult, qg.model.data().mult, "{name}");
        assert_eq!(bidual.model.data().coprod, qg.model.data().coprod, "{name}");
    }
}
