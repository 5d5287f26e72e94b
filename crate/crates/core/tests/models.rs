//! Builders against structure constants computed here from scratch: S3 as
//! permutations of three letters, Z_n as residues.

use bqg_core::duality::build_dual;
use bqg_core::hopf::{build_galois, check_morphism, QGModel};
use bqg_core::integrals::QuantumGroup;
use bqg_core::linalg::Mat;
use bqg_core::models::{drinfeld_double, function_algebra, group_algebra, taft, GroupTable};
use bqg_core::scalar::{Cyclo, Rational};

type C = Cyclo;

/// S3 in the library's labelling: p is the list of images of 0, 1, 2.
const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn compose(p: [usize; 3], q: [usize; 3]) -> [usize; 3] {
    [p[q[0]], p[q[1]], p[q[2]]]
}

fn idx(p: [usize; 3]) -> usize {
    PERMS.iter().position(|q| *q == p).unwrap()
}

fn s3_mul(a: usize, b: usize) -> usize {
    idx(compose(PERMS[a], PERMS[b]))
}

fn s3_inv(a: usize) -> usize {
    (0..6).find(|&b| s3_mul(a, b) == 0).unwrap()
}

fn e(d: usize, i: usize) -> Vec<C> {
    let mut v = vec![C::zero(); d];
    v[i] = C::one();
    v
}

fn tensor_basis(d: usize, i: usize, j: usize) -> Vec<C> {
    e(d * d, i * d + j)
}

fn sum(vs: impl IntoIterator<Item = Vec<C>>, len: usize) -> Vec<C> {
    vs.into_iter().fold(vec![C::zero(); len], |acc, v| acc.iter().zip(&v).map(|(a, b)| a.add_ref(b)).collect())
}

#[test]
fn z2_coproduct_of_point_masses() {
    let m = function_algebra(&GroupTable::cyclic(2), "c_z2");
    // Δ(δ_e) = δ_e⊗δ_e + δ_g⊗δ_g
    let expected = sum([tensor_basis(2, 0, 0), tensor_basis(2, 1, 1)], 4);
    assert_eq!(m.coproduct(&e(2, 0)), expected);
}

#[test]
fn function_algebra_on_s3_matches_permutations() {
    let m = function_algebra(&GroupTable::symmetric3(), "c_s3");
    for x in 0..6 {
        let pairs = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).filter(|&(a, b)| s3_mul(a, b) == x);
        let expected = sum(pairs.map(|(a, b)| tensor_basis(6, a, b)), 36);
        assert_eq!(m.coproduct(&e(6, x)), expected, "Δ(δ_{x})");
        for y in 0..6 {
            let expected = if x == y { e(6, x) } else { vec![C::zero(); 6] };
            assert_eq!(m.mul(&e(6, x), &e(6, y)), expected);
        }
    }
    assert!(!m.is_cocommutative());
    let qg = QuantumGroup::build(m).unwrap();
    for x in 0..6 {
        assert_eq!(qg.s(&e(6, x)), e(6, s3_inv(x)));
    }
}

#[test]
fn group_algebra_on_s3_matches_permutations() {
    let m = group_algebra(&GroupTable::symmetric3(), "cg_s3");
    assert!(!m.is_commutative() && m.is_cocommutative());
    let qg = QuantumGroup::build(m).unwrap();
    for g in 0..6 {
        assert_eq!(qg.model.coproduct(&e(6, g)), tensor_basis(6, g, g));
        assert_eq!(qg.bar(&e(6, g)), e(6, s3_inv(g)));
        assert_eq!(qg.s(&e(6, g)), e(6, s3_inv(g)));
        for h in 0..6 {
            assert_eq!(qg.mul(&e(6, g), &e(6, h)), e(6, s3_mul(g, h)));
        }
        let expected = if g == 0 { C::one() } else { C::zero() };
        assert_eq!(qg.phi(&e(6, g)), expected);
    }
}

/// `δ_g⊗u_h` sits at index `g·n + h`.
fn double_oracle(n: usize, mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize, m: &QGModel) {
    let d = n * n;
    let at = |g: usize, h: usize| g * n + h;
    for g in 0..n {
        for h in 0..n {
            for g2 in 0..n {
                for h2 in 0..n {
                    let expected = if g == mul(mul(h, g2), inv(h)) { e(d, at(g, mul(h, h2))) } else { vec![C::zero(); d] };
                    assert_eq!(m.mul(&e(d, at(g, h)), &e(d, at(g2, h2))), expected);
                }
            }
            let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| mul(a, b) == g);
            let expected = sum(pairs.map(|(a, b)| tensor_basis(d, at(a, h), at(b, h))), d * d);
            assert_eq!(m.coproduct(&e(d, at(g, h))), expected);
        }
    }
}

#[test]
fn drinfeld_double_of_s3_matches_the_formulas() {
    let m = drinfeld_double(&GroupTable::symmetric3(), "d_s3");
    assert_eq!(m.dim(), 36);
    double_oracle(6, s3_mul, s3_inv, &m);
    assert!(!m.is_commutative() && !m.is_cocommutative());
}

#[test]
fn drinfeld_double_of_z3_is_commutative() {
    let m = drinfeld_double(&GroupTable::cyclic(3), "d_z3");
    double_oracle(3, |a, b| (a + b) % 3, |a| (3 - a) % 3, &m);
    assert!(m.is_commutative());
    let qg = QuantumGroup::build(m).unwrap();
    // φ(δ_g⊗u_h) ∝ [h = e]
    let c = qg.phi(&e(9, 0));
    for g in 0..3 {
        for h in 0..3 {
            let expected = if h == 0 { c.clone() } else { C::zero() };
            assert_eq!(qg.phi(&e(9, g * 3 + h)), expected);
        }
    }
}

#[test]
fn trivial_group_gives_trivial_models() {
    let t = GroupTable::trivial();
    for m in [function_algebra(&t, "a"), group_algebra(&t, "b"), drinfeld_double(&t, "c")] {
        assert_eq!(m.dim(), 1);
        assert_eq!(m.mul(&e(1, 0), &e(1, 0)), e(1, 0));
        assert_eq!(m.coproduct(&e(1, 0)), e(1, 0));
    }
}

/// C[G] is the dual of C(G) through `u_g ↦ |G|δ_g`, since F(δ_g) = φ(·δ_g) = ev_g / |G|.
#[test]
fn group_algebra_is_the_dual_of_the_function_algebra() {
    for g in [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::symmetric3()] {
        let n = g.order();
        let cf = QuantumGroup::build(function_algebra(&g, "c")).unwrap();
        let cg = QuantumGroup::build(group_algebra(&g, "cg")).unwrap();
        let dual = build_dual(&cf).unwrap();
        let pi = Mat::identity(n).scale(&C::from_int(n as i64));
        let r = check_morphism(&cg.model, &cg.hopf, &dual.model, &dual.qg.hopf, &pi, "iso", "dual");
        assert!(r.passed(), "{}", r.render_text());
    }
}

fn taft_index(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

#[test]
fn taft_relations_hold() {
    for n in [2usize, 3, 4] {
        let m = taft(n).unwrap();
        let d = n * n;
        assert_eq!(m.dim(), d);
        let g = e(d, taft_index(n, 1, 0));
        let x = e(d, taft_index(n, 0, 1));
        let zeta = C::root_of_unity(n as u32, 1);
        let pow = |v: &Vec<C>, k: usize| (0..k).fold(m.unit().to_vec(), |acc, _| m.mul(&acc, v));
        assert_eq!(pow(&g, n), m.unit().to_vec(), "g^n = 1");
        assert!(pow(&x, n).iter().all(C::is_zero), "x^n = 0");
        let gx: Vec<C> = m.mul(&g, &x).iter().map(|c| c.mul_ref(&zeta)).collect();
        assert_eq!(m.mul(&x, &g), gx, "xg = ζgx");
        assert_eq!(m.coproduct(&g), tensor_basis(d, taft_index(n, 1, 0), taft_index(n, 1, 0)));
        // Δx = x⊗1 + g⊗x
        let expected = sum([tensor_basis(d, taft_index(n, 0, 1), 0), tensor_basis(d, taft_index(n, 1, 0), taft_index(n, 0, 1))], d * d);
        assert_eq!(m.coproduct(&x), expected);
        assert!(!m.positive());
    }
    assert!(taft(1).is_err());
}

#[test]
fn sweedler_antipode_modular_element_and_integral() {
    let qg = QuantumGroup::build(taft(2).unwrap()).unwrap();
    let (x, g, gx) = (e(4, 1), e(4, 2), e(4, 3));
    let s2 = |v: &Vec<C>| qg.s(&qg.s(v));
    assert_eq!(s2(&x), x.iter().map(C::neg_ref).collect::<Vec<_>>());
    assert_eq!(qg.delta(), &g[..]);
    // φ is supported on gx
    for i in 0..3 {
        assert!(qg.phi(&e(4, i)).is_zero());
    }
    assert!(!qg.phi(&gx).is_zero());
}

#[test]
fn taft_t3_has_s4_nontrivial() {
    let qg = QuantumGroup::build(taft(3).unwrap()).unwrap();
    let s4 = qg.modular.s2.mul(&qg.modular.s2);
    assert_ne!(s4, Mat::identity(9));
    assert_eq!(s4.mul(&s4).mul(&s4), Mat::identity(9), "S^12 = id");
}

#[test]
fn every_builder_passes_cancellation() {
    for m in [function_algebra(&GroupTable::cyclic(4), "c_z4"), group_algebra(&GroupTable::cyclic(4), "cg_z4"), taft(4).unwrap()] {
        let r = bqg_core::hopf::check_cancellation(&m, &build_galois(&m));
        assert!(r.passed(), "{}", r.render_text());
    }
}

#[test]
fn rational_scalars_in_structure_constants() {
    let cf = QuantumGroup::build(function_algebra(&GroupTable::cyclic(3), "c_z3")).unwrap();
    // the normalized counting measure
    assert!(cf.haar.phi.iter().all(|c| *c == C::from_rational(Rational::new(1, 3))));
}
