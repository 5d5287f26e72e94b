use super::group::GroupTable;
use crate::error::{Error, Result};
use crate::hopf::{ModelData, QGModel, C};
use crate::linalg::Mat;
use crate::scalar::Cyclo;

fn unit_vec(d: usize, i: usize) -> Vec<C> {
    let mut v = vec![C::zero(); d];
    v[i] = C::one();
    v
}

/// The function algebra C(G) on point masses δ_x.
pub fn function_algebra(g: &GroupTable, name: &str) -> QGModel {
    let n = g.order();
    let mut mult = Mat::zeros(n, n * n);
    let mut coprod = Mat::zeros(n * n, n);
    for x in 0..n {
        mult[(x, x * n + x)] = C::one();
        for a in 0..n {
            coprod[(a * n + g.mul(g.inv(a), x), x)] = C::one();
        }
    }
    let antipode = Mat::from_fn(n, n, |r, c| if r == g.inv(c) { C::one() } else { C::zero() });
    QGModel::new(ModelData {
        name: name.to_string(),
        basis: g.labels().iter().map(|l| format!("d_{l}")).collect(),
        order: 1,
        unit: vec![C::one(); n],
        mult,
        invol: Mat::identity(n),
        coprod,
        counit: Some(unit_vec(n, g.identity())),
        antipode: Some(antipode),
        positive: true,
    })
    .expect("builder shapes are consistent")
}

/// The group algebra C[G] on group-likes u_g.
pub fn group_algebra(g: &GroupTable, name: &str) -> QGModel {
    let n = g.order();
    let mut mult = Mat::zeros(n, n * n);
    let mut coprod = Mat::zeros(n * n, n);
    for a in 0..n {
        for b in 0..n {
            mult[(g.mul(a, b), a * n + b)] = C::one();
        }
        coprod[(a * n + a, a)] = C::one();
    }
    let inv = Mat::from_fn(n, n, |r, c| if r == g.inv(c) { C::one() } else { C::zero() });
    QGModel::new(ModelData {
        name: name.to_string(),
        basis: g.labels().iter().map(|l| format!("u_{l}")).collect(),
        order: 1,
        unit: unit_vec(n, g.identity()),
        mult,
        invol: inv.clone(),
        coprod,
        counit: Some(vec![C::one(); n]),
        antipode: Some(inv),
        positive: true,
    })
    .expect("builder shapes are consistent")
}

/// The Drinfeld double D(G) on the basis δ_g u_h, indexed `g * n + h`.
pub fn drinfeld_double(g: &GroupTable, name: &str) -> QGModel {
    let n = g.order();
    let d = n * n;
    let idx = |x: usize, h: usize| x * n + h;
    let conj = |h: usize, x: usize| g.mul(g.mul(h, x), g.inv(h));
    let mut mult = Mat::zeros(d, d * d);
    let mut coprod = Mat::zeros(d * d, d);
    let mut invol = Mat::zeros(d, d);
    let mut antipode = Mat::zeros(d, d);
    let mut counit = vec![C::zero(); d];
    let mut unit = vec![C::zero(); d];
    for x in 0..n {
        unit[idx(x, g.identity())] = C::one();
        for h in 0..n {
            let i = idx(x, h);
            for y in 0..n {
                for k in 0..n {
                    if x == conj(h, y) {
                        mult[(idx(x, g.mul(h, k)), i * d + idx(y, k))] = C::one();
                    }
                }
            }
            for a in 0..n {
                let b = g.mul(g.inv(a), x);
                coprod[(idx(a, h) * d + idx(b, h), i)] = C::one();
            }
            let hi = g.inv(h);
            invol[(idx(conj(hi, x), hi), i)] = C::one();
            antipode[(idx(conj(hi, g.inv(x)), hi), i)] = C::one();
            if x == g.identity() {
                counit[i] = C::one();
            }
        }
    }
    let basis = (0..n).flat_map(|x| (0..n).map(move |h| (x, h))).map(|(x, h)| format!("d_{}u_{}", g.labels()[x], g.labels()[h])).collect();
    QGModel::new(ModelData {
        name: name.to_string(),
        basis,
        order: 1,
        unit,
        mult,
        invol,
        coprod,
        counit: Some(counit),
        antipode: Some(antipode),
        positive: true,
    })
    .expect("builder shapes are consistent")
}

/// The Taft algebra T_n over Q(ζ_n): generators g, x with gⁿ = 1, xⁿ = 0,
/// xg = ζ gx, Δg = g⊗g, Δx = x⊗1 + g⊗x. Basis g^a x^b, indexed `a * n + b`.
/// For n = 2 this is Sweedler's four-dimensional algebra.
pub fn taft(n: usize) -> Result<QGModel> {
    if n < 2 {
        return Err(Error::Argument(format!("Taft algebra needs n >= 2, got {n}")));
    }
    let order = n as u32;
    let zeta = |k: usize| Cyclo::root_of_unity(order, k as i64);
    let d = n * n;
    let idx = |a: usize, b: usize| (a % n) * n + b;
    // normal ordering: g^a x^b · g^c x^e = ζ^{bc} g^{a+c} x^{b+e}
    let mut mult = Mat::zeros(d, d * d);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    if b + e < n {
                        mult[(idx(a + c, b + e), idx(a, b) * d + idx(c, e))] = zeta(b * c);
                    }
                }
            }
        }
    }
    // bar(g^a x^b) = x^b g^a = ζ^{ab} g^a x^b, then conjugate coefficients
    let invol = Mat::from_fn(d, d, |r, c| if r == c { zeta((c / n) * (c % n)) } else { C::zero() });
    let scaffold = QGModel::new(ModelData {
        name: String::new(),
        basis: vec![String::new(); d],
        order,
        unit: unit_vec(d, 0),
        mult: mult.clone(),
        invol: invol.clone(),
        coprod: Mat::zeros(d * d, d),
        counit: None,
        antipode: None,
        positive: false,
    })?;
    let e2 = |i: usize, j: usize| {
        let mut v = vec![C::zero(); d * d];
        v[i * d + j] = C::one();
        v
    };
    let g = idx(1, 0);
    let x = idx(0, 1);
    let one = idx(0, 0);
    let dg = e2(g, g);
    let mut dx = e2(x, one);
    dx[g * d + x] = C::one();
    let mut coprod = Mat::zeros(d * d, d);
    let mut antipode = Mat::zeros(d, d);
    let g_inv = unit_vec(d, idx(n - 1, 0));
    let s_x: Vec<C> = scaffold.mul(&g_inv, &unit_vec(d, x)).iter().map(|c| c.neg_ref()).collect();
    for a in 0..n {
        for b in 0..n {
            let col = idx(a, b);
            let mut delta = e2(one, one);
            let mut s = unit_vec(d, one);
            for _ in 0..a {
                delta = scaffold.tensor_mul(&delta, &dg, 2);
            }
            for _ in 0..b {
                delta = scaffold.tensor_mul(&delta, &dx, 2);
                s = scaffold.mul(&s_x, &s);
            }
            // S(g^a x^b) = S(x)^b S(g)^a
            for _ in 0..a {
                s = scaffold.mul(&s, &g_inv);
            }
            for (r, v) in delta.into_iter().enumerate() {
                coprod[(r, col)] = v;
            }
            for (r, v) in s.into_iter().enumerate() {
                antipode[(r, col)] = v;
            }
        }
    }
    let counit = (0..d).map(|i| if i % n == 0 { C::one() } else { C::zero() }).collect();
    let label = |a: usize, b: usize| match (a, b) {
        (0, 0) => "1".to_string(),
        (0, _) => power("x", b),
        (_, 0) => power("g", a),
        _ => format!("{}{}", power("g", a), power("x", b)),
    };
    let basis = (0..d).map(|i| label(i / n, i % n)).collect();
    let name = if n == 2 { "sweedler_h4".to_string() } else { format!("taft_t{n}") };
    QGModel::new(ModelData { name, basis, order, unit: unit_vec(d, one), mult, invol, coprod, counit: Some(counit), antipode: Some(antipode), positive: false })
}

fn power(s: &str, k: usize) -> String {
    if k == 1 {
        s.to_string()
    } else {
        format!("{s}^{k}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweedler_labels_and_relations() {
        let h = taft(2).unwrap();
        assert_eq!(h.basis(), &["1", "x", "g", "gx"]);
        let (x, g) = (h.e(1), h.e(2));
        // xg = -gx
        let xg = h.mul(&x, &g);
        let gx = h.mul(&g, &x);
        assert_eq!(xg, gx.iter().map(|c| c.neg_ref()).collect::<Vec<_>>());
        assert!(h.mul(&x, &x).iter().all(|c| c.is_zero()));
        assert_eq!(h.mul(&g, &g), h.e(0));
        // S(x) = -gx
        let s = h.supplied_antipode().unwrap();
        assert_eq!(s.column(1), vec![C::zero(), C::zero(), C::zero(), C::from_int(-1)]);
    }

    #[test]
    fn drinfeld_double_of_abelian_group_is_commutative() {
        let m = drinfeld_double(&GroupTable::cyclic(3), "d_z3");
        assert_eq!(m.dim(), 9);
        assert!(m.is_commutative());
        let m = drinfeld_double(&GroupTable::symmetric3(), "d_s3");
        assert!(!m.is_commutative());
        assert!(!m.is_cocommutative());
    }
}
