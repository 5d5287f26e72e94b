//! Scalars for the two arithmetic tiers: exact cyclotomic ([`Cyclo`]) and
//! double-precision complex ([`Complex64`]).

pub mod cyclo;
pub mod rational;

use std::fmt::Debug;

pub use num_complex::Complex64;

pub use cyclo::Cyclo;
pub use rational::Rational;

/// Field operations shared by both tiers.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    fn is_zero(&self) -> bool;

    /// Exact zero test in the exact tier, `|x| <= tol` in the float tier.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Modulus of the complex embedding.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }
}

impl Scalar for Cyclo {
    const EXACT: bool = true;

    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn from_i64(n: i64) -> Self {
        Cyclo::from_int(n)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Option<Self> {
        Cyclo::inv(self)
    }
    fn conj(&self) -> Self {
        Cyclo::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        Cyclo::to_c64(self)
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        Cyclo::is_zero(self)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.norm_sqr() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclo_strategy(n: u32) -> impl Strategy<Value = Cyclo> {
        let m = cyclo::totient(n);
        prop::collection::vec((-20i64..20, 1i64..6), m).prop_map(move |cs| {
            Cyclo::from_powers(n, cs.into_iter().map(|(p, q)| Rational::new(p, q)).collect())
        })
    }

    proptest! {
        #[test]
        fn exact_ring_identities(a in cyclo_strategy(5), b in cyclo_strategy(5)) {
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            if !b.is_zero() {
                prop_assert_eq!(a.mul(&b).mul(&Scalar::inv(&b).unwrap()), a.clone());
            }
            prop_assert_eq!(Scalar::conj(&Scalar::conj(&a)), a.clone());
        }

        #[test]
        fn embedding_is_a_homomorphism(a in cyclo_strategy(12), b in cyclo_strategy(12)) {
            let scale = 1.0 + a.to_c64().norm() * b.to_c64().norm() + a.to_c64().norm() + b.to_c64().norm();
            let tol = 64.0 * f64::EPSILON * scale;
            prop_assert!((a.add(&b).to_c64() - (a.to_c64() + b.to_c64())).norm() <= tol);
            prop_assert!((a.mul(&b).to_c64() - a.to_c64() * b.to_c64()).norm() <= tol);
            prop_assert!((Scalar::conj(&a).to_c64() - a.to_c64().conj()).norm() <= tol);
        }
    }
}
