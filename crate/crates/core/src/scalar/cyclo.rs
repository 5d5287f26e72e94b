//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! An element is a polynomial in ζ_N with rational coefficients, kept reduced
//! modulo the N-th cyclotomic polynomial Φ_N, so the representation is
//! canonical for a fixed order. Elements of different orders combine by
//! lifting both operands into Q(ζ_lcm).

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;

use super::rational::Rational;

const CACHED_ORDERS: usize = 128;

static PHI_CACHE: [OnceLock<Vec<i64>>; CACHED_ORDERS] = [const { OnceLock::new() }; CACHED_ORDERS];

/// Integer coefficients of Φ_n, lowest degree first. Φ_n is monic.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if (n as usize) < CACHED_ORDERS {
        return PHI_CACHE[n as usize].get_or_init(|| compute_phi(n)).clone();
    }
    compute_phi(n)
}

fn phi_ref(n: u32) -> std::borrow::Cow<'static, [i64]> {
    if (n as usize) < CACHED_ORDERS {
        std::borrow::Cow::Borrowed(PHI_CACHE[n as usize].get_or_init(|| compute_phi(n)).as_slice())
    } else {
        std::borrow::Cow::Owned(compute_phi(n))
    }
}

fn compute_phi(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_polynomial(d);
            p = divide_monic(&p, &q);
        }
    }
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "cyclotomic division not exact");
    quot
}

/// Euler's totient, which is the degree of Φ_n.
pub fn totient(n: u32) -> usize {
    phi_ref(n).len() - 1
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    /// Reduced coefficients of 1, ζ, ζ², …; trailing zeros trimmed, so zero is empty.
    coeffs: Vec<Rational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = Cyclo { order: 1, coeffs: vec![r] };
        c.trim();
        c
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); n as usize];
        raw[e] = Rational::one();
        Self::from_powers(n, raw)
    }

    /// Builds Σ c_k ζ_n^k from coefficients of any length, reducing modulo Φ_n.
    pub fn from_powers(n: u32, powers: Vec<Rational>) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let mut c = Cyclo { order: n, coeffs: powers };
        c.reduce();
        c
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn reduce(&mut self) {
        let phi = phi_ref(self.order);
        let m = phi.len() - 1;
        self.trim();
        while self.coeffs.len() > m {
            let top = self.coeffs.len() - 1;
            let c = self.coeffs.pop().expect("non-empty");
            if !c.is_zero() {
                let base = top - m;
                for (j, &pj) in phi.iter().enumerate().take(m) {
                    if pj != 0 {
                        let t = c.mul(&Rational::from_int(pj));
                        self.coeffs[base + j] = self.coeffs[base + j].sub(&t);
                    }
                }
            }
            self.trim();
        }
    }

    /// Re-expresses the element in Q(ζ_n); `n` must be a multiple of the current order.
    pub fn lift(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        assert!(n % self.order == 0, "cannot lift order {} into {}", self.order, n);
        if self.coeffs.len() <= 1 {
            return Cyclo { order: n, coeffs: self.coeffs.clone() };
        }
        let step = (n / self.order) as usize;
        let mut raw = vec![Rational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = (k * step) % n as usize;
            raw[e] = raw[e].add(c);
        }
        Self::from_powers(n, raw)
    }

    fn common(&self, other: &Self) -> (Self, Self, u32) {
        if self.order == other.order {
            return (self.clone(), other.clone(), self.order);
        }
        // rationals need no lifting
        if self.coeffs.len() <= 1 {
            let s = Cyclo { order: other.order, coeffs: self.coeffs.clone() };
            return (s, other.clone(), other.order);
        }
        if other.coeffs.len() <= 1 {
            let o = Cyclo { order: self.order, coeffs: other.coeffs.clone() };
            return (self.clone(), o, self.order);
        }
        let n = self.order.lcm(&other.order);
        (self.lift(n), other.lift(n), n)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b, n) = self.common(other);
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let x = match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(x);
        }
        let mut c = Cyclo { order: n, coeffs };
        c.trim();
        c
    }

    pub fn neg_ref(&self) -> Self {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(Rational::neg).collect() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.coeffs.len() == 1 && other.coeffs.len() == 1 {
            let order = if self.order == 1 { other.order } else { self.order };
            return Cyclo { order, coeffs: vec![self.coeffs[0].mul(&other.coeffs[0])] };
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b, n) = self.common(other);
        let mut raw = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] = raw[i + j].add(&x.mul(y));
                }
            }
        }
        Self::from_powers(n, raw)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect() }
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut raw = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = (n - k % n) % n;
            raw[e] = raw[e].add(c);
        }
        Self::from_powers(self.order, raw)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(Cyclo { order: self.order, coeffs: vec![self.coeffs[0].recip()?] });
        }
        // Solve (multiplication-by-self) · b = 1 over Q.
        let m = totient(self.order);
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for j in 0..m {
            let mut raw = vec![Rational::zero(); j + 1];
            raw[j] = Rational::one();
            let xj = Cyclo::from_powers(self.order, raw);
            let prod = self.mul_ref(&xj);
            let mut col = prod.coeffs.clone();
            col.resize(m, Rational::zero());
            cols.push(col);
        }
        // augmented row-major system
        let mut a: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                let mut row: Vec<Rational> = (0..m).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for c in 0..m {
            let p = (c..m).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].recip()?;
            for v in a[c].iter_mut() {
                *v = v.mul(&inv);
            }
            for r in 0..m {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in c..=m {
                        let t = f.mul(&a[c][k]);
                        a[r][k] = a[r][k].sub(&t);
                    }
                }
            }
        }
        let sol: Vec<Rational> = a.iter().map(|row| row[m].clone()).collect();
        Some(Self::from_powers(self.order, sol))
    }

    /// Embedding with ζ_N ↦ exp(2πi/N).
    pub fn to_c64(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Complex64::from_polar(c.to_f64(), 2.0 * PI * k as f64 / n))
            .sum()
    }

    /// Raw coefficients of 1, ζ_n, …, ζ_n^{φ(n)-1} after lifting to order `n`.
    pub fn coeffs_in(&self, n: u32) -> Vec<Rational> {
        let mut c = if self.coeffs.len() <= 1 { self.coeffs.clone() } else { self.lift(n).coeffs };
        c.resize(totient(n), Rational::zero());
        c
    }

    /// True when the element equals its complex conjugate.
    pub fn is_real(&self) -> bool {
        self.coeffs.len() <= 1 || *self == self.conj()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order || (self.coeffs.len() <= 1 && other.coeffs.len() <= 1) {
            return self.coeffs == other.coeffs;
        }
        self.sub_ref(other).is_zero()
    }
}

impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{}", self.order)?,
                _ => write!(f, "({c})z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                self.$impl(&rhs)
            }
        }
        impl<'a> $trait<&'a Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &'a Cyclo) -> Cyclo {
                self.$impl(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(8), 4);
    }

    #[test]
    fn roots_of_unity_have_the_right_order() {
        for n in 1..=12u32 {
            let z = Cyclo::root_of_unity(n, 1);
            let mut p = Cyclo::one();
            for k in 1..=n {
                p = &p * &z;
                assert_eq!(p.is_one(), k == n, "ζ_{n}^{k}");
            }
        }
    }

    #[test]
    fn conjugation_is_inverse_on_roots() {
        let z = Cyclo::root_of_unity(5, 2);
        assert!((&z * &z.conj()).is_one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn mixed_orders_lift_to_lcm() {
        let a = Cyclo::root_of_unity(2, 1);
        assert_eq!(a, Cyclo::from_int(-1));
        let z3 = Cyclo::root_of_unity(3, 1);
        let z4 = Cyclo::root_of_unity(4, 1);
        let p = &z3 * &z4;
        assert_eq!(p.order(), 12);
        assert_eq!(p, Cyclo::root_of_unity(12, 7));
        // ζ_6 = -ζ_3^2
        assert_eq!(Cyclo::root_of_unity(6, 1), -Cyclo::root_of_unity(3, 2));
    }

    #[test]
    fn inverse_in_field() {
        let z = Cyclo::root_of_unity(3, 1);
        let a = &Cyclo::from_int(2) + &z;
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(Cyclo::zero().inv().is_none());
    }

    #[test]
    fn complex_embedding() {
        let z = Cyclo::root_of_unity(4, 1).to_c64();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
