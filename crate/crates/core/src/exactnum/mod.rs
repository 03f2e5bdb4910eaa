//! Exact scalar arithmetic: prime fields, their finite extensions and
//! cyclotomic number fields, together with univariate polynomials,
//! factorization, dense linear algebra and Gaussian binomials.
//!
//! Everything above this layer is generic over [`Field`]. A field value is a
//! runtime handle (it carries `p`, the modulus, or `N`); elements are plain
//! canonical values, so equality of elements is equality of representations.

mod cyclotomic;
mod descriptor;
mod extension;
pub mod factor;
pub mod matrix;
pub mod poly;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use rand::Rng;

use crate::error::{Error, Result};

pub use cyclotomic::CyclotomicField;
pub use descriptor::{make_field, AnyField, FieldDescriptor, FieldKind};
pub use extension::ExtensionField;
pub use factor::{poly_factor, poly_factor_seeded, FactorList};
pub use matrix::{minimal_polynomial, Matrix};
pub use poly::{poly_xgcd, UniPoly};
pub use prime::PrimeField;
pub use rational::RationalField;

/// A commutative field with exact arithmetic on canonical element values.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    /// Order of the torsion subgroup of `k^×` (every root of unity in `k`
    /// has order dividing this).
    fn unit_torsion_order(&self) -> u64;
    /// All elements in a fixed canonical order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn descriptor(&self) -> FieldDescriptor;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// Sign and magnitude used when printing polynomial coefficients, so
    /// that `y + 15` over `F_17` prints as `y-2`.
    fn fmt_signed(&self, a: &Self::Elem) -> (bool, String) {
        (false, self.fmt_elem(a))
    }
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// Inverse of the Frobenius `a ↦ a^p` (finite fields only).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.size().expect("pth_root needs a finite field");
        let p = self.characteristic();
        self.pow(a, q / p)
    }

    /// A finite set containing every root of the monic polynomial with the
    /// given coefficients that is a rational multiple of a root of unity.
    /// Used for linear-factor peeling over infinite fields.
    fn linear_root_candidates(&self, _monic_coeffs: &[Self::Elem]) -> Vec<Self::Elem> {
        self.elements().unwrap_or_default()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power allowing negative exponents; panics on `0^(-k)`.
    fn powi(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            let inv = self.inv(a).expect("negative power of zero");
            self.pow(&inv, e.unsigned_abs())
        }
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Multiplicative order of `a`, or `None` when `a` is zero or not a root of
/// unity.
pub fn multiplicative_order<F: Field>(field: &F, a: &F::Elem) -> Option<u64> {
    if field.is_zero(a) {
        return None;
    }
    let t = field.unit_torsion_order();
    divisors(t)
        .into_iter()
        .find(|&d| field.is_one(&field.pow(a, d)))
}

/// A generator of the (cyclic) torsion subgroup of `k^×`, chosen
/// deterministically.
pub fn torsion_generator<F: Field>(field: &F) -> F::Elem {
    let t = field.unit_torsion_order();
    if let Some(elems) = field.elements() {
        for e in elems {
            if multiplicative_order(field, &e) == Some(t) {
                return e;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }
    // Cyclotomic: ζ_N has order N; −ζ_N has order 2N when N is odd.
    let z = field
        .parse_elem("z")
        .unwrap_or_else(|_| field.from_i64(-1));
    if multiplicative_order(field, &z) == Some(t) {
        z
    } else {
        field.neg(&z)
    }
}

/// Returns `ω` with `ω^n = 1` and `ω^d ≠ 1` for every proper divisor `d`.
pub fn primitive_root_of_unity<F: Field>(field: &F, n: u64) -> Result<F::Elem> {
    let t = field.unit_torsion_order();
    if n == 0 || !t.is_multiple_of(n) {
        return Err(Error::NoRootOfUnity {
            n,
            field: field.descriptor().to_string(),
        });
    }
    let g = torsion_generator(field);
    Ok(field.pow(&g, t / n))
}

/// Gaussian binomial `binom(n, l)_q` by the division-free Pascal recursion
/// `C(n, l) = C(n-1, l) + q^(n-l) C(n-1, l-1)`.
pub fn q_binomial<F: Field>(field: &F, n: u64, l: u64, q: &F::Elem) -> Result<F::Elem> {
    if l > n {
        return Err(Error::BinomialRange { n, l });
    }
    let n = n as usize;
    let l = l as usize;
    let mut qpow = Vec::with_capacity(n + 1);
    qpow.push(field.one());
    for i in 1..=n {
        qpow.push(field.mul(&qpow[i - 1], q));
    }
    // row[j] = C(m, j) for the current m
    let mut row = vec![field.zero(); l + 1];
    row[0] = field.one();
    for m in 1..=n {
        let hi = l.min(m);
        for j in (1..=hi).rev() {
            let t = field.mul(&qpow[m - j], &row[j - 1]);
            row[j] = field.add(&row[j], &t);
        }
    }
    Ok(row[l].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots_mod_5() {
        let f = PrimeField::new(5).unwrap();
        let w = primitive_root_of_unity(&f, 4).unwrap();
        assert!(w == 2 || w == 3);
        assert_eq!(primitive_root_of_unity(&f, 1).unwrap(), 1);
        assert!(matches!(
            primitive_root_of_unity(&f, 3),
            Err(Error::NoRootOfUnity { n: 3, .. })
        ));
    }

    #[test]
    fn primitive_root_in_cyclotomic() {
        let f = CyclotomicField::new(3).unwrap();
        let w = primitive_root_of_unity(&f, 3).unwrap();
        assert_eq!(multiplicative_order(&f, &w), Some(3));
        let w6 = primitive_root_of_unity(&f, 6).unwrap();
        assert_eq!(multiplicative_order(&f, &w6), Some(6));
        assert!(primitive_root_of_unity(&f, 4).is_err());
    }

    #[test]
    fn q_binomial_small_cases() {
        let f = PrimeField::new(5).unwrap();
        for q in 1..5u64 {
            assert_eq!(q_binomial(&f, 2, 1, &q).unwrap(), (1 + q) % 5);
            for n in 0..7 {
                assert_eq!(q_binomial(&f, n, 0, &q).unwrap(), 1);
            }
        }
        // 3 has order 4 mod 5
        assert_eq!(q_binomial(&f, 4, 2, &3).unwrap(), 0);
        assert!(q_binomial(&f, 2, 3, &3).is_err());
    }

    #[test]
    fn orders_mod_17() {
        let f = PrimeField::new(17).unwrap();
        assert_eq!(multiplicative_order(&f, &2), Some(8));
        assert_eq!(multiplicative_order(&f, &9), Some(8));
        assert_eq!(multiplicative_order(&f, &3), Some(16));
        assert_eq!(multiplicative_order(&f, &0), None);
    }
}
