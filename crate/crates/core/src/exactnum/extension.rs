use rand::Rng;

use super::descriptor::{parse_sparse, FieldDescriptor, FieldKind};
use super::poly::UniPoly;
use super::prime::bigint_mod;
use super::{divisors, is_prime, Field, PrimeField};
use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 20;

/// `F_p[w]/(m(w))` for a monic irreducible `m` of degree ≥ 1. Elements are
/// coefficient vectors of length `deg m`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Vec<u64>,
    degree: usize,
    order: u64,
}

impl ExtensionField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let poly = UniPoly::from_coeffs(&base, modulus);
        let degree = poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidField("extension modulus must have degree ≥ 1".into()))?;
        if !poly.is_monic(&base) {
            return Err(Error::InvalidField("extension modulus must be monic".into()));
        }
        let order = (p as u128).pow(degree as u32);
        if order > MAX_ORDER as u128 {
            return Err(Error::InvalidField(format!("field of order {order} is too large")));
        }
        if !rabin_irreducible(&base, &poly) {
            return Err(Error::InvalidField(format!(
                "{} is reducible over F_{p}",
                poly.format(&base)
            )));
        }
        Ok(ExtensionField {
            base,
            modulus: poly.coeffs().to_vec(),
            degree,
            order: order as u64,
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce(&self, mut c: Vec<u64>) -> Vec<u64> {
        let m = self.degree;
        let f = &self.base;
        for i in (m..c.len()).rev() {
            let t = c[i];
            if t == 0 {
                continue;
            }
            for j in 0..m {
                let s = f.mul(&t, &self.modulus[j]);
                c[i - m + j] = f.sub(&c[i - m + j], &s);
            }
            c[i] = 0;
        }
        c.resize(m, 0);
        c
    }

    fn from_index(&self, mut i: u64) -> Vec<u64> {
        let p = self.base.modulus();
        (0..self.degree)
            .map(|_| {
                let d = i % p;
                i /= p;
                d
            })
            .collect()
    }
}

/// Rabin's test: `f` of degree `m` is irreducible iff `y^(p^m) ≡ y` and
/// `gcd(y^(p^(m/r)) - y, f) = 1` for each prime `r | m`.
pub(crate) fn rabin_irreducible(base: &PrimeField, f: &UniPoly<u64>) -> bool {
    let m = match f.degree() {
        Some(m) if m >= 1 => m,
        _ => return false,
    };
    let p = base.modulus();
    let y = UniPoly::y(base);
    let frob = |k: usize| {
        let mut h = y.rem(base, f);
        for _ in 0..k {
            h = h.powmod(base, p, f);
        }
        h
    };
    if frob(m) != y.rem(base, f) {
        return false;
    }
    divisors(m as u64)
        .into_iter()
        .filter(|&r| is_prime(r))
        .all(|r| frob(m / r as usize).sub(base, &y).gcd(base, f).is_one(base))
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        v[0] = 1;
        v
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut c = vec![0; 2 * self.degree - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                c[i + j] = self.base.add(&c[i + j], &t);
            }
        }
        self.reduce(c)
    }

    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }

    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        v[0] = self.base.from_i64(n);
        v
    }

    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    fn size(&self) -> Option<u64> {
        Some(self.order)
    }

    fn unit_torsion_order(&self) -> u64 {
        self.order - 1
    }

    fn elements(&self) -> Option<Vec<Vec<u64>>> {
        Some((0..self.order).map(|i| self.from_index(i)).collect())
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        self.from_index(rng.gen_range(0..self.order))
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::new(FieldKind::Extension {
            p: self.base.modulus(),
            modulus: self.modulus.clone(),
        })
    }

    fn fmt_elem(&self, a: &Vec<u64>) -> String {
        UniPoly::from_coeffs(&self.base, a.clone()).format_with(&self.base, "w")
    }

    fn parse_elem(&self, s: &str) -> Result<Vec<u64>> {
        let p = self.base.modulus();
        let mut c = vec![0u64; self.degree];
        for (r, d) in parse_sparse(s, Some('w'))? {
            let num = bigint_mod(r.numer(), p);
            let den = bigint_mod(r.denom(), p);
            let v = self
                .base
                .div(&num, &den)
                .ok_or_else(|| Error::Parse(format!("denominator divisible by {p} in {s:?}")))?;
            let d = d as usize;
            if c.len() <= d {
                c.resize(d + 1, 0);
            }
            c[d] = self.base.add(&c[d], &v);
        }
        Ok(self.reduce(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::multiplicative_order;

    #[test]
    fn four_element_field() {
        let f = ExtensionField::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(f.size(), Some(4));
        let w = f.parse_elem("w").unwrap();
        // w^2 = w + 1
        assert_eq!(f.mul(&w, &w), f.parse_elem("w+1").unwrap());
        assert_eq!(multiplicative_order(&f, &w), Some(3));
        for a in f.elements().unwrap().iter().skip(1) {
            assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
        }
        assert_eq!(f.fmt_elem(&f.parse_elem("w+1").unwrap()), "w+1");
    }

    #[test]
    fn reducible_modulus_rejected() {
        // y^2 + 1 = (y + 1)^2 over F_2
        assert!(ExtensionField::new(2, vec![1, 0, 1]).is_err());
        // for quadratics irreducibility is the absence of roots
        let b = PrimeField::new(5).unwrap();
        let f = UniPoly::from_coeffs(&b, vec![2, 0, 1]);
        let has_root = (0..5).any(|x| f.eval(&b, &x) == 0);
        assert_eq!(rabin_irreducible(&b, &f), !has_root);
    }
}
