use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::factor::scaled_integer_candidates;
use super::descriptor::{parse_sparse, FieldDescriptor, FieldKind};
use super::poly::{poly_xgcd, UniPoly};
use super::{divisors, lcm_u64, Field, RationalField};
use crate::error::{Error, Result};

const MAX_N: u64 = 512;

/// `Q(ζ_N) = Q[z]/(Φ_N(z))`. Elements are rational coefficient vectors of
/// length `φ(N)`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicField {
    n: u64,
    phi: UniPoly<BigRational>,
    degree: usize,
}

/// The `n`-th cyclotomic polynomial over `Q`.
pub fn cyclotomic_polynomial(n: u64) -> UniPoly<BigRational> {
    let q = RationalField;
    let mut acc = UniPoly::monomial(&q, q.one(), n as usize).sub(&q, &UniPoly::one(&q));
    for d in divisors(n) {
        if d < n {
            acc = acc.div_exact(&q, &cyclotomic_polynomial(d));
        }
    }
    acc
}

impl CyclotomicField {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidField("cyclotomic index must be ≥ 1".into()));
        }
        if n > MAX_N {
            return Err(Error::InvalidField(format!("cyclotomic index {n} too large")));
        }
        let phi = cyclotomic_polynomial(n);
        let degree = phi.degree().unwrap();
        Ok(CyclotomicField { n, phi, degree })
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce(&self, c: Vec<BigRational>) -> Vec<BigRational> {
        let q = RationalField;
        let r = UniPoly::from_coeffs(&q, c).rem(&q, &self.phi);
        self.pad(r)
    }

    fn pad(&self, p: UniPoly<BigRational>) -> Vec<BigRational> {
        let mut v = p.coeffs().to_vec();
        v.resize(self.degree, RationalField.zero());
        v
    }
}

impl Field for CyclotomicField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Vec<BigRational> {
        vec![RationalField.zero(); self.degree]
    }

    fn one(&self) -> Vec<BigRational> {
        self.from_i64(1)
    }

    fn add(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        let q = RationalField;
        let pa = UniPoly::from_coeffs(&q, a.clone());
        let pb = UniPoly::from_coeffs(&q, b.clone());
        self.pad(pa.mul(&q, &pb).rem(&q, &self.phi))
    }

    fn inv(&self, a: &Vec<BigRational>) -> Option<Vec<BigRational>> {
        let q = RationalField;
        let pa = UniPoly::from_coeffs(&q, a.clone());
        if pa.is_zero() {
            return None;
        }
        // Φ_N is irreducible, so gcd(a, Φ_N) = 1 and u·a ≡ 1.
        let (_, u, _) = poly_xgcd(&q, &pa, &self.phi).ok()?;
        Some(self.pad(u.rem(&q, &self.phi)))
    }

    fn from_i64(&self, n: i64) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = RationalField.from_i64(n);
        v
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn unit_torsion_order(&self) -> u64 {
        lcm_u64(2, self.n)
    }

    fn elements(&self) -> Option<Vec<Vec<BigRational>>> {
        None
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<BigRational> {
        (0..self.degree)
            .map(|_| RationalField.from_i64(rng.gen_range(-5..=5)))
            .collect()
    }

    fn linear_root_candidates(&self, monic_coeffs: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        let (d, ms) = scaled_integer_candidates(monic_coeffs);
        let mut gen = self.zero();
        if self.degree == 1 {
            gen = self.from_i64(-1);
        } else {
            gen[1] = RationalField.one();
            if self.n % 2 == 1 {
                gen = self.neg(&gen);
            }
        }
        let t = self.unit_torsion_order();
        let mut roots = Vec::with_capacity(t as usize);
        let mut w = self.one();
        for _ in 0..t {
            roots.push(w.clone());
            w = self.mul(&w, &gen);
        }
        let mut out = Vec::new();
        for m in ms {
            let r = BigRational::new(m, d.clone());
            for w in &roots {
                out.push(w.iter().map(|c| c * &r).collect());
            }
        }
        out
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::new(FieldKind::Cyclotomic { n: self.n })
    }

    fn fmt_elem(&self, a: &Vec<BigRational>) -> String {
        UniPoly::from_coeffs(&RationalField, a.clone()).format_with(&RationalField, "z")
    }

    fn fmt_signed(&self, a: &Vec<BigRational>) -> (bool, String) {
        if a[1..].iter().all(|c| c.is_zero()) {
            RationalField.fmt_signed(&a[0])
        } else {
            (false, self.fmt_elem(a))
        }
    }

    fn parse_elem(&self, s: &str) -> Result<Vec<BigRational>> {
        let mut c = Vec::new();
        for (r, d) in parse_sparse(s, Some('z'))? {
            let d = d as usize;
            if c.len() <= d {
                c.resize(d + 1, RationalField.zero());
            }
            c[d] += r;
        }
        Ok(self.reduce(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::multiplicative_order;

    #[test]
    fn defining_relation_for_n3() {
        let f = CyclotomicField::new(3).unwrap();
        let z = f.parse_elem("z").unwrap();
        let s = f.add(&f.add(&f.mul(&z, &z), &z), &f.one());
        assert!(f.is_zero(&s));
        assert_eq!(multiplicative_order(&f, &z), Some(3));
        let zi = f.inv(&z).unwrap();
        assert!(f.is_one(&f.mul(&z, &zi)));
        assert_eq!(f.fmt_elem(&zi), "-z-1");
    }

    #[test]
    fn cyclotomic_polynomials() {
        let q = RationalField;
        assert_eq!(cyclotomic_polynomial(1).format(&q), "y-1");
        assert_eq!(cyclotomic_polynomial(4).format(&q), "y^2+1");
        assert_eq!(cyclotomic_polynomial(6).format(&q), "y^2-y+1");
        assert_eq!(cyclotomic_polynomial(12).degree(), Some(4));
    }

    #[test]
    fn inverses_of_small_elements() {
        let f = CyclotomicField::new(5).unwrap();
        for s in ["1+z", "2*z^3-1/2", "z^2+z^3"] {
            let a = f.parse_elem(s).unwrap();
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        assert!(f.inv(&f.zero()).is_none());
    }
}
