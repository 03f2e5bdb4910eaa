use rand::Rng;

use super::descriptor::{parse_sparse, FieldDescriptor, FieldKind};
use super::{is_prime, Field};
use crate::error::{Error, Result};

/// The prime field `F_p`, elements stored as canonical residues `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into `0..p`.
    pub fn reduce(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n as i128)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.p)
    }

    fn unit_torsion_order(&self) -> u64 {
        self.p - 1
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::new(FieldKind::Prime { p: self.p })
    }

    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn fmt_signed(&self, a: &u64) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let terms = parse_sparse(s, None)?;
        let mut acc = 0;
        for (c, _) in terms {
            let num = self.reduce(bigint_mod(c.numer(), self.p) as i128);
            let den = self.reduce(bigint_mod(c.denom(), self.p) as i128);
            let v = self
                .div(&num, &den)
                .ok_or_else(|| Error::Parse(format!("denominator divisible by {} in {s:?}", self.p)))?;
            acc = self.add(&acc, &v);
        }
        Ok(acc)
    }
}

pub(crate) fn bigint_mod(n: &num_bigint::BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let m = num_bigint::BigInt::from(p);
    n.mod_floor(&m).to_u64().expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&2, &3), 1);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.neg(&1), 4);
        assert_eq!(f.from_i64(-7), 3);
        assert_eq!(f.parse_elem("-1").unwrap(), 4);
        assert_eq!(f.parse_elem("1/2").unwrap(), 3);
    }

    #[test]
    fn rejects_composite() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn exhaustive_inverses_mod_17() {
        let f = PrimeField::new(17).unwrap();
        for a in 1..17 {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
    }
}
