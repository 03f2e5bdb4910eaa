use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::descriptor::{parse_sparse, FieldDescriptor, FieldKind};
use super::factor::scaled_integer_candidates;
use super::Field;
use crate::error::{Error, Result};

/// The rational numbers, used as the coefficient field of cyclotomic
/// arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn unit_torsion_order(&self) -> u64 {
        2
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-5..=5))
    }

    fn linear_root_candidates(&self, monic_coeffs: &[BigRational]) -> Vec<BigRational> {
        let coords: Vec<Vec<BigRational>> = monic_coeffs.iter().map(|c| vec![c.clone()]).collect();
        let (d, ms) = scaled_integer_candidates(&coords);
        ms.into_iter()
            .map(|m| BigRational::new(m, d.clone()))
            .collect()
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::new(FieldKind::Cyclotomic { n: 1 })
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn fmt_signed(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let terms = parse_sparse(s, None)?;
        if terms.is_empty() {
            return Err(Error::Parse(format!("empty literal {s:?}")));
        }
        Ok(terms.into_iter().map(|(c, _)| c).sum())
    }
}
