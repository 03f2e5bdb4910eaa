use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{split_factors, split_terms};
use super::{CyclotomicField, ExtensionField, Field, PrimeField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Prime { p: u64 },
    /// `modulus` is monic, lowest coefficient first.
    Extension { p: u64, modulus: Vec<u64> },
    Cyclotomic { n: u64 },
}

/// Serializable description of a base field, written `Fp(5)`,
/// `Fq(2, y^2+y+1)` or `QZeta(3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind) -> Self {
        FieldDescriptor { kind }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
            FieldKind::Cyclotomic { .. } => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Prime { p } => write!(f, "Fp({p})"),
            FieldKind::Extension { p, modulus } => {
                let base = PrimeField::new(*p).map_err(|_| fmt::Error)?;
                let poly = super::UniPoly::from_coeffs(&base, modulus.clone());
                write!(f, "Fq({p}, {})", poly.format(&base))
            }
            FieldKind::Cyclotomic { n } => write!(f, "QZeta({n})"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::InvalidField(format!("expected Name(args), got {s:?}")))?;
        let name = s[..open].trim();
        let args = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::InvalidField(format!("missing ')' in {s:?}")))?;
        let int = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidField(format!("bad integer {t:?} in {s:?}")))
        };
        let kind = match name {
            "Fp" => FieldKind::Prime { p: int(args)? },
            "Fq" => {
                let (p, m) = args
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidField(format!("Fq needs (p, modulus): {s:?}")))?;
                let p = int(p)?;
                let base = PrimeField::new(p)?;
                let poly = super::UniPoly::parse(&base, m)?;
                FieldKind::Extension {
                    p,
                    modulus: poly.coeffs().to_vec(),
                }
            }
            "QZeta" => FieldKind::Cyclotomic { n: int(args)? },
            _ => return Err(Error::InvalidField(format!("unknown field kind {name:?}"))),
        };
        Ok(FieldDescriptor { kind })
    }
}

/// A field chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyField {
    Prime(PrimeField),
    Extension(ExtensionField),
    Cyclotomic(CyclotomicField),
}

impl AnyField {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyField::Prime(f) => f.descriptor(),
            AnyField::Extension(f) => f.descriptor(),
            AnyField::Cyclotomic(f) => f.descriptor(),
        }
    }
}

/// Validates a descriptor and builds the corresponding field handle.
pub fn make_field(spec: &FieldDescriptor) -> Result<AnyField> {
    Ok(match &spec.kind {
        FieldKind::Prime { p } => AnyField::Prime(PrimeField::new(*p)?),
        FieldKind::Extension { p, modulus } => {
            AnyField::Extension(ExtensionField::new(*p, modulus.clone())?)
        }
        FieldKind::Cyclotomic { n } => AnyField::Cyclotomic(CyclotomicField::new(*n)?),
    })
}

/// Parses a sum of monomials with rational coefficients in `var`
/// (or constants only when `var` is `None`), e.g. `2*z^2 - 1/3`.
pub(crate) fn parse_sparse(s: &str, var: Option<char>) -> Result<Vec<(BigRational, u32)>> {
    let mut out = Vec::new();
    for (neg, term) in split_terms(s)? {
        let mut c = BigRational::one();
        let mut deg = 0u32;
        for factor in split_factors(&term)? {
            if let Some(v) = var {
                if let Some(rest) = factor.strip_prefix(v) {
                    deg += if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<u32>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad monomial {factor:?}")))?
                    };
                    continue;
                }
            }
            c *= parse_rational(&factor)?;
        }
        if neg {
            c = -c;
        }
        out.push((c, deg));
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    let bad = || Error::Parse(format!("bad number {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for s in ["Fp(5)", "Fq(2, y^2+y+1)", "QZeta(3)"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("Fx(3)".parse::<FieldDescriptor>().is_err());
        assert!("Fp(5".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn make_field_validates() {
        assert!(make_field(&"Fp(4)".parse().unwrap()).is_err());
        assert!(make_field(&"Fq(2, y^2+1)".parse().unwrap()).is_err());
        assert!(make_field(&"QZeta(0)".parse().unwrap()).is_err());
        assert!(make_field(&"Fq(2, y^2+y+1)".parse().unwrap()).is_ok());
    }

    #[test]
    fn sparse_terms() {
        let t = parse_sparse("2*z^2 - 1/3 + z", Some('z')).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].1, 2);
        assert_eq!(t[1].0, BigRational::new((-1).into(), 3.into()));
        assert!(parse_sparse("z", None).is_err());
    }
}
