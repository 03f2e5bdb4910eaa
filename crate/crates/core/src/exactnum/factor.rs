//! Polynomial factorization: complete over finite fields (squarefree,
//! distinct-degree and equal-degree splitting), linear-factor peeling over
//! characteristic-zero fields.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::poly::UniPoly;
use super::Field;
use crate::error::{Error, Result};

/// `unit · ∏ factor^multiplicity` with monic irreducible, pairwise distinct
/// factors sorted by degree and then coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorList<E> {
    pub unit: E,
    pub factors: Vec<(UniPoly<E>, u32)>,
}

impl<E: Clone + Eq + Ord> FactorList<E> {
    /// Multiplies the factorization back out.
    pub fn expand<F: Field<Elem = E>>(&self, field: &F) -> UniPoly<E> {
        self.factors
            .iter()
            .fold(UniPoly::constant(field, self.unit.clone()), |acc, (f, m)| {
                acc.mul(field, &f.pow(field, *m as u64))
            })
    }

    fn sort(&mut self) {
        self.factors
            .sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    }
}

/// Factors `f` with seed 0.
pub fn poly_factor<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Result<FactorList<F::Elem>> {
    poly_factor_seeded(field, f, 0)
}

/// Factors `f`; over characteristic-zero fields any residual factor of
/// degree ≥ 2 is reported as [`Error::IncompleteFactorization`].
pub fn poly_factor_seeded<F: Field>(
    field: &F,
    f: &UniPoly<F::Elem>,
    seed: u64,
) -> Result<FactorList<F::Elem>> {
    let (list, residual) = poly_factor_partial(field, f, seed)?;
    match residual {
        Some(r) => Err(Error::IncompleteFactorization {
            field: field.descriptor().to_string(),
            residual: r.format(field),
        }),
        None => Ok(list),
    }
}

/// Like [`poly_factor_seeded`] but returns the uncertified residual (monic,
/// coprime to every listed factor) instead of failing.
pub fn poly_factor_partial<F: Field>(
    field: &F,
    f: &UniPoly<F::Elem>,
    seed: u64,
) -> Result<(FactorList<F::Elem>, Option<UniPoly<F::Elem>>)> {
    let unit = f.lead().cloned().ok_or(Error::FactorZero)?;
    let monic = f.monic(field);
    let mut list = FactorList {
        unit,
        factors: Vec::new(),
    };
    let mut residual = None;
    if field.is_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (g, mult) in squarefree(field, &monic) {
            for (h, d) in distinct_degree(field, &g) {
                for irr in equal_degree(field, &h, d, &mut rng) {
                    list.factors.push((irr, mult));
                }
            }
        }
    } else {
        let (peeled, rest) = peel_linear(field, &monic);
        list.factors = peeled;
        match rest.degree() {
            Some(0) | None => {}
            Some(1) => list.factors.push((rest, 1)),
            Some(_) => residual = Some(rest),
        }
    }
    list.sort();
    Ok((list, residual))
}

/// Squarefree decomposition of a monic polynomial over a finite field.
fn squarefree<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Vec<(UniPoly<F::Elem>, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = field.characteristic() as usize;
    let df = f.derivative(field);
    let mut c = f.gcd(field, &df);
    let mut w = f.div_exact(field, &c);
    let mut i = 1u32;
    while !w.is_one(field) {
        let y = w.gcd(field, &c);
        let fac = w.div_exact(field, &y);
        if !fac.is_one(field) {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(field, &w);
        i += 1;
    }
    if !c.is_one(field) {
        // c is a polynomial in y^p
        let coeffs = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| field.pth_root(a))
            .collect();
        let root = UniPoly::from_coeffs(field, coeffs);
        for (g, j) in squarefree(field, &root) {
            out.push((g, j * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Vec<(UniPoly<F::Elem>, usize)> {
    let q = field.size().unwrap();
    let y = UniPoly::y(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = y.rem(field, &rest);
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(field, q, &rest);
        let g = h.sub(field, &y).gcd(field, &rest);
        if !g.is_one(field) {
            rest = rest.div_exact(field, &g);
            h = h.rem(field, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (trace map in characteristic 2).
fn equal_degree<F: Field>(
    field: &F,
    f: &UniPoly<F::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<UniPoly<F::Elem>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let q = field.size().unwrap();
    let odd = q % 2 == 1;
    let bits = if odd {
        let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) >> 1usize;
        to_bits(&e)
    } else {
        Vec::new()
    };
    loop {
        let a = UniPoly::from_coeffs(field, (0..n).map(|_| field.random_elem(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if odd {
            a.powmod_bits(field, &bits, f).sub(field, &UniPoly::one(field))
        } else {
            // T(a) = a + a^2 + … + a^(2^(m·d - 1)) with q = 2^m
            let steps = (q.trailing_zeros() as usize) * d;
            let mut t = a.rem(field, f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(field, &t).rem(field, f);
                acc = acc.add(field, &t);
            }
            acc
        };
        let g = b.gcd(field, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(field, &g);
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h, d, rng));
            return out;
        }
    }
}

fn to_bits(e: &BigUint) -> Vec<bool> {
    (0..e.bits()).map(|i| e.bit(i)).collect()
}

/// Removes linear factors whose roots lie in the field's candidate set.
fn peel_linear<F: Field>(
    field: &F,
    f: &UniPoly<F::Elem>,
) -> (Vec<(UniPoly<F::Elem>, u32)>, UniPoly<F::Elem>) {
    let mut rest = f.clone();
    let mut out = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return (out, rest);
    }
    let mut candidates = field.linear_root_candidates(rest.coeffs());
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && field.is_zero(&rest.eval(field, &c)) {
            rest = rest.div_exact(field, &UniPoly::linear(field, &c));
            mult += 1;
        }
        if mult > 0 {
            out.push((UniPoly::linear(field, &c), mult));
        }
    }
    (out, rest)
}

/// For a monic polynomial whose coefficients have the given rational
/// coordinates (in an integral basis), returns `D` and the integers `m` such
/// that every root of the form (rational)·(root of unity) equals
/// `(m/D)·(root of unity)` for one of them.
pub(crate) fn scaled_integer_candidates(coords: &[Vec<BigRational>]) -> (BigInt, Vec<BigInt>) {
    let deg = coords.len() - 1;
    let mut d = BigInt::one();
    for c in coords.iter().flatten() {
        d = d.lcm(c.denom());
    }
    // constant term of D^deg · f(y / D)
    let scale = num_traits::pow(d.clone(), deg);
    let mut g = BigInt::zero();
    for c in &coords[0] {
        let v = c * BigRational::from_integer(scale.clone());
        debug_assert!(v.is_integer());
        g = g.gcd(&v.to_integer());
    }
    let mut ms = vec![BigInt::zero()];
    if !g.is_zero() {
        for k in small_divisors(&g) {
            ms.push(k.clone());
            ms.push(-k);
        }
    }
    (d, ms)
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    const LIMIT: u64 = 1_000_000;
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = 1u64;
    loop {
        let kb = BigInt::from(k);
        if &kb * &kb > n || k > LIMIT {
            break;
        }
        if (&n % &kb).is_zero() {
            out.push(kb.clone());
            let other = &n / &kb;
            if other != kb && other.to_u64().is_some_and(|o| o <= LIMIT * LIMIT) {
                out.push(other);
            }
        }
        k += 1;
    }
    out
}
