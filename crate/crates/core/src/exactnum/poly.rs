//! Dense univariate polynomials over a [`Field`], in the variable `y`.
//!
//! A `UniPoly` stores only coefficients (lowest degree first, no trailing
//! zeros); every operation takes the field handle explicitly.

use serde::{Deserialize, Serialize};

use super::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    /// `c·y^d`
    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, d: usize) -> Self {
        if field.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        UniPoly { coeffs }
    }

    /// `y - c`
    pub fn linear<F: Field<Elem = E>>(field: &F, c: &E) -> Self {
        UniPoly {
            coeffs: vec![field.neg(c), field.one()],
        }
    }

    pub fn y<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.lead().is_some_and(|c| field.is_one(c))
    }

    pub fn is_one<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.len() == 1 && field.is_one(&self.coeffs[0])
    }

    /// True for the polynomial `y` itself.
    pub fn is_y<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.len() == 2 && field.is_zero(&self.coeffs[0]) && field.is_one(&self.coeffs[1])
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::from_coeffs(field, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = field.mul(a, b);
                c[i + j] = field.add(&c[i + j], &t);
            }
        }
        Self::from_coeffs(field, c)
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn divrem<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = field.mul(&r[i], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            let shift = i - dd;
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = field.mul(&c, dj);
                r[shift + j] = field.sub(&r[shift + j], &t);
            }
            q[shift] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(field, q), Self::from_coeffs(field, r))
    }

    pub fn rem<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> Self {
        self.divrem(field, d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> Self {
        let (q, r) = self.divrem(field, d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let li = field.inv(l).unwrap();
                self.scale(field, &li)
            }
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| field.mul(&field.from_i64(i as i64), a))
            .collect();
        Self::from_coeffs(field, c)
    }

    /// `self(y^k)`
    pub fn inflate<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![field.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        Self::from_coeffs(field, c)
    }

    /// `self^e mod m` by square-and-multiply with a little-endian bit list.
    pub fn powmod_bits<F: Field<Elem = E>>(&self, field: &F, bits: &[bool], m: &Self) -> Self {
        let mut acc = Self::one(field).rem(field, m);
        for &b in bits.iter().rev() {
            acc = acc.mul(field, &acc).rem(field, m);
            if b {
                acc = acc.mul(field, self).rem(field, m);
            }
        }
        acc
    }

    pub fn powmod<F: Field<Elem = E>>(&self, field: &F, e: u64, m: &Self) -> Self {
        let bits: Vec<bool> = (0..64).map(|i| (e >> i) & 1 == 1).collect();
        self.powmod_bits(field, &bits, m)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Prints with `var` as the indeterminate, e.g. `y^2+3*y+1`, `y-2`.
    pub fn format_with<F: Field<Elem = E>>(&self, field: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let (mut neg, mut mag) = field.fmt_signed(c);
            if !neg && mag.starts_with('-') && !mag[1..].contains(['+', '-']) {
                neg = true;
                mag.remove(0);
            }
            let compound = mag.contains(['+', '-', '*', '/']) && (i > 0 || !out.is_empty());
            let mag = if compound { format!("({mag})") } else { mag };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        self.format_with(field, "y")
    }

    /// Parses a polynomial in `y`. Coefficients are rational literals or
    /// parenthesised field literals, e.g. `y^2 - (z+1)*y + 1/2`.
    pub fn parse<F: Field<Elem = E>>(field: &F, s: &str) -> Result<Self> {
        let mut acc = Self::zero();
        for (sign, term) in split_terms(s)? {
            let mut coeff = field.one();
            let mut deg = 0usize;
            for factor in split_factors(&term)? {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('y') {
                    let rest = rest.trim();
                    let d = if rest.is_empty() {
                        1
                    } else {
                        let e = rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("bad monomial {factor:?}")))?;
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?
                    };
                    deg += d;
                } else {
                    let inner = factor
                        .strip_prefix('(')
                        .and_then(|f| f.strip_suffix(')'))
                        .unwrap_or(factor);
                    coeff = field.mul(&coeff, &field.parse_elem(inner)?);
                }
            }
            if sign {
                coeff = field.neg(&coeff);
            }
            acc = acc.add(field, &Self::monomial(field, coeff, deg));
        }
        Ok(acc)
    }
}

/// Splits at top-level `+`/`-`, returning (negated, term) pairs.
pub(crate) fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !matches!(prev, Some('^') | Some('*') | Some('/')) => {
                if !cur.is_empty() {
                    out.push((neg, std::mem::take(&mut cur)));
                    neg = false;
                } else if prev.is_some() && !matches!(prev, Some('+') | Some('-')) {
                    return Err(Error::Parse(format!("misplaced sign in {s:?}")));
                }
                if ch == '-' {
                    neg = !neg;
                }
            }
            _ => cur.push(ch),
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Splits a term at top-level `*`.
pub(crate) fn split_factors(term: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in term.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == '*' && depth == 0 {
            if cur.is_empty() {
                return Err(Error::Parse(format!("empty factor in {term:?}")));
            }
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("empty factor in {term:?}")));
    }
    out.push(cur);
    Ok(out)
}

/// Extended gcd: returns `(g, u, v)` with `u·f + v·g = g`, `g` monic.
pub fn poly_xgcd<F: Field>(
    field: &F,
    f: &UniPoly<F::Elem>,
    g: &UniPoly<F::Elem>,
) -> Result<(UniPoly<F::Elem>, UniPoly<F::Elem>, UniPoly<F::Elem>)> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (UniPoly::one(field), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(field, &r1);
        let s2 = s0.sub(field, &q.mul(field, &s1));
        let t2 = t0.sub(field, &q.mul(field, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let li = field.inv(r0.lead().unwrap()).unwrap();
    Ok((r0.scale(field, &li), s0.scale(field, &li), t0.scale(field, &li)))
}
