use std::collections::BTreeMap;
use std::sync::Arc;

use super::{add_term, HopfPresentation, QuotientSpec, TensorTerms, Terms};
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::grouprep::GroupElement;

/// Basis label `g·xⁱ` as (group index, degree).
pub type Mono = (u32, u32);

/// A linear combination of basis elements `g·xⁱ` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HopfElement<E> {
    tag: u64,
    terms: BTreeMap<Mono, E>,
}

/// A linear combination of `g xⁱ ⊗ h xʲ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElement<E> {
    tag: u64,
    terms: BTreeMap<(Mono, Mono), E>,
}

impl<E> HopfElement<E> {
    pub fn terms(&self) -> &BTreeMap<Mono, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> Option<&E> {
        self.terms.get(&m)
    }

    /// Largest `x`-degree present.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }
}

impl<E> TensorElement<E> {
    pub fn terms(&self) -> &BTreeMap<(Mono, Mono), E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: Mono, r: Mono) -> Option<&E> {
        self.terms.get(&(l, r))
    }
}

impl<F: Field> HopfPresentation<F> {
    pub(crate) fn wrap(&self, terms: Terms<F::Elem>) -> HopfElement<F::Elem> {
        HopfElement { tag: self.tag, terms }
    }

    pub(crate) fn wrap_tensor(&self, terms: TensorTerms<F::Elem>) -> TensorElement<F::Elem> {
        TensorElement { tag: self.tag, terms }
    }

    fn own(&self, u: &HopfElement<F::Elem>) -> Result<()> {
        if u.tag != self.tag {
            return Err(Error::MixedPresentations);
        }
        Ok(())
    }

    fn own_tensor(&self, u: &TensorElement<F::Elem>) -> Result<()> {
        if u.tag != self.tag {
            return Err(Error::MixedPresentations);
        }
        Ok(())
    }

    pub fn zero(&self) -> HopfElement<F::Elem> {
        self.wrap(Terms::new())
    }

    pub fn one(&self) -> HopfElement<F::Elem> {
        self.scalar(self.field.one())
    }

    pub fn scalar(&self, c: F::Elem) -> HopfElement<F::Elem> {
        let mut t = Terms::new();
        add_term(&self.field, &mut t, (0, 0), c);
        self.wrap(t)
    }

    pub fn x(&self) -> HopfElement<F::Elem> {
        self.monomial_idx(0, 1, self.field.one())
    }

    pub fn group_elem(&self, g: &GroupElement) -> Result<HopfElement<F::Elem>> {
        Ok(self.monomial_idx(self.index_of(g)?, 0, self.field.one()))
    }

    /// `a` as an element of the algebra.
    pub fn a_elem(&self) -> HopfElement<F::Elem> {
        self.monomial_idx(self.a_idx, 0, self.field.one())
    }

    /// `c·g·xⁱ`, reduced to normal form.
    pub fn monomial(&self, g: &GroupElement, i: u32, c: F::Elem) -> Result<HopfElement<F::Elem>> {
        Ok(self.monomial_idx(self.index_of(g)?, i, c))
    }

    pub fn monomial_idx(&self, g: u32, i: u32, c: F::Elem) -> HopfElement<F::Elem> {
        let mut t = Terms::new();
        self.push_reduced(&mut t, g, i, c);
        self.wrap(t)
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Mono, F::Elem)>,
    ) -> Result<HopfElement<F::Elem>> {
        let mut t = Terms::new();
        for ((g, i), c) in terms {
            if g as usize >= self.group_order() {
                return Err(Error::GroupMismatch(format!("group index {g} out of range")));
            }
            self.push_reduced(&mut t, g, i, c);
        }
        Ok(self.wrap(t))
    }

    pub fn add(&self, u: &HopfElement<F::Elem>, v: &HopfElement<F::Elem>) -> Result<HopfElement<F::Elem>> {
        self.own(u)?;
        self.own(v)?;
        let mut t = u.terms.clone();
        for (k, c) in &v.terms {
            add_term(&self.field, &mut t, *k, c.clone());
        }
        Ok(self.wrap(t))
    }

    pub fn neg(&self, u: &HopfElement<F::Elem>) -> HopfElement<F::Elem> {
        self.scale(u, &self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, u: &HopfElement<F::Elem>, v: &HopfElement<F::Elem>) -> Result<HopfElement<F::Elem>> {
        self.add(u, &self.neg(v))
    }

    pub fn scale(&self, u: &HopfElement<F::Elem>, c: &F::Elem) -> HopfElement<F::Elem> {
        let mut t = Terms::new();
        for (k, v) in &u.terms {
            add_term(&self.field, &mut t, *k, self.field.mul(v, c));
        }
        HopfElement { tag: u.tag, terms: t }
    }

    /// Writes `c·g·x^d` into `out`, rewriting `xⁿ` by the quotient relation.
    pub(crate) fn push_reduced(&self, out: &mut Terms<F::Elem>, g: u32, d: u32, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match &self.quotient {
            QuotientSpec::None => add_term(&self.field, out, (g, d), c),
            QuotientSpec::PowerZero(n) => {
                if d < *n {
                    add_term(&self.field, out, (g, d), c);
                }
            }
            QuotientSpec::PowerCentral(n, beta) => {
                if d < *n {
                    add_term(&self.field, out, (g, d), c);
                } else {
                    // g x^{d-n} · β(1 − aⁿ), and x^j aⁿ = q^{nj} aⁿ x^j = aⁿ x^j
                    let bc = self.field.mul(beta, &c);
                    let gan = self.gmul(g, self.an_idx);
                    self.push_reduced(out, g, d - n, bc.clone());
                    self.push_reduced(out, gan, d - n, self.field.neg(&bc));
                }
            }
        }
    }

    /// `x · t`
    fn left_x(&self, t: &Terms<F::Elem>) -> Terms<F::Elem> {
        let f = &self.field;
        let mut out = Terms::new();
        for (&(k, m), c) in t {
            self.push_reduced(&mut out, k, m + 1, f.mul(c, &self.twist_vals[k as usize]));
            let al = &self.alpha_vals[k as usize];
            if !f.is_zero(al) {
                let ac = f.mul(c, al);
                self.push_reduced(&mut out, k, m, ac.clone());
                self.push_reduced(&mut out, self.gmul(k, self.a_idx), m, f.neg(&ac));
            }
        }
        out
    }

    /// `xᵐ · h` in normal form.
    pub(crate) fn xpow_times_group(&self, m: u32, h: u32) -> Arc<Terms<F::Elem>> {
        if let Some(t) = self.xpow_group.lock().unwrap().get(&(m, h)) {
            return t.clone();
        }
        let t = if self.alpha_zero {
            let mut t = Terms::new();
            let c = self.field.pow(&self.twist_vals[h as usize], m as u64);
            self.push_reduced(&mut t, h, m, c);
            t
        } else if m == 0 {
            let mut t = Terms::new();
            t.insert((h, 0), self.field.one());
            t
        } else {
            let prev = self.xpow_times_group(m - 1, h);
            self.left_x(&prev)
        };
        let t = Arc::new(t);
        self.xpow_group.lock().unwrap().insert((m, h), t.clone());
        t
    }

    /// `(k xⁱ)(h xʲ)` accumulated into `out` with coefficient `c`.
    fn mono_mul_into(&self, out: &mut Terms<F::Elem>, (k, i): Mono, (h, j): Mono, c: &F::Elem) {
        let f = &self.field;
        let mid = self.xpow_times_group(i, h);
        for (&(l, e), v) in mid.iter() {
            self.push_reduced(out, self.gmul(k, l), e + j, f.mul(c, v));
        }
    }

    pub(crate) fn mono_mul(&self, a: Mono, b: Mono) -> Terms<F::Elem> {
        let mut out = Terms::new();
        self.mono_mul_into(&mut out, a, b, &self.field.one());
        out
    }

    pub(crate) fn mul_terms(&self, u: &Terms<F::Elem>, v: &Terms<F::Elem>) -> Terms<F::Elem> {
        let f = &self.field;
        let mut out = Terms::new();
        for (&a, ca) in u {
            for (&b, cb) in v {
                self.mono_mul_into(&mut out, a, b, &f.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul(&self, u: &HopfElement<F::Elem>, v: &HopfElement<F::Elem>) -> Result<HopfElement<F::Elem>> {
        self.own(u)?;
        self.own(v)?;
        Ok(self.wrap(self.mul_terms(&u.terms, &v.terms)))
    }

    pub fn pow(&self, u: &HopfElement<F::Elem>, e: u32) -> Result<HopfElement<F::Elem>> {
        self.own(u)?;
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, u)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, u: &HopfElement<F::Elem>, v: &HopfElement<F::Elem>) -> Result<TensorElement<F::Elem>> {
        self.own(u)?;
        self.own(v)?;
        let f = &self.field;
        let mut t = TensorTerms::new();
        for (&a, ca) in &u.terms {
            for (&b, cb) in &v.terms {
                add_term(f, &mut t, (a, b), f.mul(ca, cb));
            }
        }
        Ok(self.wrap_tensor(t))
    }

    pub fn tensor_add(&self, u: &TensorElement<F::Elem>, v: &TensorElement<F::Elem>) -> Result<TensorElement<F::Elem>> {
        self.own_tensor(u)?;
        self.own_tensor(v)?;
        let mut t = u.terms.clone();
        for (k, c) in &v.terms {
            add_term(&self.field, &mut t, *k, c.clone());
        }
        Ok(self.wrap_tensor(t))
    }

    pub fn tensor_sub(&self, u: &TensorElement<F::Elem>, v: &TensorElement<F::Elem>) -> Result<TensorElement<F::Elem>> {
        self.own_tensor(v)?;
        let f = &self.field;
        let m1 = f.neg(&f.one());
        let neg = TensorElement {
            tag: v.tag,
            terms: v.terms.iter().map(|(k, c)| (*k, f.mul(c, &m1))).collect(),
        };
        self.tensor_add(u, &neg)
    }

    pub(crate) fn tensor_mul_terms(&self, u: &TensorTerms<F::Elem>, v: &TensorTerms<F::Elem>) -> TensorTerms<F::Elem> {
        let f = &self.field;
        let mut out = TensorTerms::new();
        for (&(a1, a2), ca) in u {
            for (&(b1, b2), cb) in v {
                let l = self.mono_mul(a1, b1);
                if l.is_empty() {
                    continue;
                }
                let r = self.mono_mul(a2, b2);
                let c = f.mul(ca, cb);
                for (&lk, lc) in &l {
                    let lc = f.mul(&c, lc);
                    for (&rk, rc) in &r {
                        add_term(f, &mut out, (lk, rk), f.mul(&lc, rc));
                    }
                }
            }
        }
        out
    }

    pub fn tensor_mul(&self, u: &TensorElement<F::Elem>, v: &TensorElement<F::Elem>) -> Result<TensorElement<F::Elem>> {
        self.own_tensor(u)?;
        self.own_tensor(v)?;
        Ok(self.wrap_tensor(self.tensor_mul_terms(&u.terms, &v.terms)))
    }

    /// `Δ(xⁱ)`, built as `Δ(x)ⁱ` in `H ⊗ H`.
    pub(crate) fn comul_xpow(&self, i: u32) -> Arc<TensorTerms<F::Elem>> {
        {
            let cache = self.comul_xpow.lock().unwrap();
            if let Some(t) = cache.get(i as usize) {
                return t.clone();
            }
        }
        let f = &self.field;
        let mut delta_x = TensorTerms::new();
        add_term(f, &mut delta_x, ((0, 1), (self.a_idx, 0)), f.one());
        add_term(f, &mut delta_x, ((0, 0), (0, 1)), f.one());
        loop {
            let (len, last) = {
                let cache = self.comul_xpow.lock().unwrap();
                (cache.len(), cache.last().cloned())
            };
            if len > i as usize {
                break;
            }
            let next = match last {
                None => {
                    let mut t = TensorTerms::new();
                    t.insert(((0, 0), (0, 0)), f.one());
                    t
                }
                Some(prev) => self.tensor_mul_terms(&prev, &delta_x),
            };
            let mut cache = self.comul_xpow.lock().unwrap();
            if cache.len() == len {
                cache.push(Arc::new(next));
            }
        }
        self.comul_xpow.lock().unwrap()[i as usize].clone()
    }

    pub(crate) fn comul_mono_into(&self, out: &mut TensorTerms<F::Elem>, (g, i): Mono, c: &F::Elem) {
        let f = &self.field;
        let base = self.comul_xpow(i);
        for (&((l1, d1), (l2, d2)), v) in base.iter() {
            add_term(f, out, ((self.gmul(g, l1), d1), (self.gmul(g, l2), d2)), f.mul(c, v));
        }
    }

    pub(crate) fn comul_terms(&self, u: &Terms<F::Elem>) -> TensorTerms<F::Elem> {
        let mut out = TensorTerms::new();
        for (&m, c) in u {
            self.comul_mono_into(&mut out, m, c);
        }
        out
    }

    pub fn comul(&self, u: &HopfElement<F::Elem>) -> Result<TensorElement<F::Elem>> {
        self.own(u)?;
        Ok(self.wrap_tensor(self.comul_terms(&u.terms)))
    }

    pub fn counit(&self, u: &HopfElement<F::Elem>) -> Result<F::Elem> {
        self.own(u)?;
        Ok(self.counit_terms(&u.terms))
    }

    pub(crate) fn counit_terms(&self, u: &Terms<F::Elem>) -> F::Elem {
        u.iter()
            .filter(|((_, d), _)| *d == 0)
            .fold(self.field.zero(), |acc, (_, c)| self.field.add(&acc, c))
    }

    /// `S(g xⁱ) = S(x)ⁱ g⁻¹` with `S(x) = −x a⁻¹`.
    pub(crate) fn antipode_mono(&self, (g, i): Mono) -> Terms<F::Elem> {
        let f = &self.field;
        let mut sx = Terms::new();
        self.mono_mul_into(&mut sx, (0, 1), (self.ginv(self.a_idx), 0), &f.neg(&f.one()));
        let mut acc = Terms::new();
        acc.insert((0, 0), f.one());
        for _ in 0..i {
            acc = self.mul_terms(&acc, &sx);
        }
        let mut ginv = Terms::new();
        ginv.insert((self.ginv(g), 0), f.one());
        self.mul_terms(&acc, &ginv)
    }

    pub(crate) fn antipode_terms(&self, u: &Terms<F::Elem>) -> Terms<F::Elem> {
        let f = &self.field;
        let mut out = Terms::new();
        for (&m, c) in u {
            for (k, v) in self.antipode_mono(m) {
                add_term(f, &mut out, k, f.mul(c, &v));
            }
        }
        out
    }

    pub fn antipode(&self, u: &HopfElement<F::Elem>) -> Result<HopfElement<F::Elem>> {
        self.own(u)?;
        Ok(self.wrap(self.antipode_terms(&u.terms)))
    }

    fn format_mono(&self, (g, d): Mono) -> String {
        let xs = match d {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{d}"),
        };
        match (g, d) {
            (0, 0) => "1".into(),
            (0, _) => xs,
            (_, 0) => self.format_group(g),
            _ => format!("{}*{xs}", self.format_group(g)),
        }
    }

    fn format_sum<K: Copy + Ord>(
        &self,
        terms: &BTreeMap<K, F::Elem>,
        order: Vec<K>,
        show: impl Fn(K) -> String,
    ) -> String {
        let mut out = String::new();
        for (pos, k) in order.into_iter().enumerate() {
            let (neg, mag) = self.field.fmt_signed(&terms[&k]);
            let body = show(k);
            let piece = if mag == "1" {
                body
            } else if body == "1" {
                wrap_compound(&mag)
            } else {
                format!("{}*{body}", wrap_compound(&mag))
            };
            let sep = match (pos, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            out.push_str(&piece);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// Human-readable form, highest degree first: `x^5 - x`, `1 - g`.
    pub fn format(&self, u: &HopfElement<F::Elem>) -> String {
        let mut order: Vec<Mono> = u.terms.keys().copied().collect();
        order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        self.format_sum(&u.terms, order, |m| self.format_mono(m))
    }

    pub fn format_tensor(&self, u: &TensorElement<F::Elem>) -> String {
        let order: Vec<(Mono, Mono)> = u.terms.keys().copied().collect();
        self.format_sum(&u.terms, order, |(l, r)| {
            format!("{} ⊗ {}", self.format_mono(l), self.format_mono(r))
        })
    }
}

fn wrap_compound(s: &str) -> String {
    if s.contains(['+', '-']) && !s.starts_with('(') {
        format!("({s})")
    } else {
        s.to_string()
    }
}
