//! The Hopf-Ore extension `H = kG(χ⁻¹, a, δ)` of a finite abelian group
//! algebra and its rank-one quotients `H/I`.
//!
//! Relation: `x g = χ⁻¹(g) g x + α(g) g (1 − a)`, with `Δ(x) = x⊗a + 1⊗x`,
//! `ε(x) = 0`, `S(x) = −x a⁻¹`. The cocycle `α` is taken with respect to the
//! twisting character `χ⁻¹`, so `q = χ⁻¹(a)`.

pub mod axioms;
mod element;
pub mod primitives;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{multiplicative_order, Field};
use crate::grouprep::{
    char_eval_unchecked, char_inv, char_order, check_character, cocycle_check, cocycle_eval,
    AbelianGroup, Character, Cocycle, GroupElement,
};

pub use axioms::{AxiomCheck, AxiomFailure, AxiomReport};
pub use element::{HopfElement, Mono, TensorElement};
pub use primitives::{predicted_primitive_degrees, PrimitiveScan, RankClass, RankReport};

pub(crate) type Terms<E> = BTreeMap<Mono, E>;
pub(crate) type TensorTerms<E> = BTreeMap<(Mono, Mono), E>;

/// The Hopf ideal `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuotientSpec<E> {
    None,
    /// `I = ⟨xⁿ⟩`
    PowerZero(u32),
    /// `I = ⟨xⁿ − β(1 − aⁿ)⟩`, `β ≠ 0`
    PowerCentral(u32, E),
}

impl<E> QuotientSpec<E> {
    /// Nilpotency bound `n` of the normal form, if any.
    pub fn n(&self) -> Option<u32> {
        match self {
            QuotientSpec::None => None,
            QuotientSpec::PowerZero(n) | QuotientSpec::PowerCentral(n, _) => Some(*n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// `χ(a) ≠ 1`
    Case1,
    /// `χ(a) = 1`, `α(a) = 0`
    Case2,
    /// `χ(a) = 1`, `α(a) ≠ 0`
    Case3,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Case::Case1 => 1,
            Case::Case2 => 2,
            Case::Case3 => 3,
        };
        write!(f, "Case{n}")
    }
}

/// Result of [`HopfPresentation::case_normalize`]: `x′ = x − γ(1 − a)`
/// satisfies the untwisted relation `x′g = χ⁻¹(g) g x′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationWitness<E> {
    pub gamma: E,
}

enum Validation {
    Full,
    Unnormalized,
    Unchecked,
}

pub struct HopfPresentation<F: Field> {
    field: F,
    group: AbelianGroup,
    chi: Character<F::Elem>,
    twist: Character<F::Elem>,
    a: GroupElement,
    alpha: Cocycle<F::Elem>,
    quotient: QuotientSpec<F::Elem>,
    q: F::Elem,
    s: Option<u64>,
    case: Case,
    tag: u64,

    exps: Vec<Vec<u64>>,
    strides: Vec<u64>,
    twist_vals: Vec<F::Elem>,
    alpha_vals: Vec<F::Elem>,
    alpha_zero: bool,
    a_idx: u32,
    an_idx: u32,
    inv_idx: Vec<u32>,

    xpow_group: Mutex<HashMap<(u32, u32), Arc<Terms<F::Elem>>>>,
    comul_xpow: Mutex<Vec<Arc<TensorTerms<F::Elem>>>>,
}

impl<F: Field> fmt::Debug for HopfPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfPresentation")
            .field("field", &self.field.descriptor().to_string())
            .field("group", &self.group.factors())
            .field("chi", &self.chi)
            .field("a", &self.a)
            .field("alpha", &self.alpha)
            .field("quotient", &self.quotient)
            .field("case", &self.case)
            .finish()
    }
}

impl<F: Field> Clone for HopfPresentation<F> {
    fn clone(&self) -> Self {
        HopfPresentation {
            field: self.field.clone(),
            group: self.group.clone(),
            chi: self.chi.clone(),
            twist: self.twist.clone(),
            a: self.a.clone(),
            alpha: self.alpha.clone(),
            quotient: self.quotient.clone(),
            q: self.q.clone(),
            s: self.s,
            case: self.case,
            tag: self.tag,
            exps: self.exps.clone(),
            strides: self.strides.clone(),
            twist_vals: self.twist_vals.clone(),
            alpha_vals: self.alpha_vals.clone(),
            alpha_zero: self.alpha_zero,
            a_idx: self.a_idx,
            an_idx: self.an_idx,
            inv_idx: self.inv_idx.clone(),
            xpow_group: Mutex::new(HashMap::new()),
            comul_xpow: Mutex::new(Vec::new()),
        }
    }
}

impl<F: Field> PartialEq for HopfPresentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.group == other.group
            && self.chi == other.chi
            && self.a == other.a
            && self.alpha == other.alpha
            && self.quotient == other.quotient
    }
}

impl<F: Field> Eq for HopfPresentation<F> {}

impl<F: Field> HopfPresentation<F> {
    /// Validated presentation. Case 1 input with `α ≠ 0` is replaced by the
    /// equivalent presentation with `α ≡ 0`.
    pub fn new(
        field: F,
        group: AbelianGroup,
        chi: Character<F::Elem>,
        a: GroupElement,
        alpha: Cocycle<F::Elem>,
        quotient: QuotientSpec<F::Elem>,
    ) -> Result<Self> {
        let p = Self::build(field, group, chi, a, alpha, quotient, Validation::Full)?;
        if p.case == Case::Case1 && !p.alpha_zero {
            return Ok(p.case_normalize()?.0);
        }
        Ok(p)
    }

    /// Like [`new`](Self::new) but keeps a nonzero Case 1 cocycle as given.
    /// Only the unquotiented algebra is available in this form.
    pub fn new_unnormalized(
        field: F,
        group: AbelianGroup,
        chi: Character<F::Elem>,
        a: GroupElement,
        alpha: Cocycle<F::Elem>,
    ) -> Result<Self> {
        Self::build(field, group, chi, a, alpha, QuotientSpec::None, Validation::Unnormalized)
    }

    /// Skips the character and cocycle checks. Arithmetic still runs, but
    /// the result need not be a Hopf algebra; meant for negative controls.
    pub fn new_unchecked(
        field: F,
        group: AbelianGroup,
        chi: Character<F::Elem>,
        a: GroupElement,
        alpha: Cocycle<F::Elem>,
    ) -> Result<Self> {
        Self::build(field, group, chi, a, alpha, QuotientSpec::None, Validation::Unchecked)
    }

    fn build(
        field: F,
        group: AbelianGroup,
        chi: Character<F::Elem>,
        a: GroupElement,
        alpha: Cocycle<F::Elem>,
        quotient: QuotientSpec<F::Elem>,
        mode: Validation,
    ) -> Result<Self> {
        if !group.contains(&a) {
            return Err(Error::GroupMismatch(format!("a = {:?} is not in the group", a.0)));
        }
        if chi.images.len() != group.rank() || alpha.values.len() != group.rank() {
            return Err(Error::GroupMismatch(format!(
                "chi and alpha need {} generator values",
                group.rank()
            )));
        }
        if chi.images.iter().any(|w| field.is_zero(w)) {
            return Err(Error::InvalidCharacter("character values must be nonzero".into()));
        }
        if !matches!(mode, Validation::Unchecked) {
            check_character(&field, &group, &chi)?;
        }
        let twist = char_inv(&field, &chi);
        if !matches!(mode, Validation::Unchecked) && !cocycle_check(&field, &group, &alpha, &twist) {
            return Err(Error::InvalidCocycle(
                "alpha violates α(gh) = α(g) + χ⁻¹(g)α(h) on generator orders or commutators".into(),
            ));
        }
        let q = char_eval_unchecked(&field, &twist, &a);
        let alpha_a = cocycle_eval(&field, &alpha, &twist, &a);
        let case = if !field.is_one(&q) {
            Case::Case1
        } else if field.is_zero(&alpha_a) {
            Case::Case2
        } else {
            Case::Case3
        };
        let s = char_order(&field, &chi);

        if let Some(n) = quotient.n() {
            Self::check_quotient(&field, &group, &a, &q, s, &quotient, n)?;
        }

        let order = group.order() as usize;
        let elements = group.elements();
        let mut strides = Vec::with_capacity(group.rank());
        let mut st = 1u64;
        for &n in group.factors() {
            strides.push(st);
            st *= n;
        }
        let twist_vals: Vec<F::Elem> = elements
            .iter()
            .map(|g| char_eval_unchecked(&field, &twist, g))
            .collect();
        let alpha_vals: Vec<F::Elem> = elements
            .iter()
            .map(|g| cocycle_eval(&field, &alpha, &twist, g))
            .collect();
        let alpha_zero = alpha_vals.iter().all(|v| field.is_zero(v));
        let inv_idx = elements
            .iter()
            .map(|g| group.index(&group.inv(g)) as u32)
            .collect();
        let a_idx = group.index(&a) as u32;
        let an_idx = match quotient.n() {
            Some(n) => group.index(&group.pow(&a, n as i64)) as u32,
            None => 0,
        };

        let mut hasher = DefaultHasher::new();
        field.descriptor().to_string().hash(&mut hasher);
        group.hash(&mut hasher);
        chi.hash(&mut hasher);
        a.hash(&mut hasher);
        alpha.hash(&mut hasher);
        quotient.hash(&mut hasher);
        let tag = hasher.finish();

        debug_assert_eq!(elements.len(), order);
        Ok(HopfPresentation {
            exps: elements.into_iter().map(|g| g.0).collect(),
            field,
            group,
            chi,
            twist,
            a,
            alpha,
            quotient,
            q,
            s,
            case,
            tag,
            strides,
            twist_vals,
            alpha_vals,
            alpha_zero,
            a_idx,
            an_idx,
            inv_idx,
            xpow_group: Mutex::new(HashMap::new()),
            comul_xpow: Mutex::new(Vec::new()),
        })
    }

    fn check_quotient(
        field: &F,
        group: &AbelianGroup,
        a: &GroupElement,
        q: &F::Elem,
        s: Option<u64>,
        quotient: &QuotientSpec<F::Elem>,
        n: u32,
    ) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidQuotient(format!("n = {n}: the ideal needs n ≥ 2")));
        }
        if multiplicative_order(field, q) != Some(n as u64) {
            return Err(Error::InvalidQuotient(format!(
                "χ⁻¹(a) = {} is not a primitive {n}-th root of unity",
                field.fmt_elem(q)
            )));
        }
        if let QuotientSpec::PowerCentral(_, beta) = quotient {
            if field.is_zero(beta) {
                return Err(Error::InvalidQuotient(
                    "β = 0 gives the ideal ⟨xⁿ⟩; use PowerZero".into(),
                ));
            }
            let an = group.pow(a, n as i64);
            if an == group.identity() {
                return Err(Error::InvalidQuotient(format!(
                    "aⁿ = 1 for n = {n}, so the ideal is ⟨xⁿ⟩; use PowerZero"
                )));
            }
            if s != Some(n as u64) {
                return Err(Error::InvalidQuotient(format!(
                    "β ≠ 0 and aⁿ ≠ 1 require |χ| = n, but |χ| = {} and n = {n}",
                    s.map_or("∞".to_string(), |s| s.to_string())
                )));
            }
        }
        Ok(())
    }

    /// Replaces a Case 1 presentation by the one with `α ≡ 0`.
    pub fn case_normalize(&self) -> Result<(Self, NormalizationWitness<F::Elem>)> {
        if self.case != Case::Case1 {
            return Err(Error::Presentation(format!(
                "case normalization needs χ(a) ≠ 1, this presentation is {}",
                self.case
            )));
        }
        let f = &self.field;
        let alpha_a = self.alpha_vals[self.a_idx as usize].clone();
        let gamma = f
            .div(&alpha_a, &f.sub(&f.one(), &self.q))
            .expect("q ≠ 1 in Case 1");
        let p = Self::build(
            f.clone(),
            self.group.clone(),
            self.chi.clone(),
            self.a.clone(),
            Cocycle::zero(f, &self.group),
            self.quotient.clone(),
            Validation::Full,
        )?;
        Ok((p, NormalizationWitness { gamma }))
    }

    /// `x′ = x − γ(1 − a)` as an element of this (unnormalized) algebra.
    pub fn normalized_generator(&self, w: &NormalizationWitness<F::Elem>) -> HopfElement<F::Elem> {
        let f = &self.field;
        let mut t = Terms::new();
        t.insert((0, 1), f.one());
        let g = f.neg(&w.gamma);
        if !f.is_zero(&g) {
            add_term(f, &mut t, (0, 0), g.clone());
            add_term(f, &mut t, (self.a_idx, 0), f.neg(&g));
        }
        self.wrap(t)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn chi(&self) -> &Character<F::Elem> {
        &self.chi
    }

    /// `χ⁻¹`, the character that twists `x` past group elements.
    pub fn twist(&self) -> &Character<F::Elem> {
        &self.twist
    }

    pub fn a(&self) -> &GroupElement {
        &self.a
    }

    pub fn alpha(&self) -> &Cocycle<F::Elem> {
        &self.alpha
    }

    pub fn quotient(&self) -> &QuotientSpec<F::Elem> {
        &self.quotient
    }

    /// `q = χ⁻¹(a)`
    pub fn q(&self) -> &F::Elem {
        &self.q
    }

    /// Multiplicative order of `q`.
    pub fn q_order(&self) -> Option<u64> {
        multiplicative_order(&self.field, &self.q)
    }

    /// `s = |χ|`
    pub fn chi_order(&self) -> Option<u64> {
        self.s
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn group_order(&self) -> usize {
        self.exps.len()
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<u32> {
        if !self.group.contains(g) {
            return Err(Error::GroupMismatch(format!("{:?} is not a group element", g.0)));
        }
        Ok(self.group.index(g) as u32)
    }

    pub fn element_at(&self, idx: u32) -> GroupElement {
        GroupElement(self.exps[idx as usize].clone())
    }

    pub(crate) fn a_index(&self) -> u32 {
        self.a_idx
    }

    pub(crate) fn gmul(&self, i: u32, j: u32) -> u32 {
        let (ei, ej) = (&self.exps[i as usize], &self.exps[j as usize]);
        let mut idx = 0u64;
        for (k, &n) in self.group.factors().iter().enumerate() {
            idx += ((ei[k] + ej[k]) % n) * self.strides[k];
        }
        idx as u32
    }

    pub(crate) fn ginv(&self, i: u32) -> u32 {
        self.inv_idx[i as usize]
    }

    pub(crate) fn gpow(&self, i: u32, e: u64) -> u32 {
        let ei = &self.exps[i as usize];
        let mut idx = 0u64;
        for (k, &n) in self.group.factors().iter().enumerate() {
            idx += ((ei[k] as u128 * e as u128) % n as u128) as u64 * self.strides[k];
        }
        idx as u32
    }

    /// `χ⁻¹(g)` for the group element with index `i`.
    pub fn twist_at(&self, i: u32) -> &F::Elem {
        &self.twist_vals[i as usize]
    }

    /// Display name of a group element: `1`, `g^3`, `g1*g2^2`.
    pub fn format_group(&self, i: u32) -> String {
        let e = &self.exps[i as usize];
        let single = e.len() == 1;
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(k, &x)| {
                let name = if single { "g".to_string() } else { format!("g{}", k + 1) };
                if x == 1 {
                    name
                } else {
                    format!("{name}^{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn add_term<F: Field, K: Ord>(field: &F, map: &mut BTreeMap<K, F::Elem>, key: K, c: F::Elem) {
    if field.is_zero(&c) {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = field.add(o.get(), &c);
            if field.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}
