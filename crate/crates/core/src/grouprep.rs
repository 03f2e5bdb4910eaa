//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}`, their `k`-valued
//! characters, cosets of a cyclic subgroup `⟨χ⟩` of the character group, and
//! 1-cocycles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{gcd_u64, multiplicative_order, primitive_root_of_unity, Field};

const MAX_GROUP_ORDER: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// Exponent vector with respect to the standard generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::GroupMismatch("group needs at least one factor".into()));
        }
        if factors.contains(&0) {
            return Err(Error::GroupMismatch("invariant factors must be ≥ 1".into()));
        }
        let order = factors.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n));
        match order {
            Some(o) if o <= MAX_GROUP_ORDER => Ok(AbelianGroup { factors }),
            _ => Err(Error::GroupMismatch(format!(
                "group order exceeds {MAX_GROUP_ORDER}"
            ))),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.factors.len()];
        e[i] = 1 % self.factors[i];
        GroupElement(e)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Builds an element from arbitrary integer exponents, reducing them.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        self.check_len(exps.len())?;
        Ok(GroupElement(
            exps.iter()
                .zip(&self.factors)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(e, n)| e < n)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.factors.len() {
            return Err(Error::GroupMismatch(format!(
                "expected {} components, got {len}",
                self.factors.len()
            )));
        }
        Ok(())
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if !self.contains(g) {
            return Err(Error::GroupMismatch(format!("{:?} is not an element of {:?}", g.0, self.factors)));
        }
        Ok(())
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        )
    }

    pub fn pow(&self, g: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| ((a as i128 * k as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.factors)
            .map(|(&a, &n)| n / gcd_u64(a, n))
            .fold(1, crate::exactnum::lcm_u64)
    }

    /// Mixed-radix index in `0..order`, first component least significant.
    pub fn index(&self, g: &GroupElement) -> usize {
        let mut idx = 0u64;
        for (e, n) in g.0.iter().zip(&self.factors).rev() {
            idx = idx * n + e;
        }
        idx as usize
    }

    pub fn from_index(&self, mut idx: usize) -> GroupElement {
        GroupElement(
            self.factors
                .iter()
                .map(|&n| {
                    let e = idx as u64 % n;
                    idx /= n as usize;
                    e
                })
                .collect(),
        )
    }

    /// All elements in index order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.from_index(i)).collect()
    }
}

/// A homomorphism `G → k^×`, stored by its generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character<E> {
    pub images: Vec<E>,
}

impl<E: Clone> Character<E> {
    pub fn new(images: Vec<E>) -> Self {
        Character { images }
    }

    pub fn trivial<F: Field<Elem = E>>(field: &F, group: &AbelianGroup) -> Self {
        Character {
            images: vec![field.one(); group.rank()],
        }
    }
}

/// True when every generator image `ω_i` satisfies `ω_i^{n_i} = 1`.
pub fn is_character<F: Field>(field: &F, group: &AbelianGroup, chi: &Character<F::Elem>) -> bool {
    chi.images.len() == group.rank()
        && chi
            .images
            .iter()
            .zip(group.factors())
            .all(|(w, &n)| field.is_one(&field.pow(w, n)))
}

pub fn check_character<F: Field>(
    field: &F,
    group: &AbelianGroup,
    chi: &Character<F::Elem>,
) -> Result<()> {
    group.check_len(chi.images.len())?;
    for (i, (w, &n)) in chi.images.iter().zip(group.factors()).enumerate() {
        if !field.is_one(&field.pow(w, n)) {
            return Err(Error::InvalidCharacter(format!(
                "image {} of generator {i} does not satisfy ω^{n} = 1",
                field.fmt_elem(w)
            )));
        }
    }
    Ok(())
}

pub fn char_eval<F: Field>(
    field: &F,
    group: &AbelianGroup,
    chi: &Character<F::Elem>,
    g: &GroupElement,
) -> Result<F::Elem> {
    group.check_len(chi.images.len())?;
    group.check(g)?;
    Ok(char_eval_unchecked(field, chi, g))
}

pub(crate) fn char_eval_unchecked<F: Field>(
    field: &F,
    chi: &Character<F::Elem>,
    g: &GroupElement,
) -> F::Elem {
    chi.images
        .iter()
        .zip(&g.0)
        .fold(field.one(), |acc, (w, &e)| field.mul(&acc, &field.pow(w, e)))
}

pub fn char_mul<F: Field>(
    field: &F,
    a: &Character<F::Elem>,
    b: &Character<F::Elem>,
) -> Character<F::Elem> {
    Character::new(a.images.iter().zip(&b.images).map(|(x, y)| field.mul(x, y)).collect())
}

pub fn char_inv<F: Field>(field: &F, a: &Character<F::Elem>) -> Character<F::Elem> {
    Character::new(
        a.images
            .iter()
            .map(|x| field.inv(x).expect("character values are units"))
            .collect(),
    )
}

pub fn char_pow<F: Field>(field: &F, a: &Character<F::Elem>, k: i64) -> Character<F::Elem> {
    Character::new(a.images.iter().map(|x| field.powi(x, k)).collect())
}

/// Order of `χ` in the character group; `None` means infinite, which cannot
/// happen for a valid character of a finite group.
pub fn char_order<F: Field>(field: &F, chi: &Character<F::Elem>) -> Option<u64> {
    chi.images.iter().try_fold(1u64, |acc, w| {
        multiplicative_order(field, w).map(|o| crate::exactnum::lcm_u64(acc, o))
    })
}

/// Decides `λσ^{-1} ∈ ⟨χ⟩` by running through the powers of `χ`.
pub fn same_chi_coset<F: Field>(
    field: &F,
    lambda: &Character<F::Elem>,
    sigma: &Character<F::Elem>,
    chi: &Character<F::Elem>,
) -> bool {
    chi_power_between(field, sigma, lambda, chi).is_some()
}

/// Smallest `t ≥ 0` with `χ^t · from = to`, if any.
pub fn chi_power_between<F: Field>(
    field: &F,
    from: &Character<F::Elem>,
    to: &Character<F::Elem>,
    chi: &Character<F::Elem>,
) -> Option<u64> {
    let s = char_order(field, chi)?;
    let mut cur = from.clone();
    for t in 0..s {
        if cur == *to {
            return Some(t);
        }
        cur = char_mul(field, &cur, chi);
    }
    None
}

/// For each generator, the canonical primitive root generating the
/// realizable image group `μ_{d_i}`, `d_i = gcd(n_i, |k^× torsion|)`.
pub fn character_generators<F: Field>(field: &F, group: &AbelianGroup) -> Vec<(u64, F::Elem)> {
    let t = field.unit_torsion_order();
    group
        .factors()
        .iter()
        .map(|&n| {
            let d = gcd_u64(n, t);
            let w = primitive_root_of_unity(field, d).expect("d divides the torsion order");
            (d, w)
        })
        .collect()
}

/// All characters `G → k^×`, in lexicographic order of their exponent
/// tuples with respect to [`character_generators`].
pub fn enumerate_characters<F: Field>(field: &F, group: &AbelianGroup) -> Vec<Character<F::Elem>> {
    let gens = character_generators(field, group);
    let mut out = vec![Vec::new()];
    for (d, w) in &gens {
        let powers: Vec<F::Elem> = (0..*d).map(|e| field.pow(w, e)).collect();
        let mut next = Vec::with_capacity(out.len() * *d as usize);
        for prefix in &out {
            for p in &powers {
                let mut v: Vec<F::Elem> = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Character::new).collect()
}

/// Exponent tuple of `λ` relative to [`character_generators`], or `None` if
/// `λ` is not a character.
pub fn char_exponents<F: Field>(
    field: &F,
    group: &AbelianGroup,
    lambda: &Character<F::Elem>,
) -> Option<Vec<u64>> {
    if lambda.images.len() != group.rank() {
        return None;
    }
    let gens = character_generators(field, group);
    lambda
        .images
        .iter()
        .zip(&gens)
        .map(|(v, (d, w))| {
            let mut cur = field.one();
            for e in 0..*d {
                if cur == *v {
                    return Some(e);
                }
                cur = field.mul(&cur, w);
            }
            None
        })
        .collect()
}

/// The member of `λ⟨χ⟩` with the lexicographically least exponent tuple.
pub fn canonical_coset_rep<F: Field>(
    field: &F,
    group: &AbelianGroup,
    lambda: &Character<F::Elem>,
    chi: &Character<F::Elem>,
) -> Character<F::Elem> {
    let s = char_order(field, chi).unwrap_or(1);
    let mut best: Option<(Vec<u64>, Character<F::Elem>)> = None;
    let mut cur = lambda.clone();
    for _ in 0..s {
        let key = char_exponents(field, group, &cur).unwrap_or_default();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, cur.clone()));
        }
        cur = char_mul(field, &cur, chi);
    }
    best.map(|(_, c)| c).unwrap_or_else(|| lambda.clone())
}

/// `[λ] ∈ Ĝ/⟨χ⟩`, held by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterCoset<E> {
    pub rep: Character<E>,
}

impl<E: Clone + Eq> CharacterCoset<E> {
    pub fn new<F: Field<Elem = E>>(
        field: &F,
        group: &AbelianGroup,
        lambda: &Character<E>,
        chi: &Character<E>,
    ) -> Self {
        CharacterCoset {
            rep: canonical_coset_rep(field, group, lambda, chi),
        }
    }
}

/// Values of a 1-cocycle on the standard generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cocycle<E> {
    pub values: Vec<E>,
}

impl<E: Clone> Cocycle<E> {
    pub fn new(values: Vec<E>) -> Self {
        Cocycle { values }
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, group: &AbelianGroup) -> Self {
        Cocycle {
            values: vec![field.zero(); group.rank()],
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.values.iter().all(|v| field.is_zero(v))
    }
}

/// `1 + c + … + c^{m-1}`
fn geometric<F: Field>(field: &F, c: &F::Elem, m: u64) -> F::Elem {
    let mut acc = field.zero();
    let mut p = field.one();
    for _ in 0..m {
        acc = field.add(&acc, &p);
        p = field.mul(&p, c);
    }
    acc
}

/// Checks that generator values extend to a cocycle for the twisting
/// character `c` (`α(gh) = α(g) + c(g)α(h)`): each `α(g_i^{n_i}) = 0`, and
/// the two expansions of `α(g_i g_j) = α(g_j g_i)` agree.
pub fn cocycle_check<F: Field>(
    field: &F,
    group: &AbelianGroup,
    alpha: &Cocycle<F::Elem>,
    c: &Character<F::Elem>,
) -> bool {
    if alpha.values.len() != group.rank() || c.images.len() != group.rank() {
        return false;
    }
    let k = group.rank();
    for i in 0..k {
        let n = group.factors()[i];
        let t = field.mul(&alpha.values[i], &geometric(field, &c.images[i], n));
        if !field.is_zero(&t) {
            return false;
        }
        for j in i + 1..k {
            let lhs = field.mul(&alpha.values[i], &field.sub(&field.one(), &c.images[j]));
            let rhs = field.mul(&alpha.values[j], &field.sub(&field.one(), &c.images[i]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `α(g)` for `g = ∏ g_i^{e_i}` using `α(g_i^e) = α(g_i)(1 + c_i + … + c_i^{e-1})`.
pub fn cocycle_eval<F: Field>(
    field: &F,
    alpha: &Cocycle<F::Elem>,
    c: &Character<F::Elem>,
    g: &GroupElement,
) -> F::Elem {
    let mut acc = field.zero();
    let mut prefix = field.one(); // c(g_1^{e_1} ⋯ g_{i-1}^{e_{i-1}})
    for ((a, ci), &e) in alpha.values.iter().zip(&c.images).zip(&g.0) {
        let term = field.mul(a, &geometric(field, ci, e));
        acc = field.add(&acc, &field.mul(&prefix, &term));
        prefix = field.mul(&prefix, &field.pow(ci, e));
    }
    acc
}
