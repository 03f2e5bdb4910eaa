//! Brute-force checks that share nothing with `modanalysis`: submodules are
//! found by enumerating vectors over a finite field, and modules are split
//! by random endomorphisms.

mod split;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::matrix::row_space;
use crate::exactnum::{minimal_polynomial, Field, Matrix, UniPoly};
use crate::grouprep::{Character, CharacterCoset};
use crate::weightmod::{ModuleLabel, WeightModule};

pub use split::{oracle_split, OracleBlock, OracleSplit};

/// Default limit on the number of enumerated vectors.
pub const DEFAULT_BUDGET: u128 = 500_000;

/// Reduced row echelon basis; the canonical key of a subspace.
pub type Span<E> = Vec<Vec<E>>;

/// Matrices acting on `k^d` together with a weight per coordinate. Every
/// matrix maps weight vectors to weight vectors.
#[derive(Debug, Clone)]
pub(crate) struct Action<F: Field> {
    pub field: F,
    pub mats: Vec<Matrix<F::Elem>>,
    pub weights: Vec<Character<F::Elem>>,
}

impl<F: Field> Action<F> {
    pub fn of(m: &WeightModule<F>) -> Self {
        Action {
            field: m.field().clone(),
            mats: m.action_matrices(),
            weights: m.weights().to_vec(),
        }
    }

    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn transposed(&self) -> Self {
        Action {
            field: self.field.clone(),
            mats: self.mats.iter().map(Matrix::transpose).collect(),
            weights: self.weights.clone(),
        }
    }

    fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<(Character<F::Elem>, Vec<usize>)> = Vec::new();
        for (i, w) in self.weights.iter().enumerate() {
            match out.iter_mut().find(|(c, _)| c == w) {
                Some((_, v)) => v.push(i),
                None => out.push((w.clone(), vec![i])),
            }
        }
        out.into_iter().map(|(_, v)| v).collect()
    }

    /// Smallest invariant subspace containing `v`.
    fn closure(&self, v: Vec<F::Elem>) -> Span<F::Elem> {
        let f = &self.field;
        let mut rows: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        let mut queue = vec![v];
        while let Some(mut u) = queue.pop() {
            for (p, r) in &rows {
                let c = u[*p].clone();
                if !f.is_zero(&c) {
                    for (a, b) in u.iter_mut().zip(r) {
                        *a = f.sub(a, &f.mul(&c, b));
                    }
                }
            }
            let Some(p) = u.iter().position(|c| !f.is_zero(c)) else {
                continue;
            };
            let inv = f.inv(&u[p]).expect("nonzero");
            for a in u.iter_mut() {
                *a = f.mul(a, &inv);
            }
            for m in &self.mats {
                queue.push(m.mul_vec(f, &u));
            }
            rows.push((p, u));
        }
        let vecs: Vec<Vec<F::Elem>> = rows.into_iter().map(|(_, r)| r).collect();
        row_space(f, &vecs, self.dim())
    }

    /// Restriction to an invariant subspace given in reduced echelon form;
    /// coordinates are the entries at the pivot columns.
    fn restrict(&self, span: &Span<F::Elem>) -> Self {
        let f = &self.field;
        let pivots = pivots_of(f, span);
        let k = span.len();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(f, k, k);
                for (j, b) in span.iter().enumerate() {
                    let img = m.mul_vec(f, b);
                    for (i, &p) in pivots.iter().enumerate() {
                        out.set(i, j, img[p].clone());
                    }
                }
                out
            })
            .collect();
        Action {
            field: f.clone(),
            mats,
            weights: pivots.iter().map(|&p| self.weights[p].clone()).collect(),
        }
    }

    /// Quotient by an invariant subspace in reduced echelon form, on the
    /// images of the non-pivot coordinate vectors.
    fn quotient(&self, span: &Span<F::Elem>) -> Self {
        let f = &self.field;
        let pivots = pivots_of(f, span);
        let free: Vec<usize> = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        let k = free.len();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(f, k, k);
                for (j, &c) in free.iter().enumerate() {
                    let mut img = m.col(c);
                    for (r, &p) in span.iter().zip(&pivots) {
                        let coef = img[p].clone();
                        if !f.is_zero(&coef) {
                            for (a, b) in img.iter_mut().zip(r) {
                                *a = f.sub(a, &f.mul(&coef, b));
                            }
                        }
                    }
                    for (i, &fi) in free.iter().enumerate() {
                        out.set(i, j, img[fi].clone());
                    }
                }
                out
            })
            .collect();
        Action {
            field: f.clone(),
            mats,
            weights: free.iter().map(|&c| self.weights[c].clone()).collect(),
        }
    }
}

pub(crate) fn pivots_of<F: Field>(f: &F, span: &Span<F::Elem>) -> Vec<usize> {
    span.iter()
        .map(|r| r.iter().position(|c| !f.is_zero(c)).expect("echelon rows are nonzero"))
        .collect()
}

fn contains<F: Field>(f: &F, big: &Span<F::Elem>, small: &Span<F::Elem>) -> bool {
    let pivots = pivots_of(f, big);
    small.iter().all(|v| {
        let mut u = v.clone();
        for (r, &p) in big.iter().zip(&pivots) {
            let c = u[p].clone();
            if !f.is_zero(&c) {
                for (a, b) in u.iter_mut().zip(r) {
                    *a = f.sub(a, &f.mul(&c, b));
                }
            }
        }
        u.iter().all(|c| f.is_zero(c))
    })
}

/// Enumeration of the weight vectors of one weight space, indexed by their
/// base-`q` expansion over the field's element list.
struct BlockEnum<'a, F: Field> {
    coords: Vec<usize>,
    elems: &'a [F::Elem],
    index_of: &'a HashMap<F::Elem, usize>,
}

impl<F: Field> BlockEnum<'_, F> {
    fn count(&self) -> usize {
        self.elems.len().pow(self.coords.len() as u32)
    }

    /// The vector with ordinal `n`, if its first nonzero entry is 1.
    fn normalized(&self, f: &F, mut n: usize, d: usize) -> Option<Vec<F::Elem>> {
        let q = self.elems.len();
        let mut v = vec![f.zero(); d];
        let mut lead: Option<bool> = None;
        for &c in &self.coords {
            let e = &self.elems[n % q];
            n /= q;
            if lead.is_none() && !f.is_zero(e) {
                lead = Some(f.is_one(e));
            }
            v[c] = e.clone();
        }
        (lead == Some(true)).then_some(v)
    }

    /// Ordinal of the normalized multiple of a nonzero vector supported on
    /// this weight space.
    fn ordinal(&self, f: &F, v: &[F::Elem]) -> usize {
        let lead = self
            .coords
            .iter()
            .map(|&c| &v[c])
            .find(|e| !f.is_zero(e))
            .expect("nonzero vector");
        let inv = f.inv(lead).expect("nonzero");
        let q = self.elems.len();
        let mut n = 0usize;
        for &c in self.coords.iter().rev() {
            n = n * q + self.index_of[&f.mul(&v[c], &inv)];
        }
        n
    }
}

/// All submodules generated by one weight vector, the minimal ones among
/// them (the simple submodules), and the maximal submodules.
#[derive(Debug, Clone)]
pub struct SubmoduleLattice<E> {
    /// Echelon bases, sorted by dimension then entries; includes 0 and `M`.
    pub members: Vec<Span<E>>,
    /// `(i, j)` when member `i` is contained in member `j`, `i ≠ j`.
    pub inclusions: Vec<(usize, usize)>,
    pub minimal: Vec<usize>,
    pub maximal: Vec<usize>,
    pub enumerated: u128,
}

impl<E: Clone + Eq> SubmoduleLattice<E> {
    /// Every submodule is a sum of members generated by weight vectors, so
    /// the lattice is a chain exactly when those members are.
    pub fn is_chain(&self) -> bool {
        let n = self.members.len();
        let dims: Vec<usize> = self.members.iter().map(Vec::len).collect();
        (1..n).all(|i| dims[i] > dims[i - 1] && self.inclusions.contains(&(i - 1, i)))
    }
}

struct Cyclic<E> {
    members: Vec<Span<E>>,
    minimal: Vec<usize>,
    enumerated: u128,
}

fn element_table<F: Field>(f: &F) -> Result<(Vec<F::Elem>, HashMap<F::Elem, usize>)> {
    let elems = f
        .elements()
        .ok_or_else(|| Error::Unsupported("oracle enumeration needs a finite field".into()))?;
    let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok((elems, index))
}

/// Cyclic submodules generated by weight vectors, and which are minimal.
fn cyclic_members<F: Field>(act: &Action<F>, budget: u128) -> Result<Cyclic<F::Elem>> {
    let f = &act.field;
    let d = act.dim();
    let (elems, index_of) = element_table(f)?;
    let q = elems.len() as u128;
    let blocks = act.blocks();
    let needed: u128 = blocks.iter().map(|b| q.saturating_pow(b.len() as u32)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let enums: Vec<BlockEnum<F>> = blocks
        .iter()
        .map(|b| BlockEnum {
            coords: b.clone(),
            elems: &elems,
            index_of: &index_of,
        })
        .collect();

    let mut ids: BTreeMap<Span<F::Elem>, usize> = BTreeMap::new();
    let mut members: Vec<Span<F::Elem>> = Vec::new();
    // member generated by each normalized vector, per block
    let mut gen_of: Vec<Vec<u32>> = Vec::with_capacity(enums.len());
    for e in &enums {
        let keys: Vec<Option<Span<F::Elem>>> = (0..e.count())
            .into_par_iter()
            .map(|n| e.normalized(f, n, d).map(|v| act.closure(v)))
            .collect();
        let mut table = vec![u32::MAX; e.count()];
        for (n, key) in keys.into_iter().enumerate() {
            if let Some(k) = key {
                let next = members.len();
                let id = *ids.entry(k.clone()).or_insert_with(|| {
                    members.push(k);
                    next
                });
                table[n] = id as u32;
            }
        }
        gen_of.push(table);
    }

    // A member is simple when every weight vector in it generates it.
    let block_of: Vec<usize> = {
        let mut v = vec![0; d];
        for (bi, b) in blocks.iter().enumerate() {
            for &c in b {
                v[c] = bi;
            }
        }
        v
    };
    let minimal: Vec<usize> = (0..members.len())
        .into_par_iter()
        .filter(|&id| {
            let span = &members[id];
            let pivots = pivots_of(f, span);
            let mut by_block: BTreeMap<usize, Vec<&Vec<F::Elem>>> = BTreeMap::new();
            for (r, &p) in span.iter().zip(&pivots) {
                by_block.entry(block_of[p]).or_default().push(r);
            }
            by_block.iter().all(|(&bi, rows)| {
                let total = elems.len().pow(rows.len() as u32);
                (1..total).all(|mut n| {
                    let mut v = vec![f.zero(); d];
                    for r in rows {
                        let c = &elems[n % elems.len()];
                        n /= elems.len();
                        if f.is_zero(c) {
                            continue;
                        }
                        for (a, b) in v.iter_mut().zip(r.iter()) {
                            *a = f.add(a, &f.mul(c, b));
                        }
                    }
                    gen_of[bi][enums[bi].ordinal(f, &v)] as usize == id
                })
            })
        })
        .collect();
    Ok(Cyclic {
        members,
        minimal,
        enumerated: needed,
    })
}

fn sum_spans<F: Field>(f: &F, spans: &[&Span<F::Elem>], d: usize) -> Span<F::Elem> {
    let all: Vec<Vec<F::Elem>> = spans.iter().flat_map(|s| s.iter().cloned()).collect();
    row_space(f, &all, d)
}

/// `{v : u·v = 0 for all u ∈ span}`.
fn annihilator<F: Field>(f: &F, span: &Span<F::Elem>, d: usize) -> Span<F::Elem> {
    if span.is_empty() {
        return identity_span(f, d);
    }
    let m = Matrix::from_rows(span.clone()).expect("equal lengths");
    row_space(f, &m.kernel(f), d)
}

fn identity_span<F: Field>(f: &F, d: usize) -> Span<F::Elem> {
    Matrix::identity(f, d).to_rows()
}

fn socle_of<F: Field>(act: &Action<F>, budget: u128) -> Result<Span<F::Elem>> {
    let cyc = cyclic_members(act, budget)?;
    let mins: Vec<&Span<F::Elem>> = cyc.minimal.iter().map(|&i| &cyc.members[i]).collect();
    Ok(sum_spans(&act.field, &mins, act.dim()))
}

/// Sum of the simple submodules.
pub fn oracle_socle<F: Field>(m: &WeightModule<F>, budget: u128) -> Result<Span<F::Elem>> {
    socle_of(&Action::of(m), budget)
}

/// Intersection of the maximal submodules, computed as the annihilator of
/// the socle of the transposed action.
pub fn oracle_radical<F: Field>(m: &WeightModule<F>, budget: u128) -> Result<Span<F::Elem>> {
    let act = Action::of(m);
    let soc_t = socle_of(&act.transposed(), budget)?;
    Ok(annihilator(&act.field, &soc_t, act.dim()))
}

/// Cyclic submodules, plus 0, `M` and the maximal submodules (annihilators
/// of the simple submodules of the transposed action).
pub fn oracle_cyclic_submodules<F: Field>(m: &WeightModule<F>, budget: u128) -> Result<SubmoduleLattice<F::Elem>> {
    let act = Action::of(m);
    let f = &act.field;
    let d = act.dim();
    let cyc = cyclic_members(&act, budget)?;
    let dual = cyclic_members(&act.transposed(), budget)?;
    let mut set: BTreeMap<(usize, Span<F::Elem>), ()> = BTreeMap::new();
    set.insert((0, Vec::new()), ());
    set.insert((d, identity_span(f, d)), ());
    for s in &cyc.members {
        set.insert((s.len(), s.clone()), ());
    }
    let maximal_spans: Vec<Span<F::Elem>> = dual
        .minimal
        .iter()
        .map(|&i| annihilator(f, &dual.members[i], d))
        .collect();
    for s in &maximal_spans {
        set.insert((s.len(), s.clone()), ());
    }
    let members: Vec<Span<F::Elem>> = set.into_keys().map(|(_, s)| s).collect();
    let pos = |s: &Span<F::Elem>| members.iter().position(|x| x == s).expect("member");
    let minimal = cyc.minimal.iter().map(|&i| pos(&cyc.members[i])).collect();
    let maximal = maximal_spans.iter().map(pos).collect();
    let inclusions: Vec<(usize, usize)> = (0..members.len())
        .into_par_iter()
        .flat_map_iter(|j| {
            let members = &members;
            (0..members.len())
                .filter(move |&i| i != j && members[i].len() <= members[j].len() && contains(f, &members[j], &members[i]))
                .map(move |i| (i, j))
        })
        .collect();
    Ok(SubmoduleLattice {
        members,
        inclusions,
        minimal,
        maximal,
        enumerated: cyc.enumerated + dual.enumerated,
    })
}

/// Label of a simple module from its weights and the minimal polynomial of
/// `x^s` on it.
fn simple_label<F: Field>(m: &WeightModule<F>, act: &Action<F>) -> Result<ModuleLabel<F::Elem>> {
    let f = &act.field;
    let hopf = m.hopf();
    if act.dim() == 1 {
        return Ok(ModuleLabel::Simple1 {
            lambda: act.weights[0].clone(),
        });
    }
    let x = act.mats.last().expect("x is listed last");
    let mu: UniPoly<F::Elem> = minimal_polynomial(f, &x.pow(f, hopf.s()))?;
    Ok(ModuleLabel::Block {
        coset: CharacterCoset::new(f, hopf.group(), &act.weights[0], hopf.chi()),
        f: mu,
        r: 1,
    })
}

/// Composition factors, bottom first, from iterated socles.
pub fn oracle_composition_series<F: Field>(m: &WeightModule<F>, budget: u128) -> Result<Vec<ModuleLabel<F::Elem>>> {
    let mut act = Action::of(m);
    let mut factors = Vec::new();
    while act.dim() > 0 {
        let f = act.field.clone();
        let d = act.dim();
        let cyc = cyclic_members(&act, budget)?;
        let mut acc: Span<F::Elem> = Vec::new();
        let mut level = Vec::new();
        for &i in &cyc.minimal {
            let s = &cyc.members[i];
            if contains(&f, &acc, s) && !s.is_empty() {
                continue;
            }
            level.push(simple_label(m, &act.restrict(s))?);
            acc = sum_spans(&f, &[&acc, s], d);
        }
        if acc.is_empty() {
            return Err(Error::Internal("module without simple submodules".into()));
        }
        level.sort();
        factors.extend(level);
        act = act.quotient(&acc);
    }
    Ok(factors)
}
