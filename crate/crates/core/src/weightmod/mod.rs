//! Finite-dimensional weight modules: a diagonal group action given by one
//! character per basis vector, and the matrix of `x`.

mod constructors;
mod ops;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, UniPoly};
use crate::grouprep::{char_eval_unchecked, char_exponents, Character, CharacterCoset, GroupElement};
use crate::hopfcore::{HopfPresentation, QuotientSpec};

pub use constructors::{make_block, make_labeled, make_serial, make_simple_onedim, make_verma_quotient};
pub use ops::{mod_conjugate, mod_direct_sum, mod_scramble, mod_tensor, random_graded_basis};

/// Isomorphism class of an indecomposable weight module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleLabel<E> {
    /// `V_λ`
    Simple1 { lambda: Character<E> },
    /// `V_t(λ)`, `t ≥ 2`
    Serial { lambda: Character<E>, t: u32 },
    /// `V(λ, f^r)` with `f` monic irreducible, `f ≠ y`; depends on `λ` only
    /// through its `⟨χ⟩`-coset.
    Block { coset: CharacterCoset<E>, f: UniPoly<E>, r: u32 },
}

impl<E: Clone + Eq> ModuleLabel<E> {
    /// `V_t(λ)`, written as `Simple1` when `t = 1`.
    pub fn serial(lambda: Character<E>, t: u32) -> Self {
        if t == 1 {
            ModuleLabel::Simple1 { lambda }
        } else {
            ModuleLabel::Serial { lambda, t }
        }
    }

    pub fn dim(&self, s: u64) -> usize {
        match self {
            ModuleLabel::Simple1 { .. } => 1,
            ModuleLabel::Serial { t, .. } => *t as usize,
            ModuleLabel::Block { f, r, .. } => s as usize * f.degree().unwrap_or(0) * *r as usize,
        }
    }

    /// Radical length.
    pub fn loewy_length(&self) -> u32 {
        match self {
            ModuleLabel::Simple1 { .. } => 1,
            ModuleLabel::Serial { t, .. } => *t,
            ModuleLabel::Block { r, .. } => *r,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.loewy_length() == 1
    }
}

/// Serializable form of a label, with field elements printed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LabelDoc {
    Simple1 { lambda: Vec<String> },
    Serial { lambda: Vec<String>, t: u32 },
    Block { coset: Vec<String>, f: String, r: u32 },
}

impl<F: Field> HopfPresentation<F> {
    pub fn label_doc(&self, label: &ModuleLabel<F::Elem>) -> LabelDoc {
        let f = self.field();
        let imgs = |c: &Character<F::Elem>| c.images.iter().map(|v| f.fmt_elem(v)).collect();
        match label {
            ModuleLabel::Simple1 { lambda } => LabelDoc::Simple1 { lambda: imgs(lambda) },
            ModuleLabel::Serial { lambda, t } => LabelDoc::Serial { lambda: imgs(lambda), t: *t },
            ModuleLabel::Block { coset, f: poly, r } => LabelDoc::Block {
                coset: imgs(&coset.rep),
                f: poly.format(f),
                r: *r,
            },
        }
    }

    /// Short human-readable label, e.g. `V_4([2])` or `V([3], (y-2)^2)`.
    pub fn format_label(&self, label: &ModuleLabel<F::Elem>) -> String {
        let f = self.field();
        let imgs = |c: &Character<F::Elem>| {
            let v: Vec<String> = c.images.iter().map(|v| f.fmt_elem(v)).collect();
            format!("[{}]", v.join(","))
        };
        match label {
            ModuleLabel::Simple1 { lambda } => format!("V_{}", imgs(lambda)),
            ModuleLabel::Serial { lambda, t } => format!("V_{t}({})", imgs(lambda)),
            ModuleLabel::Block { coset, f: poly, r } => {
                let p = poly.format(f);
                if *r == 1 {
                    format!("V({}, {p})", imgs(&coset.rep))
                } else {
                    format!("V({}, ({p})^{r})", imgs(&coset.rep))
                }
            }
        }
    }

    /// `|χ|`, finite for every valid presentation.
    pub fn s(&self) -> u64 {
        self.chi_order().expect("characters of a finite group have finite order")
    }

    pub(crate) fn require_weight_setting(&self) -> Result<()> {
        if !self.alpha().is_zero(self.field()) {
            return Err(Error::Unsupported(
                "weight modules are built over presentations with α ≡ 0".into(),
            ));
        }
        Ok(())
    }
}

/// A weight module over a presentation: basis vector `i` has weight
/// `weights[i]`, and `x` acts by the matrix `x` (columns are images).
#[derive(Debug, Clone)]
pub struct WeightModule<F: Field> {
    hopf: Arc<HopfPresentation<F>>,
    weights: Vec<Character<F::Elem>>,
    x: Matrix<F::Elem>,
}

impl<F: Field> PartialEq for WeightModule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.hopf.tag() == other.hopf.tag() && self.weights == other.weights && self.x == other.x
    }
}

impl<F: Field> WeightModule<F> {
    /// Builds a module and checks every invariant.
    pub fn new(hopf: Arc<HopfPresentation<F>>, weights: Vec<Character<F::Elem>>, x: Matrix<F::Elem>) -> Result<Self> {
        let m = Self::new_unchecked(hopf, weights, x)?;
        let report = m.verify();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidModule(format!("{}: {}", v.kind, v.detail)));
        }
        Ok(m)
    }

    /// Only shape checks; [`verify`](Self::verify) reports anything else.
    pub fn new_unchecked(
        hopf: Arc<HopfPresentation<F>>,
        weights: Vec<Character<F::Elem>>,
        x: Matrix<F::Elem>,
    ) -> Result<Self> {
        hopf.require_weight_setting()?;
        let d = weights.len();
        if x.nrows() != d || x.ncols() != d {
            return Err(Error::Shape(format!(
                "x-matrix is {}x{} for {d} weights",
                x.nrows(),
                x.ncols()
            )));
        }
        let rank = hopf.group().rank();
        if let Some(w) = weights.iter().find(|w| w.images.len() != rank) {
            return Err(Error::Shape(format!(
                "weight with {} images for a group of rank {rank}",
                w.images.len()
            )));
        }
        Ok(WeightModule { hopf, weights, x })
    }

    pub fn hopf(&self) -> &Arc<HopfPresentation<F>> {
        &self.hopf
    }

    pub fn field(&self) -> &F {
        self.hopf.field()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Character<F::Elem>] {
        &self.weights
    }

    pub fn x(&self) -> &Matrix<F::Elem> {
        &self.x
    }

    /// Scalar by which `g` acts on basis vector `i`.
    pub fn weight_value(&self, i: usize, g: &GroupElement) -> F::Elem {
        char_eval_unchecked(self.field(), &self.weights[i], g)
    }

    /// Diagonal matrix of `g`.
    pub fn rho(&self, g: &GroupElement) -> Matrix<F::Elem> {
        let d: Vec<F::Elem> = (0..self.dim()).map(|i| self.weight_value(i, g)).collect();
        Matrix::diagonal(self.field(), &d)
    }

    /// Matrices of the group generators followed by `x`.
    pub fn action_matrices(&self) -> Vec<Matrix<F::Elem>> {
        let mut out: Vec<Matrix<F::Elem>> = self.hopf.group().generators().iter().map(|g| self.rho(g)).collect();
        out.push(self.x.clone());
        out
    }

    /// Distinct weights in order of first appearance, with the basis
    /// indices carrying each.
    pub fn weight_blocks(&self) -> Vec<(Character<F::Elem>, Vec<usize>)> {
        let mut out: Vec<(Character<F::Elem>, Vec<usize>)> = Vec::new();
        for (i, w) in self.weights.iter().enumerate() {
            match out.iter_mut().find(|(c, _)| c == w) {
                Some((_, idx)) => idx.push(i),
                None => out.push((w.clone(), vec![i])),
            }
        }
        out
    }

    pub fn verify(&self) -> ModuleReport {
        verify_module(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleViolation {
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub dim: usize,
    pub violations: Vec<ModuleViolation>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks weights, the commutation relation with the group and the
/// relation imposed by the quotient.
pub fn verify_module<F: Field>(m: &WeightModule<F>) -> ModuleReport {
    let hopf = &m.hopf;
    let f = hopf.field();
    let group = hopf.group();
    let mut violations = Vec::new();
    let fmt_w = |w: &Character<F::Elem>| {
        let v: Vec<String> = w.images.iter().map(|e| f.fmt_elem(e)).collect();
        format!("[{}]", v.join(","))
    };

    for (i, w) in m.weights.iter().enumerate() {
        if char_exponents(f, group, w).is_none() {
            violations.push(ModuleViolation {
                kind: "group relations".into(),
                detail: format!("weight {} of basis vector {i} is not a character", fmt_w(w)),
            });
        }
    }

    // X must send weight λ into weight χλ.
    let chi = hopf.chi();
    let mut bad: Vec<(usize, usize)> = Vec::new();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if f.is_zero(m.x.get(i, j)) {
                continue;
            }
            let target = crate::grouprep::char_mul(f, chi, &m.weights[j]);
            if m.weights[i] != target {
                bad.push((i, j));
            }
        }
    }
    let mut seen = Vec::new();
    for (i, j) in bad {
        let key = (m.weights[j].clone(), m.weights[i].clone());
        if seen.contains(&key) {
            continue;
        }
        violations.push(ModuleViolation {
            kind: "weight compatibility".into(),
            detail: format!(
                "x maps weight {} into weight {} (entry ({i},{j}))",
                fmt_w(&key.0),
                fmt_w(&key.1)
            ),
        });
        seen.push(key);
    }

    if let Some(n) = hopf.quotient().n() {
        let xn = m.x.pow(f, n as u64);
        let expected = match hopf.quotient() {
            QuotientSpec::PowerCentral(_, beta) => {
                let a = hopf.a();
                let d: Vec<F::Elem> = (0..m.dim())
                    .map(|i| {
                        let an = f.pow(&m.weight_value(i, a), n as u64);
                        f.mul(beta, &f.sub(&f.one(), &an))
                    })
                    .collect();
                Matrix::diagonal(f, &d)
            }
            _ => Matrix::zeros(f, m.dim(), m.dim()),
        };
        if xn != expected {
            let what = match hopf.quotient() {
                QuotientSpec::PowerCentral(_, b) => format!("β(1 − ρ(a)^{n}) with β = {}", f.fmt_elem(b)),
                _ => "0".into(),
            };
            let bad_cols: Vec<usize> = (0..m.dim()).filter(|&j| xn.col(j) != expected.col(j)).collect();
            violations.push(ModuleViolation {
                kind: "quotient relation".into(),
                detail: format!("x^{n} ≠ {what} on basis vectors {bad_cols:?}"),
            });
        }
    }
    ModuleReport {
        dim: m.dim(),
        violations,
    }
}

pub(crate) fn require_same<F: Field>(a: &WeightModule<F>, b: &WeightModule<F>) -> Result<()> {
    if a.hopf.tag() != b.hopf.tag() {
        return Err(Error::MixedPresentations);
    }
    Ok(())
}
