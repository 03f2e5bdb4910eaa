use serde::Serialize;

use super::{classify, DecompositionReport, Provenance};
use crate::error::{Error, Result};
use crate::exactnum::{Field, UniPoly};
use crate::grouprep::{char_eval_unchecked, char_mul, char_pow, enumerate_characters, Character, CharacterCoset};
use crate::hopfcore::{HopfPresentation, QuotientSpec};
use crate::weightmod::{LabelDoc, ModuleLabel};

/// Operand shapes covered by the closed formulas.
enum Operand<E> {
    OneDim(Character<E>),
    /// `V(σ, α)`; `α = 0` is `V_s(σ)`.
    Line(Character<E>, E),
}

fn operand<F: Field>(hopf: &HopfPresentation<F>, l: &ModuleLabel<F::Elem>) -> Option<Operand<F::Elem>> {
    let f = hopf.field();
    match l {
        ModuleLabel::Simple1 { lambda } => Some(Operand::OneDim(lambda.clone())),
        ModuleLabel::Serial { lambda, t } if *t as u64 == hopf.s() => Some(Operand::Line(lambda.clone(), f.zero())),
        ModuleLabel::Block { coset, f: p, r: 1 } if p.degree() == Some(1) => {
            Some(Operand::Line(coset.rep.clone(), f.neg(&p.coeff(f, 0))))
        }
        _ => None,
    }
}

/// Label of `V(μ, c)`.
fn line_label<F: Field>(hopf: &HopfPresentation<F>, mu: &Character<F::Elem>, c: &F::Elem) -> ModuleLabel<F::Elem> {
    let f = hopf.field();
    if f.is_zero(c) {
        ModuleLabel::serial(mu.clone(), hopf.s() as u32)
    } else {
        ModuleLabel::Block {
            coset: CharacterCoset::new(f, hopf.group(), mu, hopf.chi()),
            f: UniPoly::linear(f, c),
            r: 1,
        }
    }
}

/// Closed-form decomposition of `A ⊗ B` for one-dimensional simples and
/// modules `V(σ, α)`; `None` outside those cases, or for two modules
/// `V(σ, α)` when `q` is not a primitive `s`-th root of unity.
pub fn predicted_tensor<F: Field>(
    hopf: &HopfPresentation<F>,
    a: &ModuleLabel<F::Elem>,
    b: &ModuleLabel<F::Elem>,
) -> Option<DecompositionReport<F::Elem>> {
    let f = hopf.field();
    let s = hopf.s();
    let at_a_s = |l: &Character<F::Elem>| f.pow(&char_eval_unchecked(f, l, hopf.a()), s);
    let labels = match (operand(hopf, a)?, operand(hopf, b)?) {
        (Operand::OneDim(l), Operand::OneDim(m)) => vec![ModuleLabel::Simple1 { lambda: char_mul(f, &l, &m) }],
        (Operand::OneDim(l), Operand::Line(sg, al)) => vec![line_label(hopf, &char_mul(f, &l, &sg), &al)],
        (Operand::Line(sg, al), Operand::OneDim(l)) => {
            vec![line_label(hopf, &char_mul(f, &sg, &l), &f.mul(&al, &at_a_s(&l)))]
        }
        (Operand::Line(sg, al), Operand::Line(l, be)) => {
            if hopf.q_order() != Some(s) {
                return None;
            }
            let c = f.add(&f.mul(&al, &at_a_s(&l)), &be);
            let base = char_mul(f, &sg, &l);
            (0..s)
                .map(|t| line_label(hopf, &char_mul(f, &char_pow(f, hopf.chi(), t as i64), &base), &c))
                .collect()
        }
    };
    Some(DecompositionReport::from_labels(labels, Provenance::ClosedForm))
}

/// The simple weight modules: finitely many classes under a quotient, or
/// the one-dimensional ones plus the families `V([σ], f)`, `f ∈ Irr[y]`.
#[derive(Debug, Clone)]
pub struct SimpleCensus<E> {
    pub one_dim: Vec<ModuleLabel<E>>,
    pub blocks: Vec<ModuleLabel<E>>,
    /// Cosets indexing the infinite families `V([σ], f)` (no quotient).
    pub block_family_cosets: Vec<CharacterCoset<E>>,
    pub s: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleCensusDoc {
    pub one_dim: Vec<LabelDoc>,
    pub blocks: Vec<LabelDoc>,
    pub block_family_cosets: Vec<Vec<String>>,
    pub block_family_dim: Option<String>,
}

impl<F: Field> HopfPresentation<F> {
    pub fn census_doc(&self, c: &SimpleCensus<F::Elem>) -> SimpleCensusDoc {
        let f = self.field();
        SimpleCensusDoc {
            one_dim: c.one_dim.iter().map(|l| self.label_doc(l)).collect(),
            blocks: c.blocks.iter().map(|l| self.label_doc(l)).collect(),
            block_family_cosets: c
                .block_family_cosets
                .iter()
                .map(|k| k.rep.images.iter().map(|v| f.fmt_elem(v)).collect())
                .collect(),
            block_family_dim: (!c.block_family_cosets.is_empty()).then(|| format!("{}·deg f", c.s)),
        }
    }
}

fn cosets<F: Field>(hopf: &HopfPresentation<F>) -> Vec<CharacterCoset<F::Elem>> {
    let f = hopf.field();
    let mut out: Vec<CharacterCoset<F::Elem>> = Vec::new();
    for l in enumerate_characters(f, hopf.group()) {
        let c = CharacterCoset::new(f, hopf.group(), &l, hopf.chi());
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

pub fn simple_census<F: Field>(hopf: &HopfPresentation<F>) -> Result<SimpleCensus<F::Elem>> {
    hopf.require_weight_setting()?;
    let f = hopf.field();
    let chars = enumerate_characters(f, hopf.group());
    let s = hopf.s();
    let mut census = SimpleCensus {
        one_dim: Vec::new(),
        blocks: Vec::new(),
        block_family_cosets: Vec::new(),
        s,
    };
    match hopf.quotient() {
        QuotientSpec::None => {
            census.one_dim = chars.into_iter().map(|lambda| ModuleLabel::Simple1 { lambda }).collect();
            census.block_family_cosets = cosets(hopf);
        }
        QuotientSpec::PowerZero(_) => {
            census.one_dim = chars.into_iter().map(|lambda| ModuleLabel::Simple1 { lambda }).collect();
        }
        QuotientSpec::PowerCentral(n, beta) => {
            let an = |l: &Character<F::Elem>| f.pow(&char_eval_unchecked(f, l, hopf.a()), *n as u64);
            census.one_dim = chars
                .into_iter()
                .filter(|l| f.is_one(&an(l)))
                .map(|lambda| ModuleLabel::Simple1 { lambda })
                .collect();
            for c in cosets(hopf) {
                let v = an(&c.rep);
                if !f.is_one(&v) {
                    let val = f.mul(beta, &f.sub(&f.one(), &v));
                    census.blocks.push(ModuleLabel::Block {
                        coset: c,
                        f: UniPoly::linear(f, &val),
                        r: 1,
                    });
                }
            }
        }
    }
    Ok(census)
}

#[derive(Debug, Clone)]
pub struct CoverEntry<E> {
    pub simple: ModuleLabel<E>,
    pub cover: ModuleLabel<E>,
    /// The Verma quotient generated at the simple's weight classifies as
    /// `cover`, and its top is the simple.
    pub checked: bool,
}

#[derive(Debug, Clone)]
pub struct ProjectivesReport<E> {
    pub entries: Vec<CoverEntry<E>>,
}

impl<E> ProjectivesReport<E> {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.checked)
    }
}

/// Projective covers of the simple modules over a quotient algebra: the
/// Verma quotient `V_n(λ)` for one-dimensional simples, and the simple
/// itself for the big simples.
pub fn projectives_report<F: Field>(
    hopf: &std::sync::Arc<HopfPresentation<F>>,
) -> Result<ProjectivesReport<F::Elem>> {
    let n = hopf.quotient().n().ok_or_else(|| {
        Error::Unsupported("projective covers are reported for quotient algebras only".into())
    })?;
    if hopf.q_order() != Some(n as u64) {
        return Err(Error::Unsupported(format!("q is not a primitive {n}-th root of unity")));
    }
    let census = simple_census(hopf)?;
    let mut entries = Vec::new();
    for simple in census.one_dim.iter().chain(&census.blocks) {
        let (lambda, cover) = match simple {
            ModuleLabel::Simple1 { lambda } => (lambda.clone(), ModuleLabel::serial(lambda.clone(), n)),
            other => {
                let ModuleLabel::Block { coset, .. } = other else { unreachable!() };
                (coset.rep.clone(), other.clone())
            }
        };
        let verma = crate::weightmod::make_verma_quotient(hopf, &lambda)?;
        let rep = classify(&verma, 0)?;
        let top_ok = match super::series(&verma)?.radical_layers.first() {
            Some(layer) => layer.labels == vec![(simple.clone(), 1)],
            None => false,
        };
        let checked = rep.summands == vec![(cover.clone(), 1)] && top_ok;
        entries.push(CoverEntry {
            simple: simple.clone(),
            cover,
            checked,
        });
    }
    Ok(ProjectivesReport { entries })
}
