//! Structure of weight modules: weight spaces, primary components,
//! radical and socle series, classification into indecomposables, tensor
//! product predictions, homomorphisms and projective covers.

mod classify;
mod hom;
mod predict;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::matrix::row_space;
use crate::exactnum::{poly_factor, poly_xgcd, Field, Matrix, UniPoly};
use crate::grouprep::{char_exponents, Character};
use crate::weightmod::{LabelDoc, ModuleLabel, WeightModule};

pub use classify::{classify, is_indecomposable, is_simple};
pub use hom::{hom_space, is_split_epi};
pub use predict::{predicted_tensor, projectives_report, simple_census, CoverEntry, ProjectivesReport, SimpleCensus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    IdempotentSplit,
    Oracle,
}

/// One summand in the witness basis: columns `offset..offset+dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandBlock<E> {
    pub label: ModuleLabel<E>,
    /// Weight of the generating vector, i.e. the top of the summand.
    pub top_weight: Character<E>,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport<E> {
    /// Labels with multiplicities, sorted.
    pub summands: Vec<(ModuleLabel<E>, usize)>,
    pub blocks: Vec<SummandBlock<E>>,
    /// Columns are the new basis; conjugating `x` by it gives the block
    /// sum of the standard modules generated at `top_weight`.
    pub witness: Option<Matrix<E>>,
    pub provenance: Provenance,
}

impl<E: Clone + Eq + Ord> DecompositionReport<E> {
    pub(crate) fn from_labels(labels: Vec<ModuleLabel<E>>, provenance: Provenance) -> Self {
        let mut counts: BTreeMap<ModuleLabel<E>, usize> = BTreeMap::new();
        for l in labels {
            *counts.entry(l).or_default() += 1;
        }
        DecompositionReport {
            summands: counts.into_iter().collect(),
            blocks: Vec::new(),
            witness: None,
            provenance,
        }
    }

    pub fn total_count(&self) -> usize {
        self.summands.iter().map(|(_, m)| m).sum()
    }

    pub fn total_dim(&self, s: u64) -> usize {
        self.summands.iter().map(|(l, m)| l.dim(s) * m).sum()
    }

    /// Multiset of summand dimensions, ascending.
    pub fn block_dims(&self, s: u64) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .summands
            .iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l.dim(s), *m))
            .collect();
        v.sort_unstable();
        v
    }

    /// Same summands, ignoring witness and provenance.
    pub fn same_labels(&self, other: &Self) -> bool {
        self.summands == other.summands
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandDoc {
    pub label: LabelDoc,
    pub multiplicity: usize,
}

impl<F: Field> crate::hopfcore::HopfPresentation<F> {
    pub fn summand_docs(&self, r: &DecompositionReport<F::Elem>) -> Vec<SummandDoc> {
        r.summands
            .iter()
            .map(|(l, m)| SummandDoc {
                label: self.label_doc(l),
                multiplicity: *m,
            })
            .collect()
    }
}

/// Dimension of every nonzero weight space, ordered by exponent tuple.
pub fn weight_spaces<F: Field>(m: &WeightModule<F>) -> Vec<(Character<F::Elem>, usize)> {
    let f = m.field();
    let group = m.hopf().group();
    let mut blocks: Vec<(Vec<u64>, Character<F::Elem>, usize)> = m
        .weight_blocks()
        .into_iter()
        .map(|(w, idx)| (char_exponents(f, group, &w).unwrap_or_default(), w, idx.len()))
        .collect();
    blocks.sort();
    blocks.into_iter().map(|(_, w, n)| (w, n)).collect()
}

/// A subspace spanned by weight vectors, given in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule<E> {
    pub basis: Vec<Vec<E>>,
    pub weights: Vec<Character<E>>,
}

impl<E: Clone> Submodule<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero() -> Self {
        Submodule {
            basis: Vec::new(),
            weights: Vec::new(),
        }
    }
}

/// Echelon basis, weight space by weight space, of a graded subspace
/// spanned by `vecs` (the weight components of each spanning vector must
/// lie in the span, as for any submodule).
pub fn graded_span<F: Field>(m: &WeightModule<F>, vecs: &[Vec<F::Elem>]) -> Submodule<F::Elem> {
    let f = m.field();
    let d = m.dim();
    let mut out = Submodule::zero();
    for (w, idx) in m.weight_blocks() {
        let parts: Vec<Vec<F::Elem>> = vecs
            .iter()
            .map(|v| idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>())
            .filter(|p| p.iter().any(|c| !f.is_zero(c)))
            .collect();
        for row in row_space(f, &parts, idx.len()) {
            let mut full = vec![f.zero(); d];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = row[k].clone();
            }
            out.basis.push(full);
            out.weights.push(w.clone());
        }
    }
    out
}

/// Image of `op` when `op` sends weight vectors to sums of weight vectors
/// in independent submodules (any polynomial combination of the action).
pub fn graded_image<F: Field>(m: &WeightModule<F>, op: &Matrix<F::Elem>) -> Submodule<F::Elem> {
    let cols: Vec<Vec<F::Elem>> = (0..op.ncols()).map(|j| op.col(j)).collect();
    graded_span(m, &cols)
}

/// Kernel of `op`, computed weight space by weight space; valid when `op`
/// maps distinct weight spaces into independent subspaces.
pub fn graded_kernel<F: Field>(m: &WeightModule<F>, op: &Matrix<F::Elem>) -> Submodule<F::Elem> {
    let f = m.field();
    let all: Vec<usize> = (0..op.nrows()).collect();
    let mut out = Submodule::zero();
    for (w, idx) in m.weight_blocks() {
        for kv in op.select(&all, &idx).kernel(f) {
            let mut full = vec![f.zero(); m.dim()];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = kv[k].clone();
            }
            out.basis.push(full);
            out.weights.push(w.clone());
        }
    }
    out
}

/// Coordinates of `v` in the independent family `basis`, if it lies in
/// the span.
pub(crate) fn coords<F: Field>(f: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if basis.is_empty() {
        return v.iter().all(|c| f.is_zero(c)).then(Vec::new);
    }
    Matrix::from_cols(f, v.len(), basis).solve(f, v)
}

/// The module `upper / lower` for submodules `lower ⊆ upper` of `m`, on a
/// basis of weight vectors of `upper` completing `lower`. Returns the
/// module and the chosen representatives in ambient coordinates.
pub fn subquotient<F: Field>(
    m: &WeightModule<F>,
    upper: &Submodule<F::Elem>,
    lower: &Submodule<F::Elem>,
) -> Result<(WeightModule<F>, Vec<Vec<F::Elem>>)> {
    let f = m.field();
    // per weight: lower vectors, then completing vectors from upper
    let mut groups: Vec<(Character<F::Elem>, Vec<Vec<F::Elem>>, Vec<Vec<F::Elem>>)> = Vec::new();
    for (w, v) in lower.weights.iter().zip(&lower.basis) {
        match groups.iter_mut().find(|g| g.0 == *w) {
            Some(g) => g.1.push(v.clone()),
            None => groups.push((w.clone(), vec![v.clone()], Vec::new())),
        }
    }
    for (w, v) in upper.weights.iter().zip(&upper.basis) {
        let g = match groups.iter().position(|g| g.0 == *w) {
            Some(i) => &mut groups[i],
            None => {
                groups.push((w.clone(), Vec::new(), Vec::new()));
                groups.last_mut().expect("just pushed")
            }
        };
        let mut fam = g.1.clone();
        fam.extend(g.2.iter().cloned());
        let rank_before = fam.len();
        fam.push(v.clone());
        if Matrix::from_cols(f, m.dim(), &fam).rank(f) > rank_before {
            g.2.push(v.clone());
        }
    }
    // keep the order in which upper lists its weights
    let mut reps: Vec<Vec<F::Elem>> = Vec::new();
    let mut rep_w: Vec<Character<F::Elem>> = Vec::new();
    for g in &groups {
        for v in &g.2 {
            reps.push(v.clone());
            rep_w.push(g.0.clone());
        }
    }
    let k = reps.len();
    let chi = m.hopf().chi();
    let mut x = Matrix::zeros(f, k, k);
    for (j, v) in reps.iter().enumerate() {
        let xv = m.x().mul_vec(f, v);
        if xv.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let tw = crate::grouprep::char_mul(f, chi, &rep_w[j]);
        let g = groups.iter().find(|g| g.0 == tw);
        let (low, comp) = match g {
            Some(g) => (&g.1, &g.2),
            None => return Err(Error::Internal("subquotient: image leaves the upper submodule".into())),
        };
        let mut fam = low.clone();
        fam.extend(comp.iter().cloned());
        let c = coords(f, &fam, &xv)
            .ok_or_else(|| Error::Internal("subquotient: upper is not a submodule".into()))?;
        for (t, rep) in comp.iter().enumerate() {
            let row = reps.iter().position(|r| r == rep).expect("rep listed");
            x.set(row, j, c[low.len() + t].clone());
        }
    }
    Ok((WeightModule::new_unchecked(m.hopf().clone(), rep_w, x)?, reps))
}

/// The submodule as a module on its own basis.
pub fn restrict<F: Field>(m: &WeightModule<F>, sub: &Submodule<F::Elem>) -> Result<WeightModule<F>> {
    let f = m.field();
    let k = sub.dim();
    let chi = m.hopf().chi();
    let mut x = Matrix::zeros(f, k, k);
    for j in 0..k {
        let xv = m.x().mul_vec(f, &sub.basis[j]);
        if xv.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let tw = crate::grouprep::char_mul(f, chi, &sub.weights[j]);
        let idx: Vec<usize> = (0..k).filter(|&i| sub.weights[i] == tw).collect();
        let fam: Vec<Vec<F::Elem>> = idx.iter().map(|&i| sub.basis[i].clone()).collect();
        let c = coords(f, &fam, &xv).ok_or_else(|| Error::Internal("restrict: not a submodule".into()))?;
        for (t, &i) in idx.iter().enumerate() {
            x.set(i, j, c[t].clone());
        }
    }
    WeightModule::new_unchecked(m.hopf().clone(), sub.weights.clone(), x)
}

/// `M^{(f)}` together with its projector.
#[derive(Debug, Clone)]
pub struct PrimaryComponent<F: Field> {
    /// Monic irreducible factor of the minimal polynomial of `x^s`.
    pub f: UniPoly<F::Elem>,
    /// Exponent of `f` in that minimal polynomial.
    pub exponent: u32,
    pub projector: Matrix<F::Elem>,
    pub submodule: Submodule<F::Elem>,
}

impl<F: Field> PrimaryComponent<F> {
    pub fn is_y(&self, field: &F) -> bool {
        self.f.is_y(field)
    }
}

/// Splits `M` along the factors of the minimal polynomial of `x^s` using
/// Bézout projectors.
pub fn primary_decomposition<F: Field>(m: &WeightModule<F>) -> Result<Vec<PrimaryComponent<F>>> {
    let f = m.field();
    let d = m.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let y = m.x().pow(f, m.hopf().s());
    let mu = crate::exactnum::minimal_polynomial(f, &y)?;
    let factors = poly_factor(f, &mu)?;
    let mut out = Vec::new();
    for (fi, e) in &factors.factors {
        let pe = fi.pow(f, *e as u64);
        let cofactor = mu.div_exact(f, &pe);
        let (_, u, _) = poly_xgcd(f, &cofactor, &pe)?;
        let e_poly = u.mul(f, &cofactor).rem(f, &mu);
        let projector = y.eval_poly(f, &e_poly);
        let submodule = graded_image(m, &projector);
        out.push(PrimaryComponent {
            f: fi.clone(),
            exponent: *e,
            projector,
            submodule,
        });
    }
    Ok(out)
}

/// `Σ_i R_i E_i` with `R = x` on the `y`-component and `R = f_i(x^s)`
/// elsewhere; its image is the radical and its kernel the socle.
pub fn radical_operator<F: Field>(m: &WeightModule<F>, comps: &[PrimaryComponent<F>]) -> Matrix<F::Elem> {
    let f = m.field();
    let y = m.x().pow(f, m.hopf().s());
    let mut t = Matrix::zeros(f, m.dim(), m.dim());
    for c in comps {
        let r = if c.is_y(f) { m.x().clone() } else { y.eval_poly(f, &c.f) };
        t = t.add(f, &r.mul(f, &c.projector));
    }
    t
}

pub fn radical<F: Field>(m: &WeightModule<F>) -> Result<Submodule<F::Elem>> {
    let comps = primary_decomposition(m)?;
    Ok(graded_image(m, &radical_operator(m, &comps)))
}

pub fn socle<F: Field>(m: &WeightModule<F>) -> Result<Submodule<F::Elem>> {
    let comps = primary_decomposition(m)?;
    Ok(graded_kernel(m, &radical_operator(m, &comps)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesLayer<E> {
    pub dim: usize,
    pub labels: Vec<(ModuleLabel<E>, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport<E> {
    /// `dim rad^i(M)` for `i = 0, 1, …` down to 0.
    pub radical_dims: Vec<usize>,
    /// `dim soc^j(M)` for `j = 0, 1, …` up to `dim M`.
    pub socle_dims: Vec<usize>,
    /// Semisimple layers `rad^i / rad^{i+1}`, top first.
    pub radical_layers: Vec<SeriesLayer<E>>,
    /// Semisimple layers `soc^{j+1} / soc^j`, bottom first.
    pub socle_layers: Vec<SeriesLayer<E>>,
    pub radical_length: usize,
    pub socle_length: usize,
}

impl<E> SeriesReport<E> {
    /// Radical length equals socle length.
    pub fn consistent(&self) -> bool {
        self.radical_length == self.socle_length
    }
}

/// Radical and socle series with the simple constituents of each layer.
pub fn series<F: Field>(m: &WeightModule<F>) -> Result<SeriesReport<F::Elem>> {
    let f = m.field();
    let comps = primary_decomposition(m)?;
    let t = radical_operator(m, &comps);
    let d = m.dim();

    let mut rads = vec![graded_span(m, &identity_cols(f, d))];
    let mut socs = vec![Submodule::zero()];
    let mut power = Matrix::identity(f, d);
    while rads.last().expect("nonempty").dim() > 0 {
        power = t.mul(f, &power);
        rads.push(graded_image(m, &power));
        socs.push(graded_kernel(m, &power));
        if rads.len() > d + 2 {
            return Err(Error::Internal("radical series does not terminate".into()));
        }
    }
    let layer = |upper: &Submodule<F::Elem>, lower: &Submodule<F::Elem>| -> Result<SeriesLayer<F::Elem>> {
        let (q, _) = subquotient(m, upper, lower)?;
        let rep = classify(&q, 0)?;
        Ok(SeriesLayer {
            dim: q.dim(),
            labels: rep.summands,
        })
    };
    let mut radical_layers = Vec::new();
    for w in rads.windows(2) {
        radical_layers.push(layer(&w[0], &w[1])?);
    }
    let mut socle_layers = Vec::new();
    for w in socs.windows(2) {
        socle_layers.push(layer(&w[1], &w[0])?);
    }
    let socle_length = socs.iter().position(|s| s.dim() == d).unwrap_or(socs.len());
    Ok(SeriesReport {
        radical_dims: rads.iter().map(Submodule::dim).collect(),
        socle_dims: socs.iter().map(Submodule::dim).collect(),
        radical_length: rads.len() - 1,
        socle_length,
        radical_layers,
        socle_layers,
    })
}

fn identity_cols<F: Field>(f: &F, d: usize) -> Vec<Vec<F::Elem>> {
    (0..d)
        .map(|i| {
            let mut v = vec![f.zero(); d];
            v[i] = f.one();
            v
        })
        .collect()
}
