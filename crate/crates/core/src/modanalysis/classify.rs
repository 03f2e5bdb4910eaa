use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    graded_kernel, hom_space, primary_decomposition, restrict, DecompositionReport, Provenance, Submodule,
    SummandBlock,
};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, UniPoly};
use crate::grouprep::{char_mul, Character, CharacterCoset};
use crate::weightmod::{ModuleLabel, WeightModule};

const ATTEMPTS: usize = 32;

struct Piece<E> {
    label: ModuleLabel<E>,
    top: Character<E>,
    /// Ladder `v, xv, x²v, …` in the coordinates of the module it was cut from.
    basis: Vec<Vec<E>>,
}

/// Decomposes `M` into indecomposables. Each summand is generated by a
/// weight vector `v` of maximal radical length in its primary component;
/// the ladder `v, xv, …` is split off by an exact retraction found in
/// `Hom(N, ⟨v⟩)`, and the complement is treated recursively.
pub fn classify<F: Field>(m: &WeightModule<F>, seed: u64) -> Result<DecompositionReport<F::Elem>> {
    let f = m.field();
    let d = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces: Vec<Piece<F::Elem>> = Vec::new();
    for comp in primary_decomposition(m)? {
        let cm = restrict(m, &comp.submodule)?;
        let poly = (!comp.is_y(f)).then(|| comp.f.clone());
        for p in split(&cm, poly.as_ref(), &mut rng)? {
            let basis = p
                .basis
                .iter()
                .map(|v| combine(f, &comp.submodule.basis, v, d))
                .collect();
            pieces.push(Piece {
                label: p.label,
                top: p.top,
                basis,
            });
        }
    }
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(d);
    let mut blocks = Vec::with_capacity(pieces.len());
    for p in &pieces {
        blocks.push(SummandBlock {
            label: p.label.clone(),
            top_weight: p.top.clone(),
            offset: cols.len(),
            dim: p.basis.len(),
        });
        cols.extend(p.basis.iter().cloned());
    }
    if cols.len() != d {
        return Err(Error::Internal(format!("summands cover {} of {d} dimensions", cols.len())));
    }
    let mut report = DecompositionReport::from_labels(pieces.into_iter().map(|p| p.label).collect(), Provenance::IdempotentSplit);
    report.blocks = blocks;
    report.witness = Some(Matrix::from_cols(f, d, &cols));
    Ok(report)
}

pub fn is_simple<F: Field>(m: &WeightModule<F>) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let r = classify(m, 0)?;
    Ok(r.total_count() == 1 && r.summands[0].0.is_simple())
}

pub fn is_indecomposable<F: Field>(m: &WeightModule<F>) -> Result<bool> {
    Ok(m.dim() > 0 && classify(m, 0)?.total_count() == 1)
}

/// `Σ c_i b_i` in `k^d`.
fn combine<F: Field>(f: &F, basis: &[Vec<F::Elem>], c: &[F::Elem], d: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); d];
    for (b, ci) in basis.iter().zip(c) {
        if f.is_zero(ci) {
            continue;
        }
        for (o, bi) in out.iter_mut().zip(b) {
            *o = f.add(o, &f.mul(ci, bi));
        }
    }
    out
}

/// Splits a primary module: `poly = None` for the `y`-component, otherwise
/// the irreducible `f ≠ y` it is primary for.
fn split<F: Field>(n: &WeightModule<F>, poly: Option<&UniPoly<F::Elem>>, rng: &mut ChaCha8Rng) -> Result<Vec<Piece<F::Elem>>> {
    let f = n.field();
    let d = n.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let hopf = n.hopf();
    let s = hopf.s();
    let r_op = match poly {
        None => n.x().clone(),
        Some(p) => n.x().pow(f, s).eval_poly(f, p),
    };
    // radical length L and R^{L−1}
    let mut top_power = Matrix::identity(f, d);
    let mut len = 0usize;
    loop {
        let next = r_op.mul(f, &top_power);
        len += 1;
        if next.is_zero(f) {
            break;
        }
        if len > d {
            return Err(Error::Internal("radical operator is not nilpotent on a primary component".into()));
        }
        top_power = next;
    }
    let ladder_len = match poly {
        None => len,
        Some(p) => len * s as usize * p.degree().expect("nonzero"),
    };

    let blocks = n.weight_blocks();
    let candidates: Vec<&(Character<F::Elem>, Vec<usize>)> = blocks
        .iter()
        .filter(|(_, idx)| idx.iter().any(|&j| !top_power.col(j).iter().all(|c| f.is_zero(c))))
        .collect();
    if candidates.is_empty() {
        return Err(Error::Internal("no generator of maximal length".into()));
    }
    for attempt in 0..ATTEMPTS {
        let (w, idx) = candidates[attempt % candidates.len()];
        let mut v = vec![f.zero(); d];
        for &j in idx {
            v[j] = f.random_elem(rng);
        }
        if top_power.mul_vec(f, &v).iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let mut ladder = Vec::with_capacity(ladder_len);
        let mut weights = Vec::with_capacity(ladder_len);
        let mut cur = v;
        let mut cw = w.clone();
        for _ in 0..ladder_len {
            let next = n.x().mul_vec(f, &cur);
            ladder.push(cur);
            weights.push(cw.clone());
            cw = char_mul(f, hopf.chi(), &cw);
            cur = next;
        }
        let label = match poly {
            None => ModuleLabel::serial(w.clone(), len as u32),
            Some(p) => ModuleLabel::Block {
                coset: CharacterCoset::new(f, hopf.group(), w, hopf.chi()),
                f: p.clone(),
                r: len as u32,
            },
        };
        let piece = Piece {
            label,
            top: w.clone(),
            basis: ladder.clone(),
        };
        if ladder_len == d {
            return Ok(vec![piece]);
        }
        let u = Submodule { basis: ladder, weights };
        let Some(complement) = retraction_kernel(n, &u)? else {
            continue;
        };
        let rest = restrict(n, &complement)?;
        let mut out = vec![piece];
        for p in split(&rest, poly, rng)? {
            let basis = p.basis.iter().map(|c| combine(f, &complement.basis, c, d)).collect();
            out.push(Piece { basis, ..p });
        }
        return Ok(out);
    }
    Err(Error::Internal(format!("no split found after {ATTEMPTS} generators")))
}

/// Kernel of a module map `π: N → U` with `π|_U = id`, if one exists.
fn retraction_kernel<F: Field>(n: &WeightModule<F>, u: &Submodule<F::Elem>) -> Result<Option<Submodule<F::Elem>>> {
    let f = n.field();
    let um = restrict(n, u)?;
    let homs = hom_space(n, &um)?;
    let k = u.dim();
    let incl = Matrix::from_cols(f, n.dim(), &u.basis);
    // Σ c_i φ_i ι = I
    let prods: Vec<Vec<F::Elem>> = homs.iter().map(|h| h.mul(f, &incl).as_slice().to_vec()).collect();
    if prods.is_empty() {
        return Ok(None);
    }
    let a = Matrix::from_cols(f, k * k, &prods);
    let target = Matrix::identity(f, k).as_slice().to_vec();
    let Some(c) = a.solve(f, &target) else {
        return Ok(None);
    };
    let mut pi = Matrix::zeros(f, k, n.dim());
    for (ci, h) in c.iter().zip(&homs) {
        if !f.is_zero(ci) {
            pi = pi.add(f, &h.scale(f, ci));
        }
    }
    Ok(Some(graded_kernel(n, &pi)))
}
