use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Action, Span};
use crate::error::{Error, Result};
use crate::exactnum::{minimal_polynomial, poly_factor, poly_xgcd, Field, Matrix};
use crate::grouprep::Character;
use crate::weightmod::WeightModule;

/// Random endomorphisms tried on a block before it is declared
/// indecomposable.
const ATTEMPTS: usize = 48;

/// One indecomposable summand found by the splitter.
#[derive(Debug, Clone)]
pub struct OracleBlock<E> {
    /// Basis in the coordinates of the input module.
    pub basis: Vec<Vec<E>>,
    pub weights: Vec<Character<E>>,
    /// Action matrices on `basis`: group generators, then `x`.
    pub mats: Vec<Matrix<E>>,
}

impl<E> OracleBlock<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone)]
pub struct OracleSplit<E> {
    pub blocks: Vec<OracleBlock<E>>,
    /// Block bases as columns, in block order.
    pub witness: Matrix<E>,
    pub provenance: &'static str,
}

impl<E> OracleSplit<E> {
    /// Block dimensions, ascending.
    pub fn block_dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.blocks.iter().map(OracleBlock::dim).collect();
        d.sort_unstable();
        d
    }
}

/// Endomorphism ring of an action, restricted to weight-preserving maps.
fn endomorphisms<F: Field>(act: &Action<F>) -> Result<Vec<Matrix<F::Elem>>> {
    let f = &act.field;
    let d = act.dim();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            if act.weights[i] == act.weights[j] {
                let n = index.len();
                index.insert((i, j), n);
            }
        }
    }
    let nu = index.len();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for a in &act.mats {
        // (Aφ − φA)_{ij}
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![f.zero(); nu];
                let mut any = false;
                for k in 0..d {
                    if let Some(&u) = index.get(&(k, j)) {
                        let c = a.get(i, k);
                        if !f.is_zero(c) {
                            row[u] = f.add(&row[u], c);
                            any = true;
                        }
                    }
                    if let Some(&u) = index.get(&(i, k)) {
                        let c = a.get(k, j);
                        if !f.is_zero(c) {
                            row[u] = f.sub(&row[u], c);
                            any = true;
                        }
                    }
                }
                if any && row.iter().any(|c| !f.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(f, nu).to_rows()
    } else {
        Matrix::from_rows(rows)?.kernel(f)
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut phi = Matrix::zeros(f, d, d);
            for (&(i, j), &u) in &index {
                phi.set(i, j, v[u].clone());
            }
            phi
        })
        .collect())
}

/// A nontrivial idempotent from the minimal polynomial of `phi`, if it has
/// two distinct irreducible factors.
fn fitting_idempotent<F: Field>(f: &F, phi: &Matrix<F::Elem>) -> Result<Option<Matrix<F::Elem>>> {
    let mu = minimal_polynomial(f, phi)?;
    let factors = poly_factor(f, &mu)?;
    if factors.factors.len() < 2 {
        return Ok(None);
    }
    let (p, e) = &factors.factors[0];
    let pe = p.pow(f, *e as u64);
    let cofactor = mu.div_exact(f, &pe);
    let (_, u, _) = poly_xgcd(f, &cofactor, &pe)?;
    let idem = u.mul(f, &cofactor).rem(f, &mu);
    Ok(Some(phi.eval_poly(f, &idem)))
}

fn split_rec<F: Field>(
    act: Action<F>,
    basis: Vec<Vec<F::Elem>>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<OracleBlock<F::Elem>>,
) -> Result<()> {
    let f = act.field.clone();
    let d = act.dim();
    if d == 0 {
        return Ok(());
    }
    let ends = if d == 1 { Vec::new() } else { endomorphisms(&act)? };
    if ends.len() > 1 {
        for _ in 0..ATTEMPTS {
            let mut phi = Matrix::zeros(&f, d, d);
            for e in &ends {
                phi = phi.add(&f, &e.scale(&f, &f.random_elem(rng)));
            }
            let Some(idem) = fitting_idempotent(&f, &phi)? else {
                continue;
            };
            let comp = Matrix::identity(&f, d).sub(&f, &idem);
            for e in [idem, comp] {
                let span: Span<F::Elem> = e.column_space(&f);
                let sub_basis: Vec<Vec<F::Elem>> = span
                    .iter()
                    .map(|r| {
                        let mut v = vec![f.zero(); basis[0].len()];
                        for (c, b) in r.iter().zip(&basis) {
                            if f.is_zero(c) {
                                continue;
                            }
                            for (a, x) in v.iter_mut().zip(b) {
                                *a = f.add(a, &f.mul(c, x));
                            }
                        }
                        v
                    })
                    .collect();
                split_rec(act.restrict(&span), sub_basis, rng, out)?;
            }
            return Ok(());
        }
    }
    out.push(OracleBlock {
        basis,
        weights: act.weights.clone(),
        mats: act.mats.clone(),
    });
    Ok(())
}

/// Splits `M` into indecomposable summands with idempotents of random
/// endomorphisms. A block is kept whole once its endomorphism ring is the
/// field or a fixed number of random elements give no idempotent.
pub fn oracle_split<F: Field>(m: &WeightModule<F>, seed: u64) -> Result<OracleSplit<F::Elem>> {
    let f = m.field();
    if !f.is_finite() {
        return Err(Error::Unsupported("the oracle splitter needs a finite field".into()));
    }
    let d = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    split_rec(Action::of(m), Matrix::identity(f, d).to_rows(), &mut rng, &mut blocks)?;
    let cols: Vec<Vec<F::Elem>> = blocks.iter().flat_map(|b| b.basis.iter().cloned()).collect();
    let witness = Matrix::from_cols(f, d, &cols);
    if witness.rank(f) != d {
        return Err(Error::Internal("oracle blocks do not span the module".into()));
    }
    Ok(OracleSplit {
        blocks,
        witness,
        provenance: "oracle",
    })
}
