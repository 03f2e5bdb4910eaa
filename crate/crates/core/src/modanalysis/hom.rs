use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix};
use crate::grouprep::char_mul;
use crate::weightmod::{require_same, WeightModule};

/// Basis of `Hom_H(M, N)` as `dim N × dim M` matrices. Homomorphisms
/// preserve weights, so only entries between equal weights are unknowns;
/// the remaining condition is `X_N φ = φ X_M`.
pub fn hom_space<F: Field>(m: &WeightModule<F>, n: &WeightModule<F>) -> Result<Vec<Matrix<F::Elem>>> {
    require_same(m, n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..dn {
        for j in 0..dm {
            if n.weights()[i] == m.weights()[j] {
                index.insert((i, j), unknowns.len());
                unknowns.push((i, j));
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let chi = m.hopf().chi();
    let xm = m.x();
    let xn = n.x();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..dn {
        for j in 0..dm {
            if n.weights()[i] != char_mul(f, chi, &m.weights()[j]) {
                continue;
            }
            // (X_N φ − φ X_M)_{ij}
            let mut row = vec![f.zero(); unknowns.len()];
            let mut any = false;
            for k in 0..dn {
                let c = xn.get(i, k);
                if f.is_zero(c) {
                    continue;
                }
                if let Some(&u) = index.get(&(k, j)) {
                    row[u] = f.add(&row[u], c);
                    any = true;
                }
            }
            for k in 0..dm {
                let c = xm.get(k, j);
                if f.is_zero(c) {
                    continue;
                }
                if let Some(&u) = index.get(&(i, k)) {
                    row[u] = f.sub(&row[u], c);
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns.len())
            .map(|u| {
                let mut v = vec![f.zero(); unknowns.len()];
                v[u] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows)?.kernel(f)
    };
    Ok(kernel
        .into_iter()
        .map(|kv| {
            let mut phi = Matrix::zeros(f, dn, dm);
            for (u, &(i, j)) in unknowns.iter().enumerate() {
                phi.set(i, j, kv[u].clone());
            }
            phi
        })
        .collect())
}

fn is_hom<F: Field>(m: &WeightModule<F>, n: &WeightModule<F>, phi: &Matrix<F::Elem>) -> bool {
    let f = m.field();
    if phi.nrows() != n.dim() || phi.ncols() != m.dim() {
        return false;
    }
    for i in 0..n.dim() {
        for j in 0..m.dim() {
            if !f.is_zero(phi.get(i, j)) && n.weights()[i] != m.weights()[j] {
                return false;
            }
        }
    }
    n.x().mul(f, phi) == phi.mul(f, m.x())
}

/// Whether the epimorphism `map: M → N` has a module section.
pub fn is_split_epi<F: Field>(m: &WeightModule<F>, n: &WeightModule<F>, map: &Matrix<F::Elem>) -> Result<bool> {
    require_same(m, n)?;
    let f = m.field();
    if !is_hom(m, n, map) {
        return Err(Error::InvalidModule("the map is not a module homomorphism".into()));
    }
    if map.rank(f) != n.dim() {
        return Err(Error::InvalidModule("the map is not surjective".into()));
    }
    let sections = hom_space(n, m)?;
    if sections.is_empty() {
        return Ok(n.dim() == 0);
    }
    let k = n.dim();
    let cols: Vec<Vec<F::Elem>> = sections.iter().map(|s| map.mul(f, s).as_slice().to_vec()).collect();
    let a = Matrix::from_cols(f, k * k, &cols);
    Ok(a.solve(f, Matrix::identity(f, k).as_slice()).is_some())
}
