use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{require_same, WeightModule};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix};
use crate::grouprep::char_mul;

/// `M ⊗ N` with basis `m_i ⊗ n_j` at index `i·dim N + j`; `x` acts by
/// `X_M ⊗ ρ_N(a) + 1 ⊗ X_N`.
pub fn mod_tensor<F: Field>(m: &WeightModule<F>, n: &WeightModule<F>) -> Result<WeightModule<F>> {
    require_same(m, n)?;
    let f = m.field();
    let weights = m
        .weights
        .iter()
        .flat_map(|u| n.weights.iter().map(move |v| char_mul(f, u, v)))
        .collect();
    let rho_a = n.rho(m.hopf.a());
    let x = m
        .x
        .kron(f, &rho_a)
        .add(f, &Matrix::identity(f, m.dim()).kron(f, &n.x));
    WeightModule::new_unchecked(m.hopf.clone(), weights, x)
}

pub fn mod_direct_sum<F: Field>(m: &WeightModule<F>, n: &WeightModule<F>) -> Result<WeightModule<F>> {
    require_same(m, n)?;
    let f = m.field();
    let mut weights = m.weights.clone();
    weights.extend(n.weights.iter().cloned());
    WeightModule::new_unchecked(m.hopf.clone(), weights, m.x.direct_sum(f, &n.x))
}

/// The module on the new basis given by the columns of `p`, which must be
/// invertible and map each weight space into itself.
pub fn mod_conjugate<F: Field>(m: &WeightModule<F>, p: &Matrix<F::Elem>) -> Result<WeightModule<F>> {
    let f = m.field();
    if p.nrows() != m.dim() || p.ncols() != m.dim() {
        return Err(Error::Shape(format!("change of basis is {}x{} for dimension {}", p.nrows(), p.ncols(), m.dim())));
    }
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if !f.is_zero(p.get(i, j)) && m.weights[i] != m.weights[j] {
                return Err(Error::InvalidModule(format!(
                    "change of basis mixes weight spaces at entry ({i},{j})"
                )));
            }
        }
    }
    let inv = p
        .inverse(f)
        .ok_or_else(|| Error::InvalidModule("change of basis is singular".into()))?;
    let x = inv.mul(f, &m.x).mul(f, p);
    WeightModule::new_unchecked(m.hopf.clone(), m.weights.clone(), x)
}

/// Random invertible change of basis inside each weight space, drawn from
/// ChaCha8 seeded with `seed`. Over fields without a finite element list
/// the entries are small integers.
pub fn random_graded_basis<F: Field>(m: &WeightModule<F>, seed: u64) -> Matrix<F::Elem> {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Matrix::zeros(f, m.dim(), m.dim());
    for (_, idx) in m.weight_blocks() {
        let k = idx.len();
        loop {
            let mut b = Matrix::zeros(f, k, k);
            for r in 0..k {
                for c in 0..k {
                    b.set(r, c, f.random_elem(&mut rng));
                }
            }
            if b.rank(f) == k {
                for r in 0..k {
                    for c in 0..k {
                        p.set(idx[r], idx[c], b.get(r, c).clone());
                    }
                }
                break;
            }
        }
    }
    p
}

/// An isomorphic copy of `m` on a random weight-graded basis.
pub fn mod_scramble<F: Field>(m: &WeightModule<F>, seed: u64) -> WeightModule<F> {
    let p = random_graded_basis(m, seed);
    mod_conjugate(m, &p).expect("graded invertible by construction")
}
