//! Dense row-major matrices over a [`Field`] with exact Gaussian
//! elimination.

use serde::{Deserialize, Serialize};

use super::poly::UniPoly;
use super::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar<F: Field<Elem = E>>(field: &F, n: usize, c: &E) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal<F: Field<Elem = E>>(field: &F, d: &[E]) -> Self {
        let mut m = Self::zeros(field, d.len(), d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_cols<F: Field<Elem = E>>(field: &F, n: usize, cols: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.check_same(other);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.check_same(other);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let t = field.mul(a, b);
                    let idx = i * out.cols + j;
                    out.data[idx] = field.add(&out.data[idx], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(b) {
                        acc = field.add(&acc, &field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly<F: Field<Elem = E>>(&self, field: &F, p: &UniPoly<E>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(field, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(field, self).add(field, &Self::scalar(field, n, c));
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zeros(field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if field.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, field.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zeros(field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place<F: Field<Elem = E>>(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if field.is_zero(&f) {
                    continue;
                }
                for j in c..self.cols {
                    let t = field.mul(&f, self.get(r, j));
                    let v = field.sub(self.get(i, j), &t);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place(field);
        (m, p)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right null space `{v : self·v = 0}`.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self·x = b`, or `None` if inconsistent.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, field.one());
        }
        let pivots = aug.rref_in_place(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(aug.select(&rows, &cols))
    }

    /// Basis of the column space, as reduced vectors.
    pub fn column_space<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        row_space(field, &self.transpose().to_rows(), self.rows)
    }
}

/// Echelon basis (reduced, nonzero rows) of the span of `vectors` in `k^n`.
pub fn row_space<F: Field>(field: &F, vectors: &[Vec<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors.to_vec()).expect("vectors of equal length");
    assert_eq!(m.ncols(), n);
    let pivots = m.rref_in_place(field);
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

/// Basis of `span(a) ∩ span(b)` in `k^n`.
pub fn intersect_spaces<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
    n: usize,
) -> Vec<Vec<F::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve Σ x_i a_i = Σ y_j b_j
    let mut cols: Vec<Vec<F::Elem>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| field.neg(x)).collect()));
    let m = Matrix::from_cols(field, n, &cols);
    let ker = m.kernel(field);
    let vecs: Vec<Vec<F::Elem>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![field.zero(); n];
            for (i, ai) in a.iter().enumerate() {
                if field.is_zero(&k[i]) {
                    continue;
                }
                for (t, x) in ai.iter().enumerate() {
                    v[t] = field.add(&v[t], &field.mul(&k[i], x));
                }
            }
            v
        })
        .collect();
    row_space(field, &vecs, n)
}

/// Monic generator of `{p : p(op) = 0}`, found as the first linear relation
/// among `I, op, op^2, …` (flattened).
pub fn minimal_polynomial<F: Field>(field: &F, op: &Matrix<F::Elem>) -> Result<UniPoly<F::Elem>> {
    if !op.is_square() {
        return Err(Error::Shape(format!(
            "minimal polynomial of a {}x{} matrix",
            op.nrows(),
            op.ncols()
        )));
    }
    let n = op.nrows();
    if n == 0 {
        return Ok(UniPoly::one(field));
    }
    let n2 = n * n;
    // Incremental elimination: each stored row is [flattened power | tag],
    // where the tag records which combination of powers produced it.
    let width = n2 + n + 1;
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    let mut power = Matrix::identity(field, n);
    for d in 0..=n {
        let mut row = power.as_slice().to_vec();
        row.resize(width, field.zero());
        row[n2 + d] = field.one();
        for (piv, b) in &basis {
            let c = row[*piv].clone();
            if !field.is_zero(&c) {
                for j in 0..width {
                    let t = field.mul(&c, &b[j]);
                    row[j] = field.sub(&row[j], &t);
                }
            }
        }
        match (0..n2).find(|&j| !field.is_zero(&row[j])) {
            Some(piv) => {
                let inv = field.inv(&row[piv]).unwrap();
                for x in row.iter_mut() {
                    *x = field.mul(x, &inv);
                }
                basis.push((piv, row));
            }
            None => {
                let coeffs = row[n2..n2 + d + 1].to_vec();
                return Ok(UniPoly::from_coeffs(field, coeffs).monic(field));
            }
        }
        power = power.mul(field, op);
    }
    Err(Error::Internal("no relation among n+1 powers".into()))
}
