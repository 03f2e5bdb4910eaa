//! Skew-primitive elements and the rank of `H`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{add_term, Case, HopfElement, HopfPresentation, Mono, QuotientSpec, TensorTerms};
use crate::error::{Error, Result};
use crate::exactnum::matrix::row_space;
use crate::exactnum::{Field, Matrix};
use crate::grouprep::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RankClass {
    One,
    Two,
    Infinite,
}

impl std::fmt::Display for RankClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RankClass::One => "1",
            RankClass::Two => "2",
            RankClass::Infinite => "infinite",
        })
    }
}

/// The scan result at one group-like `g`.
#[derive(Debug, Clone)]
pub struct PrimitiveScan<E> {
    pub g: GroupElement,
    pub basis: Vec<HopfElement<E>>,
    /// Leading `x`-degrees of the basis elements outside `kG`.
    pub degrees: Vec<u32>,
    pub predicted_degrees: Vec<u32>,
    pub predicted_dimension: usize,
}

#[derive(Debug, Clone)]
pub struct RankReport<E> {
    pub degree_cap: u32,
    pub characteristic: u64,
    pub q_order: Option<u64>,
    pub case: Case,
    pub rank: RankClass,
    /// Degrees of nontrivial skew-primitives found by the scan.
    pub primitive_degrees: BTreeSet<u32>,
    /// Degrees predicted from the characteristic and the order of `q`.
    pub predicted_degrees: BTreeSet<u32>,
    pub scans: Vec<PrimitiveScan<E>>,
    pub mismatches: Vec<String>,
}

impl<E> RankReport<E> {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Degrees of `H₁` as a graded `kG`-module: `0` plus the primitive degrees.
    pub fn h1_degrees(&self) -> BTreeSet<u32> {
        let mut d = self.primitive_degrees.clone();
        d.insert(0);
        d
    }
}

/// Rank and the degrees `d ≤ cap` carrying a nontrivial skew-primitive
/// (always at `g = a^d`), from `char k` and the order `N` of `q`. In
/// characteristic `p` with `q = 1` both cases give degrees `1, p, p², …`.
pub fn predicted_primitive_degrees(characteristic: u64, q_order: Option<u64>, cap: u32) -> (RankClass, BTreeSet<u32>) {
    let mut out = BTreeSet::new();
    if cap >= 1 {
        out.insert(1);
    }
    let n = q_order.unwrap_or(0);
    if characteristic == 0 {
        if n >= 2 {
            if n <= cap as u64 {
                out.insert(n as u32);
            }
            return (RankClass::Two, out);
        }
        return (RankClass::One, out);
    }
    let p = characteristic;
    if n == 0 {
        return (RankClass::One, out);
    }
    // N·p^r for r ≥ 0 (N ≥ 2), or p^r for r ≥ 1 when q = 1
    let mut d = if n == 1 { p } else { n };
    while d <= cap as u64 {
        out.insert(d as u32);
        d = match d.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    (RankClass::Infinite, out)
}

impl<F: Field> HopfPresentation<F> {
    /// Basis of `{z : deg z ≤ D, Δ(z) = z⊗g + 1⊗z}` in reduced echelon form
    /// with respect to the order (degree descending, group index ascending),
    /// each element scaled to leading coefficient 1.
    pub fn skew_primitive_space(&self, g: &GroupElement, degree_cap: u32) -> Result<Vec<HopfElement<F::Elem>>> {
        if degree_cap < 1 {
            return Err(Error::Presentation("degree cap must be ≥ 1".into()));
        }
        let gi = self.index_of(g)?;
        let f = self.field();
        let top = match self.quotient().n() {
            Some(n) => degree_cap.min(n - 1),
            None => degree_cap,
        };
        let order = self.group_order() as u32;
        let unknowns: Vec<Mono> = (0..=top)
            .rev()
            .flat_map(|d| (0..order).map(move |h| (h, d)))
            .collect();

        let images: Vec<TensorTerms<F::Elem>> = unknowns
            .iter()
            .map(|&m| {
                let mut t = TensorTerms::new();
                self.comul_mono_into(&mut t, m, &f.one());
                add_term(f, &mut t, (m, (gi, 0)), f.neg(&f.one()));
                add_term(f, &mut t, ((0, 0), m), f.neg(&f.one()));
                t
            })
            .collect();

        // The system splits into blocks of unknowns sharing tensor keys.
        let mut parent: Vec<usize> = (0..unknowns.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut owner: HashMap<(Mono, Mono), usize> = HashMap::new();
        for (u, img) in images.iter().enumerate() {
            for k in img.keys() {
                match owner.get(k) {
                    Some(&v) => {
                        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                    None => {
                        owner.insert(*k, u);
                    }
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..unknowns.len() {
            let r = find(&mut parent, u);
            comps.entry(r).or_default().push(u);
        }

        let mut solutions: Vec<Vec<F::Elem>> = Vec::new();
        for members in comps.values() {
            let mut keys: Vec<(Mono, Mono)> = members
                .iter()
                .flat_map(|&u| images[u].keys().copied())
                .collect();
            keys.sort_unstable();
            keys.dedup();
            let row_of: HashMap<(Mono, Mono), usize> =
                keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
            let mut m = Matrix::zeros(f, keys.len().max(1), members.len());
            for (c, &u) in members.iter().enumerate() {
                for (k, v) in &images[u] {
                    m.set(row_of[k], c, v.clone());
                }
            }
            for kv in m.kernel(f) {
                let mut full = vec![f.zero(); unknowns.len()];
                for (c, &u) in members.iter().enumerate() {
                    full[u] = kv[c].clone();
                }
                solutions.push(full);
            }
        }
        let reduced = row_space(f, &solutions, unknowns.len());
        Ok(reduced
            .into_iter()
            .map(|row| {
                let terms = unknowns
                    .iter()
                    .zip(row)
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(m, c)| (*m, c));
                self.from_terms(terms).expect("indices come from the group")
            })
            .collect())
    }

    /// Scans `g ∈ {a^j}` for skew-primitives up to the degree cap and checks
    /// the result against the predicted rank and degrees.
    pub fn rank_report(&self, degree_cap: u32) -> Result<RankReport<F::Elem>> {
        if !matches!(self.quotient(), QuotientSpec::None) {
            return Err(Error::Unsupported("rank report needs the unquotiented algebra".into()));
        }
        if degree_cap < 1 {
            return Err(Error::Presentation("degree cap must be ≥ 1".into()));
        }
        let characteristic = self.field().characteristic();
        let q_order = self.q_order();
        let (rank, predicted) = predicted_primitive_degrees(characteristic, q_order, degree_cap);
        let a = self.a_index();
        let a_order = self.group().element_order(self.a()) as u32;

        let mut scans = Vec::new();
        let mut found = BTreeSet::new();
        let mut mismatches = Vec::new();
        for j in 0..a_order {
            let gi = self.gpow(a, j as u64);
            let g = self.element_at(gi);
            let basis = self.skew_primitive_space(&g, degree_cap)?;
            let mut degrees: Vec<u32> = basis
                .iter()
                .filter_map(|z| z.degree())
                .filter(|&d| d > 0)
                .collect();
            degrees.sort_unstable();
            let pd: Vec<u32> = predicted
                .iter()
                .copied()
                .filter(|&d| self.gpow(a, d as u64) == gi)
                .collect();
            let pdim = pd.len() + usize::from(gi != 0);
            if degrees != pd || basis.len() != pdim {
                mismatches.push(format!(
                    "at g = {}: scan found degrees {:?} (dimension {}), prediction {:?} (dimension {})",
                    self.format_group(gi),
                    degrees,
                    basis.len(),
                    pd,
                    pdim
                ));
            }
            found.extend(degrees.iter().copied());
            scans.push(PrimitiveScan {
                g,
                basis,
                degrees,
                predicted_degrees: pd,
                predicted_dimension: pdim,
            });
        }
        if found != predicted {
            mismatches.push(format!("scan degrees {found:?} differ from prediction {predicted:?}"));
        }
        Ok(RankReport {
            degree_cap,
            characteristic,
            q_order,
            case: self.case(),
            rank,
            primitive_degrees: found,
            predicted_degrees: predicted,
            scans,
            mismatches,
        })
    }
}
