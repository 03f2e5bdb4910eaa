//! Mechanical check of the Hopf algebra axioms on a truncated basis.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{add_term, HopfPresentation, Mono, TensorTerms, Terms};
use crate::exactnum::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub witness: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub degree_cap: u32,
    /// Group elements (by display name) used as left factors of the basis.
    pub group_range: Vec<String>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &AxiomFailure)> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.name.as_str(), f)))
    }
}

type Triple = (Mono, Mono, Mono);

impl<F: Field> HopfPresentation<F> {
    /// Basis elements `g·xⁱ` with `g` among the identity, the generators and
    /// `a`, and `i ≤ D` (and `i < n` under a quotient).
    pub fn axiom_basis(&self, degree_cap: u32) -> Vec<Mono> {
        let mut gs: Vec<u32> = vec![0];
        for g in self.group().generators() {
            gs.push(self.group().index(&g) as u32);
        }
        gs.push(self.a_index());
        gs.sort_unstable();
        gs.dedup();
        let top = match self.quotient().n() {
            Some(n) => degree_cap.min(n - 1),
            None => degree_cap,
        };
        gs.iter()
            .flat_map(|&g| (0..=top).map(move |i| (g, i)))
            .collect()
    }

    /// Multiplicative test factors: generators, `a`, their inverses and `x`.
    fn axiom_factors(&self) -> Vec<Mono> {
        let mut gs: Vec<u32> = self
            .group()
            .generators()
            .iter()
            .map(|g| self.group().index(g) as u32)
            .collect();
        gs.push(self.a_index());
        let mut fs: Vec<Mono> = gs.iter().flat_map(|&g| [(g, 0), (self.ginv(g), 0)]).collect();
        fs.push((0, 1));
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    pub fn verify_hopf_axioms(&self, degree_cap: u32) -> AxiomReport {
        let basis = self.axiom_basis(degree_cap);
        let factors = self.axiom_factors();
        let f = self.field();
        let one = f.one();
        let unit = |m: Mono| -> Terms<F::Elem> {
            let mut t = Terms::new();
            t.insert(m, f.one());
            t
        };
        let scalar_one = |c: F::Elem| -> Terms<F::Elem> {
            let mut t = Terms::new();
            add_term(f, &mut t, (0, 0), c);
            t
        };

        // Single-element checks, parallel over the basis.
        let per_basis: Vec<[Option<AxiomFailure>; 5]> = basis
            .par_iter()
            .map(|&b| {
                let name = self.format(&self.wrap(unit(b)));
                let delta = self.comul_terms(&unit(b));

                let mut left: BTreeMap<Triple, F::Elem> = BTreeMap::new();
                let mut right: BTreeMap<Triple, F::Elem> = BTreeMap::new();
                for (&(m1, m2), c) in &delta {
                    let mut d1 = TensorTerms::new();
                    self.comul_mono_into(&mut d1, m1, c);
                    for ((u, v), e) in d1 {
                        add_term(f, &mut left, (u, v, m2), e);
                    }
                    let mut d2 = TensorTerms::new();
                    self.comul_mono_into(&mut d2, m2, c);
                    for ((u, v), e) in d2 {
                        add_term(f, &mut right, (m1, u, v), e);
                    }
                }
                let coassoc = (left != right).then(|| AxiomFailure {
                    witness: name.clone(),
                    detail: format!(
                        "(Δ⊗id)Δ and (id⊗Δ)Δ differ in {} coefficients",
                        diff_count(f, &left, &right)
                    ),
                });

                let mut eps_l = Terms::new();
                let mut eps_r = Terms::new();
                for (&(m1, m2), c) in &delta {
                    if m1.1 == 0 {
                        add_term(f, &mut eps_l, m2, c.clone());
                    }
                    if m2.1 == 0 {
                        add_term(f, &mut eps_r, m1, c.clone());
                    }
                }
                let target = unit(b);
                let counit_l = (eps_l != target).then(|| AxiomFailure {
                    witness: name.clone(),
                    detail: format!("(ε⊗id)Δ(b) = {}", self.format(&self.wrap(eps_l.clone()))),
                });
                let counit_r = (eps_r != target).then(|| AxiomFailure {
                    witness: name.clone(),
                    detail: format!("(id⊗ε)Δ(b) = {}", self.format(&self.wrap(eps_r.clone()))),
                });

                let eps_b = scalar_one(if b.1 == 0 { one.clone() } else { f.zero() });
                let mut s_l = Terms::new();
                let mut s_r = Terms::new();
                for (&(m1, m2), c) in &delta {
                    let sm1 = self.antipode_mono(m1);
                    for (k, v) in self.mul_terms(&sm1, &unit(m2)) {
                        add_term(f, &mut s_l, k, f.mul(c, &v));
                    }
                    let sm2 = self.antipode_mono(m2);
                    for (k, v) in self.mul_terms(&unit(m1), &sm2) {
                        add_term(f, &mut s_r, k, f.mul(c, &v));
                    }
                }
                let anti_l = (s_l != eps_b).then(|| AxiomFailure {
                    witness: name.clone(),
                    detail: format!("m(S⊗id)Δ(b) = {}", self.format(&self.wrap(s_l.clone()))),
                });
                let anti_r = (s_r != eps_b).then(|| AxiomFailure {
                    witness: name.clone(),
                    detail: format!("m(id⊗S)Δ(b) = {}", self.format(&self.wrap(s_r.clone()))),
                });
                [coassoc, counit_l, counit_r, anti_l, anti_r]
            })
            .collect();

        // Product checks on pairs (basis, factor) and triples (basis, factor, factor).
        let pairs: Vec<(Mono, Mono)> = basis
            .iter()
            .flat_map(|&b| factors.iter().map(move |&v| (b, v)))
            .collect();
        let per_pair: Vec<[Option<AxiomFailure>; 3]> = pairs
            .par_iter()
            .map(|&(u, v)| {
                let witness = format!(
                    "({})·({})",
                    self.format(&self.wrap(unit(u))),
                    self.format(&self.wrap(unit(v)))
                );
                let uv = self.mono_mul(u, v);
                let lhs = self.comul_terms(&uv);
                let rhs = self.tensor_mul_terms(&self.comul_terms(&unit(u)), &self.comul_terms(&unit(v)));
                let delta = (lhs != rhs).then(|| AxiomFailure {
                    witness: witness.clone(),
                    detail: format!("Δ(uv) ≠ Δ(u)Δ(v) in {} coefficients", diff_count(f, &lhs, &rhs)),
                });
                let eu = self.counit_terms(&unit(u));
                let ev = self.counit_terms(&unit(v));
                let euv = self.counit_terms(&uv);
                let eps = (euv != f.mul(&eu, &ev)).then(|| AxiomFailure {
                    witness: witness.clone(),
                    detail: format!("ε(uv) = {}", f.fmt_elem(&euv)),
                });
                let s_uv = self.antipode_terms(&uv);
                let s_vu = self.mul_terms(&self.antipode_mono(v), &self.antipode_mono(u));
                let anti = (s_uv != s_vu).then(|| AxiomFailure {
                    witness,
                    detail: format!(
                        "S(uv) = {} but S(v)S(u) = {}",
                        self.format(&self.wrap(s_uv.clone())),
                        self.format(&self.wrap(s_vu.clone()))
                    ),
                });
                [delta, eps, anti]
            })
            .collect();

        let triples: Vec<(Mono, Mono, Mono)> = pairs
            .iter()
            .flat_map(|&(u, v)| factors.iter().map(move |&w| (u, v, w)))
            .collect();
        let assoc: Vec<Option<AxiomFailure>> = triples
            .par_iter()
            .map(|&(u, v, w)| {
                let l = self.mul_terms(&self.mono_mul(u, v), &unit(w));
                let r = self.mul_terms(&unit(u), &self.mono_mul(v, w));
                (l != r).then(|| AxiomFailure {
                    witness: format!(
                        "({})·({})·({})",
                        self.format(&self.wrap(unit(u))),
                        self.format(&self.wrap(unit(v))),
                        self.format(&self.wrap(unit(w)))
                    ),
                    detail: format!(
                        "(uv)w = {} but u(vw) = {}",
                        self.format(&self.wrap(l.clone())),
                        self.format(&self.wrap(r.clone()))
                    ),
                })
            })
            .collect();

        let names = [
            "coassociativity",
            "counit (left)",
            "counit (right)",
            "antipode (left)",
            "antipode (right)",
        ];
        let mut checks: Vec<AxiomCheck> = names
            .iter()
            .enumerate()
            .map(|(k, name)| AxiomCheck {
                name: (*name).into(),
                cases: basis.len(),
                failures: per_basis.iter().filter_map(|r| r[k].clone()).collect(),
            })
            .collect();
        for (k, name) in ["comultiplication is multiplicative", "counit is multiplicative", "antipode is anti-multiplicative"]
            .iter()
            .enumerate()
        {
            checks.push(AxiomCheck {
                name: (*name).into(),
                cases: pairs.len(),
                failures: per_pair.iter().filter_map(|r| r[k].clone()).collect(),
            });
        }
        checks.push(AxiomCheck {
            name: "associativity".into(),
            cases: triples.len(),
            failures: assoc.into_iter().flatten().collect(),
        });

        let mut group_range: Vec<String> = basis
            .iter()
            .map(|m| self.format_group(m.0))
            .collect();
        group_range.dedup();
        AxiomReport {
            degree_cap,
            group_range,
            checks,
        }
    }
}

fn diff_count<F: Field, K: Ord + Copy>(f: &F, a: &BTreeMap<K, F::Elem>, b: &BTreeMap<K, F::Elem>) -> usize {
    let mut d = a.clone();
    for (k, v) in b {
        add_term(f, &mut d, *k, f.neg(v));
    }
    d.len()
}
