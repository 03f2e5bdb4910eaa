use std::sync::Arc;

use super::*;
use crate::exactnum::PrimeField;
use crate::grouprep::{char_mul, AbelianGroup, CharacterCoset, Cocycle};
use crate::hopfcore::{HopfPresentation, QuotientSpec};
use crate::weightmod::*;

type H = HopfPresentation<PrimeField>;

fn cyclic(p: u64, n: u64, chi: u64, quotient: QuotientSpec<u64>) -> Arc<H> {
    let g = AbelianGroup::cyclic(n).unwrap();
    Arc::new(
        HopfPresentation::new(
            PrimeField::new(p).unwrap(),
            g.clone(),
            Character::new(vec![chi]),
            g.generator(0),
            Cocycle::new(vec![0]),
            quotient,
        )
        .unwrap(),
    )
}

fn lam(v: u64) -> Character<u64> {
    Character::new(vec![v])
}

fn poly(h: &H, s: &str) -> UniPoly<u64> {
    UniPoly::parse(h.field(), s).unwrap()
}

fn block(h: &H, l: u64, f: &str, r: u32) -> ModuleLabel<u64> {
    ModuleLabel::Block {
        coset: CharacterCoset::new(h.field(), h.group(), &lam(l), h.chi()),
        f: poly(h, f),
        r,
    }
}

fn serial(l: u64, t: u32) -> ModuleLabel<u64> {
    ModuleLabel::serial(lam(l), t)
}

fn pow_mod(b: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % p)
}

/// Independent check that the witness conjugates `x` into the block sum of
/// the standard modules generated at each block's top weight.
fn check_witness(m: &WeightModule<PrimeField>, r: &DecompositionReport<u64>) {
    let f = m.field();
    let p = r.witness.as_ref().unwrap();
    let conj = p.inverse(f).unwrap().mul(f, m.x()).mul(f, p);
    let mut expected: Option<Matrix<u64>> = None;
    for b in &r.blocks {
        let std = match &b.label {
            ModuleLabel::Block { f: poly, r, .. } => make_block(m.hopf(), &b.top_weight, poly, *r).unwrap(),
            other => make_labeled(m.hopf(), other).unwrap(),
        };
        assert_eq!(std.dim(), b.dim);
        expected = Some(match expected {
            None => std.x().clone(),
            Some(e) => e.direct_sum(f, std.x()),
        });
    }
    assert_eq!(conj, expected.unwrap());
}

#[test]
fn weight_space_dimensions() {
    let a = cyclic(5, 4, 2, QuotientSpec::None);
    let m = make_block(&a, &lam(1), &poly(&a, "y^2 + 2"), 1).unwrap();
    let ws = weight_spaces(&m);
    assert_eq!(ws.len(), 4);
    assert!(ws.iter().all(|(_, d)| *d == 2));
    let v = make_serial(&a, &lam(3), 3).unwrap();
    let ws = weight_spaces(&v);
    assert_eq!(ws.iter().map(|(_, d)| *d).sum::<usize>(), 3);
    assert!(ws.iter().all(|(_, d)| *d == 1));
}

#[test]
fn primary_components_and_projectors() {
    let b = cyclic(17, 16, 2, QuotientSpec::None);
    let f = *b.field();
    // y² − 3 has no root mod 17
    assert!((0..17u64).all(|t| (t * t + 17 - 3) % 17 != 0));
    let m = mod_direct_sum(
        &make_block(&b, &lam(3), &poly(&b, "y - 3"), 1).unwrap(),
        &make_block(&b, &lam(3), &poly(&b, "y^2 - 3"), 2).unwrap(),
    )
    .unwrap();
    let m = mod_scramble(&m, 7);
    let comps = primary_decomposition(&m).unwrap();
    assert_eq!(comps.len(), 2);
    let dims: Vec<usize> = comps.iter().map(|c| c.submodule.dim()).collect();
    assert_eq!(dims, vec![8, 32]);
    let id = Matrix::identity(&f, m.dim());
    let mut sum = Matrix::zeros(&f, m.dim(), m.dim());
    for (i, c) in comps.iter().enumerate() {
        let e = &c.projector;
        assert_eq!(e.mul(&f, e), *e);
        assert_eq!(e.rank(&f), c.submodule.dim());
        for a in m.action_matrices() {
            assert_eq!(a.mul(&f, e), e.mul(&f, &a));
        }
        for (j, o) in comps.iter().enumerate() {
            if i != j {
                assert!(e.mul(&f, &o.projector).is_zero(&f));
            }
        }
        sum = sum.add(&f, e);
    }
    assert_eq!(sum, id);

    let v = make_serial(&b, &lam(1), 5).unwrap();
    let comps = primary_decomposition(&v).unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps[0].is_y(&f));
}

#[test]
fn radical_and_socle() {
    let a = cyclic(5, 4, 2, QuotientSpec::None);
    let f = *a.field();
    let v2 = make_serial(&a, &lam(1), 2).unwrap();
    let rad = radical(&v2).unwrap();
    assert_eq!(rad.basis, vec![vec![0, 1]]);
    let soc = socle(&v2).unwrap();
    assert_eq!(soc.basis, vec![vec![0, 1]]);

    let sq = make_block(&a, &lam(1), &poly(&a, "y - 2"), 2).unwrap();
    assert_eq!(radical(&sq).unwrap().dim(), 4);
    let sr = series(&sq).unwrap();
    assert_eq!(sr.radical_length, 2);
    assert!(sr.consistent());
    assert_eq!(sr.radical_layers.len(), 2);
    for layer in &sr.radical_layers {
        assert_eq!(layer.labels, vec![(block(&a, 1, "y - 2", 1), 1)]);
    }

    let v4 = make_serial(&a, &lam(3), 4).unwrap();
    let sr = series(&v4).unwrap();
    assert_eq!(sr.radical_dims, vec![4, 3, 2, 1, 0]);
    assert_eq!(sr.socle_dims, vec![0, 1, 2, 3, 4]);
    // layers V_λ, V_{χλ}, … from the top
    let tops: Vec<ModuleLabel<u64>> = sr.radical_layers.iter().map(|l| l.labels[0].0.clone()).collect();
    let want: Vec<ModuleLabel<u64>> = (0..4).map(|i| serial(3 * pow_mod(2, i, 5) % 5, 1)).collect();
    assert_eq!(tops, want);
    assert_eq!(socle(&v4).unwrap().basis, vec![vec![0, 0, 0, 1]]);
    assert_eq!(v4.x().pow(&f, 3).col(0), vec![0, 0, 0, 1]);
}

#[test]
fn simplicity() {
    let a = cyclic(5, 4, 2, QuotientSpec::None);
    assert!(is_simple(&make_simple_onedim(&a, &lam(2)).unwrap()).unwrap());
    assert!(is_simple(&make_block(&a, &lam(2), &poly(&a, "y^2 + 2"), 1).unwrap()).unwrap());
    let v3 = make_serial(&a, &lam(2), 3).unwrap();
    assert!(!is_simple(&v3).unwrap());
    assert!(is_indecomposable(&v3).unwrap());
    let sum = mod_direct_sum(&v3, &make_simple_onedim(&a, &lam(1)).unwrap()).unwrap();
    assert!(!is_indecomposable(&sum).unwrap());
    // y² + 1 = (y − 2)(y − 3) over F₅
    assert!(!is_simple(&make_block(&a, &lam(2), &poly(&a, "y^2 + 1"), 1).unwrap()).unwrap());
}

#[test]
fn classify_round_trips_and_scrambles() {
    let a = cyclic(5, 4, 2, QuotientSpec::None);
    let v3 = make_serial(&a, &lam(4), 3).unwrap();
    let r = classify(&v3, 0).unwrap();
    assert_eq!(r.summands, vec![(serial(4, 3), 1)]);
    check_witness(&v3, &r);

    let m = mod_direct_sum(&make_serial(&a, &lam(2), 2).unwrap(), &make_simple_onedim(&a, &lam(2)).unwrap()).unwrap();
    let mut want = vec![(serial(2, 1), 1), (serial(2, 2), 1)];
    want.sort();
    for seed in 0..4 {
        let s = mod_scramble(&m, seed);
        let r = classify(&s, seed).unwrap();
        assert_eq!(r.summands, want);
        check_witness(&s, &r);
    }

    // V(λ, f²) ⊕ V(χλ, f) ⊕ V_5(λ): coset-equal Block labels merge
    let f2 = make_block(&a, &lam(2), &poly(&a, "y^2 + 2"), 2).unwrap();
    let f1 = make_block(&a, &lam(4), &poly(&a, "y^2 + 2"), 1).unwrap();
    let v5 = make_serial(&a, &lam(1), 5).unwrap();
    let m = mod_direct_sum(&mod_direct_sum(&f2, &f1).unwrap(), &v5).unwrap();
    let r = classify(&mod_scramble(&m, 3), 11).unwrap();
    let mut want = vec![(block(&a, 2, "y^2 + 2", 2), 1), (block(&a, 4, "y^2 + 2", 1), 1), (serial(1, 5), 1)];
    want.sort();
    assert_eq!(r.summands, want);
    assert_eq!(block(&a, 2, "y^2 + 2", 1), block(&a, 4, "y^2 + 2", 1));
}

#[test]
fn tensor_of_two_lines_matches_prediction() {
    let b = cyclic(17, 16, 2, QuotientSpec::None);
    let f = *b.field();
    let (sigma, l) = (lam(3), lam(5));
    let la8 = pow_mod(5, 8, 17);
    for (alpha, beta) in [(4u64, 6u64), (1, (17 - la8) % 17)] {
        let va = make_block(&b, &sigma, &UniPoly::linear(&f, &alpha), 1).unwrap();
        let vb = make_block(&b, &l, &UniPoly::linear(&f, &beta), 1).unwrap();
        let t = mod_tensor(&va, &vb).unwrap();
        let got = classify(&t, 1).unwrap();
        check_witness(&t, &got);
        let la = ModuleLabel::Block {
            coset: CharacterCoset::new(&f, b.group(), &sigma, b.chi()),
            f: UniPoly::linear(&f, &alpha),
            r: 1,
        };
        let lb = ModuleLabel::Block {
            coset: CharacterCoset::new(&f, b.group(), &l, b.chi()),
            f: UniPoly::linear(&f, &beta),
            r: 1,
        };
        let want = predicted_tensor(&b, &la, &lb).unwrap();
        assert_eq!(got.summands, want.summands);
        assert_eq!(got.total_count(), 8);
        let c = (alpha * la8 + beta) % 17;
        if c == 0 {
            // eight distinct V_8(χᵗσλ)
            assert_eq!(got.summands.len(), 8);
        } else {
            assert_eq!(got.summands, vec![(block(&b, 15, &format!("y - {c}"), 1), 8)]);
        }
    }
}

#[test]
fn closed_form_predictions() {
    let b = cyclic(17, 16, 2, QuotientSpec::None);
    let f = *b.field();
    let p = predicted_tensor(&b, &serial(3, 1), &serial(5, 1)).unwrap();
    assert_eq!(p.summands, vec![(serial(15, 1), 1)]);
    let line = block(&b, 3, "y - 4", 1);
    // V(σ, α) ⊗ V_λ ≅ V(σλ, αλ(a)^s)
    let p = predicted_tensor(&b, &line, &serial(5, 1)).unwrap();
    let c = 4 * pow_mod(5, 8, 17) % 17;
    assert_eq!(p.summands, vec![(block(&b, 15, &format!("y - {c}"), 1), 1)]);
    let p = predicted_tensor(&b, &serial(5, 1), &line).unwrap();
    assert_eq!(p.summands, vec![(block(&b, 15, "y - 4", 1), 1)]);
    for (x, y) in [(line.clone(), serial(5, 1)), (serial(5, 1), line.clone())] {
        let t = mod_tensor(&make_labeled(&b, &x).unwrap(), &make_labeled(&b, &y).unwrap()).unwrap();
        assert_eq!(classify(&t, 0).unwrap().summands, predicted_tensor(&b, &x, &y).unwrap().summands);
    }
    assert!(predicted_tensor(&b, &serial(5, 3), &line).is_none());
    assert!(predicted_tensor(&b, &block(&b, 3, "y - 4", 2), &line).is_none());

    // a = g²: q = 9² = 13 has order 4 while |χ| = 8, so two lines have no formula
    let g = AbelianGroup::cyclic(16).unwrap();
    let h = HopfPresentation::new(f, g.clone(), lam(2), g.element(&[2]).unwrap(), Cocycle::new(vec![0]), QuotientSpec::None).unwrap();
    assert_eq!((h.s(), h.q_order()), (8, Some(4)));
    let line_h = block(&h, 3, "y - 4", 1);
    assert!(predicted_tensor(&h, &line_h, &line_h).is_none());
    assert!(predicted_tensor(&h, &line_h, &serial(5, 1)).is_some());
}

#[test]
fn homomorphisms() {
    let a4 = cyclic(5, 4, 2, QuotientSpec::PowerZero(4));
    let f = *a4.field();
    let vl = make_simple_onedim(&a4, &lam(2)).unwrap();
    assert_eq!(hom_space(&vl, &vl).unwrap().len(), 1);
    let v4 = make_serial(&a4, &lam(2), 4).unwrap();
    for t in 1..4u32 {
        let vt = make_serial(&a4, &lam(2), t).unwrap();
        let mut epi = Matrix::zeros(&f, t as usize, 4);
        for i in 0..t as usize {
            epi.set(i, i, 1);
        }
        assert!(!is_split_epi(&v4, &vt, &epi).unwrap());
    }
    assert!(is_split_epi(&v4, &v4, &Matrix::identity(&f, 4)).unwrap());

    let b = cyclic(17, 16, 2, QuotientSpec::None);
    let p = poly(&b, "y - 5");
    let v = make_block(&b, &lam(3), &p, 1).unwrap();
    let same = make_block(&b, &char_mul(b.field(), b.chi(), &lam(3)), &p, 1).unwrap();
    let other = make_block(&b, &lam(1), &p, 1).unwrap();
    assert_eq!(hom_space(&v, &same).unwrap().len(), 1);
    assert_eq!(hom_space(&v, &other).unwrap().len(), 0);
}

#[test]
fn census_and_covers() {
    let a4 = cyclic(5, 4, 2, QuotientSpec::PowerZero(4));
    let c = simple_census(&a4).unwrap();
    assert_eq!(c.one_dim.len(), 4);
    assert!(c.blocks.is_empty());
    let pr = projectives_report(&a4).unwrap();
    assert!(pr.passed());
    assert_eq!(pr.entries.len(), 4);
    for e in &pr.entries {
        let ModuleLabel::Simple1 { lambda } = &e.simple else { panic!() };
        assert_eq!(e.cover, ModuleLabel::serial(lambda.clone(), 4));
    }

    let b = cyclic(17, 16, 2, QuotientSpec::PowerCentral(8, 1));
    let c = simple_census(&b).unwrap();
    let expected_one: Vec<u64> = (1..17).filter(|&v| pow_mod(v, 8, 17) == 1).collect();
    assert_eq!(expected_one.len(), 8);
    let mut got: Vec<u64> = c
        .one_dim
        .iter()
        .map(|l| match l {
            ModuleLabel::Simple1 { lambda } => lambda.images[0],
            _ => panic!(),
        })
        .collect();
    got.sort_unstable();
    assert_eq!(got, expected_one);
    assert_eq!(c.blocks.len(), 1);
    assert_eq!(c.blocks[0].dim(b.s()), 8);
    let pr = projectives_report(&b).unwrap();
    assert!(pr.passed());
    assert_eq!(pr.entries.len(), 9);
    assert_eq!(pr.entries[8].cover, pr.entries[8].simple);

    let none = cyclic(5, 4, 2, QuotientSpec::None);
    let c = simple_census(&none).unwrap();
    assert_eq!(c.one_dim.len(), 4);
    assert_eq!(c.block_family_cosets.len(), 1);
    assert!(projectives_report(&none).is_err());
}
