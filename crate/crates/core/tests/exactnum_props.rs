use hopfore::exactnum::{
    minimal_polynomial, poly_factor, q_binomial, ExtensionField, Field, Matrix, PrimeField, UniPoly,
};
use proptest::prelude::*;

fn f7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

/// F_25 as F_5[t]/(t^2 - 2).
fn f25() -> ExtensionField {
    ExtensionField::new(5, vec![3, 0, 1]).unwrap()
}

fn pick<F: Field>(f: &F, i: usize) -> F::Elem {
    let all = f.elements().unwrap();
    all[i % all.len()].clone()
}

fn ring_axioms<F: Field>(f: &F, a: F::Elem, b: F::Elem, c: F::Elem) {
    assert_eq!(f.add(&a, &b), f.add(&b, &a));
    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
    assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
    assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
    assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
    assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
    assert_eq!(f.mul(&a, &f.one()), a);
    if !f.is_zero(&a) {
        assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
    } else {
        assert!(f.inv(&a).is_none());
    }
}

proptest! {
    #[test]
    fn prime_field_axioms(a in 0usize..7, b in 0usize..7, c in 0usize..7) {
        let f = f7();
        ring_axioms(&f, pick(&f, a), pick(&f, b), pick(&f, c));
    }

    #[test]
    fn extension_field_axioms(a in 0usize..25, b in 0usize..25, c in 0usize..25) {
        let f = f25();
        ring_axioms(&f, pick(&f, a), pick(&f, b), pick(&f, c));
    }

    /// `C(n, l) = q^l C(n-1, l) + C(n-1, l-1)`, the Pascal rule mirrored
    /// against the one used for computing.
    #[test]
    fn q_binomial_mirrored_pascal(n in 1u64..12, l in 1u64..12, q in 0usize..7) {
        prop_assume!(l < n);
        let f = f7();
        let q = pick(&f, q);
        let lhs = q_binomial(&f, n, l, &q).unwrap();
        let a = f.mul(&f.pow(&q, l), &q_binomial(&f, n - 1, l, &q).unwrap());
        let b = q_binomial(&f, n - 1, l - 1, &q).unwrap();
        prop_assert_eq!(lhs, f.add(&a, &b));
    }

    #[test]
    fn q_binomial_symmetry(n in 0u64..14, l in 0u64..14, q in 0usize..25) {
        prop_assume!(l <= n);
        let f = f25();
        let q = pick(&f, q);
        prop_assert_eq!(q_binomial(&f, n, l, &q).unwrap(), q_binomial(&f, n, n - l, &q).unwrap());
    }

    #[test]
    fn factors_multiply_back(coeffs in prop::collection::vec(0u64..7, 1..9)) {
        let f = f7();
        let p = UniPoly::from_coeffs(&f, coeffs);
        prop_assume!(!p.is_zero());
        let fl = poly_factor(&f, &p).unwrap();
        prop_assert_eq!(fl.expand(&f), p);
        for (g, _) in &fl.factors {
            prop_assert!(g.is_monic(&f));
            // irreducible: no root and, up to degree 3, that suffices
            if g.degree().unwrap() <= 3 {
                prop_assert!(g.degree() == Some(1) || (0..7).all(|x| g.eval(&f, &x) != 0));
            }
        }
    }

    #[test]
    fn minimal_polynomial_annihilates(entries in prop::collection::vec(0u64..7, 16)) {
        let f = f7();
        let rows: Vec<Vec<u64>> = entries.chunks(4).map(<[u64]>::to_vec).collect();
        let m = Matrix::from_rows(rows).unwrap();
        let mu = minimal_polynomial(&f, &m).unwrap();
        prop_assert!(mu.is_monic(&f));
        prop_assert!(m.eval_poly(&f, &mu).is_zero(&f));
        // no proper divisor annihilates
        for (g, _) in &poly_factor(&f, &mu).unwrap().factors {
            let d = mu.div_exact(&f, g);
            prop_assert!(!m.eval_poly(&f, &d).is_zero(&f));
        }
    }

    #[test]
    fn matrix_product_is_associative(
        a in prop::collection::vec(0u64..7, 6),
        b in prop::collection::vec(0u64..7, 12),
        c in prop::collection::vec(0u64..7, 8),
    ) {
        let f = f7();
        let mk = |v: &[u64], cols: usize| Matrix::from_rows(v.chunks(cols).map(<[u64]>::to_vec).collect()).unwrap();
        let (a, b, c) = (mk(&a, 3), mk(&b, 4), mk(&c, 2));
        prop_assert_eq!(a.mul(&f, &b).mul(&f, &c), a.mul(&f, &b.mul(&f, &c)));
    }
}

#[test]
fn q_binomial_vanishes_at_primitive_roots() {
    let f = f7();
    // 2 has order 3 and 3 has order 6 modulo 7
    for (q, n) in [(2u64, 3u64), (3, 6)] {
        for l in 1..n {
            assert_eq!(q_binomial(&f, n, l, &q).unwrap(), 0, "q = {q}, l = {l}");
        }
    }
    // 1 + q + q^2 + q^3 at q = 2
    assert_eq!(q_binomial(&f, 4, 1, &2).unwrap(), 1);
}
