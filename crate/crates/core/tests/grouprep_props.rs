use hopfore::exactnum::{Field, PrimeField};
use hopfore::grouprep::{
    char_eval, char_mul, char_pow, enumerate_characters, same_chi_coset, AbelianGroup, CharacterCoset,
};
use proptest::prelude::*;

fn setting() -> (PrimeField, AbelianGroup) {
    (PrimeField::new(13).unwrap(), AbelianGroup::new(vec![4, 6]).unwrap())
}

proptest! {
    #[test]
    fn characters_are_homomorphisms(c in 0usize..24, d in 0usize..24, g in 0usize..24, h in 0usize..24) {
        let (f, grp) = setting();
        let chars = enumerate_characters(&f, &grp);
        prop_assert_eq!(chars.len(), 24);
        let (x, y) = (&chars[c], &chars[d]);
        let (g, h) = (grp.from_index(g), grp.from_index(h));
        let xg = char_eval(&f, &grp, x, &g).unwrap();
        let xh = char_eval(&f, &grp, x, &h).unwrap();
        prop_assert_eq!(char_eval(&f, &grp, x, &grp.mul(&g, &h)).unwrap(), f.mul(&xg, &xh));
        let yg = char_eval(&f, &grp, y, &g).unwrap();
        prop_assert_eq!(char_eval(&f, &grp, &char_mul(&f, x, y), &g).unwrap(), f.mul(&xg, &yg));
        prop_assert!(f.is_one(&char_eval(&f, &grp, x, &grp.identity()).unwrap()));
    }

    #[test]
    fn chi_cosets_are_classes(chi in 0usize..24, l in 0usize..24, m in 0usize..24, t in -30i64..30) {
        let (f, grp) = setting();
        let chars = enumerate_characters(&f, &grp);
        let (chi, l, m) = (&chars[chi], &chars[l], &chars[m]);
        let shifted = char_mul(&f, &char_pow(&f, chi, t), l);
        prop_assert!(same_chi_coset(&f, &shifted, l, chi));
        prop_assert_eq!(
            CharacterCoset::new(&f, &grp, &shifted, chi),
            CharacterCoset::new(&f, &grp, l, chi)
        );
        // equal canonical representatives exactly when in the same coset
        let same = CharacterCoset::new(&f, &grp, l, chi) == CharacterCoset::new(&f, &grp, m, chi);
        prop_assert_eq!(same, same_chi_coset(&f, l, m, chi));
        prop_assert_eq!(same_chi_coset(&f, l, m, chi), same_chi_coset(&f, m, l, chi));
    }
}
