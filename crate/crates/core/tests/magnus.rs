//! Algebraic identities of the Magnus expansion.

mod common;

use mubar::{coefficient, lcs_residue_degree, magnus_expand, Monomial, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const Q: usize = 5;

fn word_strategy(rank: u16, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..=max_len).prop_map(move |v| {
        let letters = v.into_iter().map(|(g, i)| mubar::Letter::new(g, i)).collect();
        Word::from_letters(rank, letters).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn expansion_is_a_homomorphism(u in word_strategy(3, 12), v in word_strategy(3, 12)) {
        let lhs = magnus_expand(&u.mul(&v).unwrap(), Q);
        let rhs = magnus_expand(&u, Q).multiply(&magnus_expand(&v, Q)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_expands_to_inverse(u in word_strategy(3, 12)) {
        let m = magnus_expand(&u, Q);
        prop_assert_eq!(m.inverse().unwrap(), magnus_expand(&u.inverse(), Q));
        prop_assert!(m.multiply(&magnus_expand(&u.inverse(), Q)).unwrap().is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn prefix_dp_matches_full_series(
        u in word_strategy(4, 16),
        mono in prop::collection::vec(1u16..=4, 0..Q),
    ) {
        let mono = Monomial::new(&mono);
        prop_assert_eq!(coefficient(&u, &mono), magnus_expand(&u, Q).coefficient(&mono));
    }
}

fn x(rank: u16, g: u16) -> Word {
    Word::generator(rank, g).unwrap()
}

#[test]
fn derived_series_sits_in_lower_central_terms() {
    // G^(n) lies in G_(2^n); these nested commutators reach exactly 2^n
    let c1 = x(4, 1).commutator(&x(4, 2)).unwrap();
    let d1 = x(4, 3).commutator(&x(4, 4)).unwrap();
    let c2 = c1.commutator(&d1).unwrap();
    let e1 = x(4, 1).commutator(&x(4, 3)).unwrap();
    let f1 = x(4, 2).commutator(&x(4, 4)).unwrap();
    let d2 = e1.commutator(&f1).unwrap();
    let c3 = c2.commutator(&d2).unwrap();
    assert_eq!(lcs_residue_degree(&c1, 10), Some(2));
    assert_eq!(lcs_residue_degree(&c2, 10), Some(4));
    assert_eq!(lcs_residue_degree(&c3, 10), Some(8));
}

#[test]
fn random_commutators_of_level_n() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let mut level: Vec<Word> = (0..8).map(|_| common::random_word(&mut rng, 3, 4)).collect();
        for n in 1..=3u32 {
            level = level.chunks(2).map(|p| p[0].commutator(&p[1]).unwrap()).collect();
            for w in &level {
                let d = lcs_residue_degree(w, 9);
                assert!(d.is_none_or(|d| d >= 1 << n), "level {n} word at degree {d:?}");
            }
        }
    }
}
