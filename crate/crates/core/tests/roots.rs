use osp_core::pbwalg::Pbw;
use osp_core::qscalar::Scalar;
use osp_core::qshuffle::{psi_image, ShuffleVec, Shuffler};
use osp_core::superroot::{is_lyndon, weight_of_word, AlgebraType, Family, RootSystem, Word};
use proptest::prelude::*;

fn algebras(max_m: usize, max_n: usize) -> Vec<AlgebraType> {
    let mut out = Vec::new();
    for f in [Family::B, Family::C, Family::D] {
        for m in 2..=max_m {
            for n in 1..=max_n {
                out.push(AlgebraType::new(f, m, n).unwrap());
            }
        }
    }
    out
}

#[test]
fn radical_words_are_lyndon_with_the_right_weight() {
    for g in algebras(4, 4) {
        let rs = RootSystem::new(g);
        let rad = rs.radical();
        for (k, info) in rad.iter().enumerate() {
            assert!(is_lyndon(&info.word), "{g} {}: {}", rs.pair(k), info.word);
            assert_eq!(weight_of_word(&g, &info.word), info.weight, "{g} {}", rs.pair(k));
            assert_eq!(info.word.len() as u32, info.ht);
            assert_eq!(rs.index_of_word(&info.word), Some(k));
        }
        // PBW order is lexicographic on the words
        assert!(rad.windows(2).all(|w| w[0].word < w[1].word), "{g}");
    }
}

#[test]
fn radical_sizes() {
    // pairs i ≤ j, minus the diagonal on odd letters for c and on even letters for d
    for g in algebras(4, 4) {
        let r = g.m + g.n;
        let want = match g.family {
            Family::B => r * (r + 1) / 2,
            Family::C => r * (r + 1) / 2 - g.n,
            Family::D => r * (r + 1) / 2 - g.m,
        };
        assert_eq!(RootSystem::new(g).radical().len(), want, "{g}");
    }
}

#[test]
fn leading_word_is_the_lyndon_word() {
    for g in algebras(3, 3) {
        let rs = RootSystem::new(g);
        let sh = Shuffler::new(&rs);
        for (k, info) in rs.radical().iter().enumerate() {
            let v = psi_image(&rs, &sh, rs.pair(k)).unwrap();
            assert_eq!(v.max_word().as_ref(), Some(&info.word), "{g} {}", rs.pair(k));
            assert!(!v.coeff(&info.word).is_zero());
        }
    }
}

#[test]
fn recursion_matches_closed_form() {
    for g in algebras(3, 3) {
        let p = Pbw::new(g);
        for k in (0..p.rs.n_rad).filter(|&k| p.rs.info(k).ht <= 8) {
            let closed = psi_image(&p.rs, &p.sh, p.rs.pair(k)).unwrap();
            assert_eq!(p.psi_root(k), &closed, "{g} {}", p.rs.pair(k));
        }
    }
}

fn word(rank: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..rank as u8, 0..4).prop_map(|ls| Word::from_letters(&ls))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_associative(u in word(4), v in word(4), w in word(4), fam in 0usize..3) {
        let f = [Family::B, Family::C, Family::D][fam];
        let rs = RootSystem::new(AlgebraType::new(f, 2, 2).unwrap());
        let sh = Shuffler::new(&rs);
        let (a, b, c) = (ShuffleVec::word(u), ShuffleVec::word(v), ShuffleVec::word(w));
        prop_assert_eq!(sh.shuffle(&sh.shuffle(&a, &b), &c), sh.shuffle(&a, &sh.shuffle(&b, &c)));
    }

    #[test]
    fn shuffle_unit_and_linearity(u in word(3), v in word(3), w in word(3), k in -3i64..4) {
        let rs = RootSystem::new(AlgebraType::new(Family::B, 2, 1).unwrap());
        let sh = Shuffler::new(&rs);
        let (a, b, c) = (ShuffleVec::word(u), ShuffleVec::word(v), ShuffleVec::word(w));
        let one = ShuffleVec::word(Word::empty());
        prop_assert_eq!(sh.shuffle(&one, &a), a.clone());
        prop_assert_eq!(sh.shuffle(&a, &one), a.clone());
        let s = Scalar::from_i64(k).mul(&Scalar::q());
        let lhs = sh.shuffle(&a, &b.scale(&s).add(&c));
        let rhs = sh.shuffle(&a, &b).scale(&s).add(&sh.shuffle(&a, &c));
        prop_assert_eq!(lhs, rhs);
    }
}
