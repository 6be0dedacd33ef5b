mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitkit::word::{
    commensurable, conjugator, cyclic_normal_form, power_of, root, simultaneous_conjugacy, Alphabet, Letter, Word,
};
use splitkit::Error;

fn letter(rank: u32) -> impl Strategy<Value = Letter> {
    (0..rank, any::<bool>()).prop_map(|(generator, inverse)| Letter { generator, inverse })
}

fn word(rank: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(rank), 0..=max).prop_map(Word::from_letters)
}

fn nontrivial(rank: u32, max: usize) -> impl Strategy<Value = Word> {
    word(rank, max).prop_filter("non-trivial", |w| !w.is_identity())
}

/// Reference reduction: repeatedly delete an adjacent cancelling pair.
fn naive_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut v = letters.to_vec();
    while let Some(i) = (1..v.len()).find(|&i| v[i] == v[i - 1].inv()) {
        v.drain(i - 1..=i);
    }
    v
}

proptest! {
    #[test]
    fn reduction_agrees_with_naive(raw in prop::collection::vec(letter(3), 0..30)) {
        let w = Word::from_letters(raw.iter().copied());
        let expected = naive_reduce(&raw);
        prop_assert_eq!(w.letters(), expected.as_slice());
    }

    #[test]
    fn group_laws(a in word(3, 12), b in word(3, 12), c in word(3, 12)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
    }

    #[test]
    fn powers_add(a in word(3, 8), j in -4i64..5, k in -4i64..5) {
        prop_assert_eq!(a.pow(j).mul(&a.pow(k)), a.pow(j + k));
    }

    #[test]
    fn root_is_maximal(w in nontrivial(3, 10), k in 1u32..4) {
        let (r, m) = root(&w.pow(k as i64)).unwrap();
        prop_assert_eq!(r.pow(m as i64), w.pow(k as i64));
        prop_assert_eq!(m % k, 0);
        let (_, again) = root(&r).unwrap();
        prop_assert_eq!(again, 1);
    }

    #[test]
    fn cyclic_form_is_a_class_invariant(w in word(3, 10), g in word(3, 6)) {
        prop_assert_eq!(cyclic_normal_form(&w), cyclic_normal_form(&w.conjugate_by(&g)));
        let c = cyclic_normal_form(&w);
        prop_assert!(c.word().is_cyclically_reduced());
    }

    #[test]
    fn conjugator_conjugates(w in word(3, 10), g in word(3, 6)) {
        let y = w.conjugate_by(&g);
        let h = conjugator(&w, &y).unwrap();
        prop_assert_eq!(w.conjugate_by(&h), y);
    }

    #[test]
    fn power_of_inverts_pow(u in nontrivial(3, 8), k in -5i64..6) {
        let (r, m) = root(&u).unwrap();
        prop_assert_eq!(power_of(&r.pow(k * m as i64), &u), Some(k));
        prop_assert!(commensurable(&u, &r.pow(k.abs() + 1)).unwrap());
    }

    #[test]
    fn render_parse_roundtrip(w in word(4, 15)) {
        let abc = Alphabet::default_for(4);
        prop_assert_eq!(Word::parse(&w.render(&abc), &abc).unwrap(), w);
    }

    #[test]
    fn simultaneous_conjugacy_of_conjugates(xs in prop::collection::vec(word(3, 6), 1..4), g in word(3, 6)) {
        let ys: Vec<Word> = xs.iter().map(|x| x.conjugate_by(&g)).collect();
        let h = simultaneous_conjugacy(&xs, &ys).unwrap().unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            prop_assert_eq!(&x.conjugate_by(&h), y);
        }
    }
}

#[test]
fn edge_cases() {
    let abc = Alphabet::default_for(3);
    let w = |s| Word::parse(s, &abc).unwrap();
    assert!(matches!(root(&Word::identity()), Err(Error::IdentityHasNoRoot)));
    assert!(matches!(commensurable(&Word::identity(), &w("a")), Err(Error::TrivialInput)));
    assert!(matches!(simultaneous_conjugacy(&[w("a")], &[]), Err(Error::LengthMismatch(1, 0))));
    assert!(Word::parse("ad", &abc).is_err());
    assert_eq!(root(&w("cababC")).unwrap(), (w("cabC"), 2));
    assert!(!commensurable(&w("ab"), &w("ba")).unwrap());
    assert_eq!(power_of(&w("aa"), &w("aaa")), None);
}

/// Simultaneous conjugacy against trying every conjugator of length at most 8.
#[test]
fn simultaneous_conjugacy_matches_brute_force() {
    let candidates = common::all_words(2, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut agreed_conjugate = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let xs: Vec<Word> = (0..n).map(|_| common::oracle::random_word(&mut rng, 2, 4)).collect();
        let ys: Vec<Word> = if case % 2 == 0 {
            let g = common::oracle::random_word(&mut rng, 2, 4);
            xs.iter().map(|x| x.conjugate_by(&g)).collect()
        } else {
            (0..n).map(|_| common::oracle::random_word(&mut rng, 2, 4)).collect()
        };
        let brute = candidates.iter().any(|g| xs.iter().zip(&ys).all(|(x, y)| &x.conjugate_by(g) == y));
        let fast = simultaneous_conjugacy(&xs, &ys).unwrap();
        assert_eq!(fast.is_some(), brute, "{xs:?} {ys:?}");
        agreed_conjugate += usize::from(brute);
    }
    assert!(agreed_conjugate >= 50);
    let distinct: BTreeSet<Word> = candidates.into_iter().collect();
    assert_eq!(distinct.len(), 1 + 4 * (3usize.pow(8) - 1) / 2);
}
