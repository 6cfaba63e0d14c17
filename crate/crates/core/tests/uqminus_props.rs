use std::collections::BTreeMap;

use proptest::prelude::*;
use qcanon::coeff::Specialization;
use qcanon::oqpq::Algebra;
use qcanon::uqminus::embed::{embed_norm, matrices_up_to};
use qcanon::uqminus::free::{is_radical_zero, r_map, weight_form, word_weight, Form, FreeElement, Tensor, Word};
use qcanon::uqminus::qrat::QRat;

fn word(n: u8, len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=len)
}

type Triple = BTreeMap<(Word, Word, Word), QRat>;

fn add(acc: &mut Triple, key: (Word, Word, Word), c: QRat) {
    let slot = acc.entry(key).or_insert_with(QRat::zero);
    *slot = &*slot + &c;
}

fn weight(w: &[u8]) -> Vec<u32> {
    word_weight(w, 3)
}

/// `(r ⊗ id)∘r` with the twist absorbed into the first split.
fn left_then(t: &Tensor) -> Triple {
    let mut out = Triple::new();
    for ((x, y), c) in t {
        for ((a, b), d) in r_map(&FreeElement::word(x.clone())) {
            add(&mut out, (a, b, y.clone()), c * &d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn right_then(t: &Tensor) -> Triple {
    let mut out = Triple::new();
    for ((x, y), c) in t {
        for ((a, b), d) in r_map(&FreeElement::word(y.clone())) {
            add(&mut out, (x.clone(), a, b), c * &d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn r_is_coassociative(w in word(3, 4)) {
        let t = r_map(&FreeElement::word(w));
        prop_assert_eq!(left_then(&t), right_then(&t));
    }

    #[test]
    fn form_is_symmetric(u in word(3, 4), v in word(3, 4)) {
        let f = Form::new();
        prop_assert_eq!(f.words(&u, &v), f.words(&v, &u));
        if weight(&u) != weight(&v) {
            prop_assert!(f.words(&u, &v).is_zero());
        }
    }

    #[test]
    fn serre_elements_in_radical(pre in word(3, 2), post in word(3, 1), i in 1u8..=3, j in 1u8..=3) {
        prop_assume!(i != j);
        let g = FreeElement::generator;
        let serre = if (i as i16 - j as i16).abs() == 1 {
            let mut x = g(i).mul(&g(i)).mul(&g(j));
            x.add_scaled(&g(i).mul(&g(j)).mul(&g(i)), &-&(&QRat::q_pow(2) + &QRat::q_pow(-2)));
            x.add_scaled(&g(j).mul(&g(i)).mul(&g(i)), &QRat::one());
            x
        } else {
            g(i).mul(&g(j)).sub(&g(j).mul(&g(i)))
        };
        let conj = FreeElement::word(pre).mul(&serre).mul(&FreeElement::word(post));
        prop_assert!(is_radical_zero(&conj));
    }
}

#[test]
fn cartan_pairing_examples() {
    assert_eq!(weight_form(&[1, 0, 0], &[1, 0, 0]), 2);
    assert_eq!(weight_form(&[1, 0, 0], &[0, 1, 0]), -1);
    assert_eq!(weight_form(&[1, 1, 0], &[0, 1, 1]), 0);
}

#[test]
fn embedded_monomials_distinct() {
    let alg = Algebra::new(2, Specialization::OFFICIAL);
    let mats = matrices_up_to(2, 2);
    let images: Vec<FreeElement> = mats.iter().map(|a| embed_norm(a, &alg).unwrap()).collect();
    for k in 0..images.len() {
        assert!(!is_radical_zero(&images[k]), "{}", mats[k]);
        for l in k + 1..images.len() {
            assert!(!is_radical_zero(&images[k].sub(&images[l])), "{} vs {}", mats[k], mats[l]);
        }
    }
}
