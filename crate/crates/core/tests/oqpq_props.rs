use std::collections::BTreeMap;

use proptest::prelude::*;
use qcanon::coeff::{GammaLaurent, Specialization};
use qcanon::matgrid::MatIdx;
use qcanon::oqpq::{Algebra, Basis, Element, Gen};

/// Naive rewriting of one word, always resolving the first or the last inversion.
fn rewrite(alg: &Algebra, w: Vec<Gen>, pick_last: bool) -> BTreeMap<Vec<Gen>, GammaLaurent> {
    let mut todo = BTreeMap::from([(w, GammaLaurent::one())]);
    let mut done: BTreeMap<Vec<Gen>, GammaLaurent> = BTreeMap::new();
    while let Some((w, c)) = todo.pop_first() {
        let inv: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&k| w[k] > w[k + 1]).collect();
        let Some(&k) = (if pick_last { inv.last() } else { inv.first() }) else {
            *done.entry(w).or_default() += &c;
            continue;
        };
        for (rc, x, y) in alg.relation(w[k], w[k + 1]) {
            let mut nw = w.clone();
            nw[k] = *x;
            nw[k + 1] = *y;
            *todo.entry(nw).or_default() += &(&c * rc);
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn sorted_to_matrix(n: usize, w: &[Gen]) -> MatIdx {
    let mut a = MatIdx::zero(n);
    for &(i, j) in w {
        a.set(i, j, a.get(i, j) + 1);
    }
    a
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec((1..=n, 1..=n), 0..=max_len)
}

fn element(n: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((prop::collection::vec(0u32..=1, n * n), -2i64..=2), 1..3).prop_map(move |terms| {
        let mut x = Element::zero(n, Basis::Norm);
        for (e, k) in terms {
            x.add_term(MatIdx::from_entries(n, e).unwrap(), &GammaLaurent::q_pow(k));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_confluent(w in word(2, 5)) {
        let alg = Algebra::new(2, Specialization::GENERIC);
        let first = rewrite(&alg, w.clone(), false);
        let last = rewrite(&alg, w.clone(), true);
        prop_assert_eq!(&first, &last);
        let nf = alg.normal_form(&[(GammaLaurent::one(), w)]).unwrap();
        let want: BTreeMap<MatIdx, GammaLaurent> = first.iter().map(|(w, c)| (sorted_to_matrix(2, w), c.clone())).collect();
        prop_assert_eq!(nf.terms(), &want);
    }

    #[test]
    fn normal_form_is_confluent_n3(w in word(3, 4)) {
        let alg = Algebra::new(3, Specialization::GENERIC);
        prop_assert_eq!(rewrite(&alg, w.clone(), false), rewrite(&alg, w, true));
    }

    #[test]
    fn bar_is_involutive_anti_automorphism(x in element(2), y in element(2)) {
        let alg = Algebra::new(2, Specialization::GENERIC);
        prop_assert_eq!(alg.bar(&alg.bar(&x).unwrap()).unwrap(), x.clone());
        let lhs = alg.bar(&alg.multiply(&x, &y).unwrap()).unwrap();
        let rhs = alg.multiply(&alg.bar(&y).unwrap(), &alg.bar(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(x in element(2), y in element(2), z in element(2)) {
        let alg = Algebra::new(2, Specialization::OFFICIAL);
        let left = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
