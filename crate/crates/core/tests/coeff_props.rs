use proptest::prelude::*;
use qcanon::coeff::{GammaLaurent, GammaMonomial, Specialization};

fn monomial() -> impl Strategy<Value = GammaMonomial> {
    (-4i64..=4, -2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2).prop_map(|(v, a, b, c, d)| {
        GammaMonomial::v_pow(v)
            .mul(&GammaMonomial::p(1, 2, a))
            .mul(&GammaMonomial::qp(1, 2, b))
            .mul(&GammaMonomial::p(2, 3, c))
            .mul(&GammaMonomial::qp(1, 3, d))
    })
}

fn laurent() -> impl Strategy<Value = GammaLaurent> {
    prop::collection::vec((-3i64..=3, monomial()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(GammaLaurent::zero(), |acc, (c, m)| acc + GammaLaurent::monomial(m).scale(&c.into()))
    })
}

proptest! {
    #[test]
    fn bar_is_involution(x in laurent()) {
        prop_assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn bar_is_multiplicative(x in laurent(), y in laurent()) {
        prop_assert_eq!((&x * &y).bar(), &x.bar() * &y.bar());
    }

    #[test]
    fn order_is_translation_invariant(a in monomial(), b in monomial(), c in monomial()) {
        prop_assert_eq!(a.group_cmp(&b), a.mul(&c).group_cmp(&b.mul(&c)));
    }

    #[test]
    fn bar_equation_solved(x in laurent()) {
        let g = &x - &x.bar();
        let h = g.solve_bar_equation().unwrap();
        prop_assert_eq!(&h - &h.bar(), g);
        prop_assert!(h.is_supported_on_positive());
    }

    #[test]
    fn specialization_commutes_with_bar(x in laurent()) {
        for s in [Specialization::GENERIC, Specialization::OFFICIAL, Specialization::AST] {
            prop_assert_eq!(x.bar().specialize(&s), x.specialize(&s).bar());
        }
    }

    #[test]
    fn exact_division_inverts_product(x in laurent(), d in laurent()) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&x * &d).divide_exact(&d).unwrap(), x);
    }

    #[test]
    fn json_roundtrip(x in laurent()) {
        prop_assert_eq!(GammaLaurent::from_json(&x.to_json()).unwrap(), x);
    }
}
