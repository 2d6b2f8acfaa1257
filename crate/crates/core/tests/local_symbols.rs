use proptest::prelude::*;

use metaplectic::arith::{hilbert, rat, reciprocity_product, Place, Rational, Sign};
use metaplectic::cocycle::{cocycle_identity_check, StructuredElement};

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-200i64..=-1, 1i64..=200], 1i64..=200).prop_map(|(n, d)| rat(n, d))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![Just(Place::Real), prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_map(Place::Finite)]
}

fn odd_place() -> impl Strategy<Value = Place> {
    prop_oneof![Just(Place::Real), prop::sample::select(vec![3u64, 5, 7, 11]).prop_map(Place::Finite)]
}

proptest! {
    #[test]
    fn reciprocity(a in nonzero_rational(), b in nonzero_rational()) {
        prop_assert_eq!(reciprocity_product(&a, &b).unwrap(), Sign::Plus);
    }

    #[test]
    fn symmetric_and_bilinear(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), v in place()) {
        prop_assert_eq!(hilbert(&a, &b, v).unwrap(), hilbert(&b, &a, v).unwrap());
        prop_assert_eq!(hilbert(&a, &(&b * &c), v).unwrap(), hilbert(&a, &b, v).unwrap() * hilbert(&a, &c, v).unwrap());
        prop_assert_eq!(hilbert(&a, &(&b * &b), v).unwrap(), Sign::Plus);
    }

    #[test]
    fn torus_cocycle_identity(
        e in prop::collection::vec(nonzero_rational(), 9),
        v in odd_place(),
    ) {
        let t = |i: usize| StructuredElement::torus(e[i..i + 3].to_vec()).unwrap();
        prop_assert!(cocycle_identity_check(&t(0), &t(3), &t(6), v).unwrap());
    }
}
