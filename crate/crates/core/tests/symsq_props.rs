use proptest::prelude::*;

use metaplectic::arith::{rat, Rational, Sign};
use metaplectic::symsq::{
    bg_identity_check, rs_factorization_check, schur_jt, schur_tableau_oracle, unramified_zeta_check,
    unramified_zeta_series, CharValue, ChiSqrt, Partition, SatakeData,
};

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn partition(max_parts: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..=4, max_parts).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_determinant_matches_tableaux(
        (values, lambda) in (1usize..=3).prop_flat_map(|r| (prop::collection::vec(nonzero_rational(), r), partition(r)))
    ) {
        prop_assume!(lambda.size() <= 10);
        prop_assert_eq!(schur_jt(&lambda, &values).unwrap(), schur_tableau_oracle(&lambda, &values).unwrap());
    }

    #[test]
    fn local_identities(alphas in prop::collection::vec(nonzero_rational(), 2..=4), chi in nonzero_rational()) {
        let sat = SatakeData::new(alphas, 5, CharValue::Unramified(chi.clone())).unwrap();
        prop_assert!(bg_identity_check(&sat, 6).unwrap());
        prop_assert!(rs_factorization_check(&sat).unwrap());
        let root = ChiSqrt::new(chi, Sign::Minus);
        prop_assert!(unramified_zeta_check(&sat, &root, 6).unwrap());
        prop_assert_eq!(
            unramified_zeta_series(&sat, &root, 6).unwrap(),
            unramified_zeta_series(&sat, &root.flipped(), 6).unwrap()
        );
    }
}

#[test]
fn ramified_twist_is_rejected() {
    let sat = SatakeData::new(vec![rat(1, 1), rat(2, 1)], 5, CharValue::Ramified).unwrap();
    assert!(unramified_zeta_check(&sat, &ChiSqrt::new(rat(1, 1), Sign::Plus), 4).is_err());
    // the identity without a twist still holds
    assert!(bg_identity_check(&sat, 4).unwrap());
}
