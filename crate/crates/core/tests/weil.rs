use metaplectic::arith::{int, rat, Place};
use metaplectic::weil_index::{gamma, gamma_direct, mu, AdditiveCharacter, EighthRoot};
use metaplectic::weil_rep::{multiplier_cocycle_run, parity_invariance_check, FiniteWeilModel, Generator};

#[test]
fn unramified_character_has_trivial_index() {
    for p in [3u64, 5, 7, 11] {
        let psi = AdditiveCharacter::standard(Place::Finite(p)).unwrap();
        assert_eq!(gamma(&psi).unwrap(), EighthRoot::ONE, "p = {p}");
        for a in [int(4), rat(9, 25)] {
            assert_eq!(mu(&a, &psi).unwrap(), EighthRoot::ONE);
        }
    }
}

#[test]
fn real_place_index_is_a_primitive_eighth_root() {
    let psi = AdditiveCharacter::standard(Place::Real).unwrap();
    let g = gamma(&psi).unwrap();
    assert_eq!(g.pow(8), EighthRoot::ONE);
    assert_ne!(g.pow(4), EighthRoot::ONE);
    let (direct, residual) = gamma_direct(&psi).unwrap();
    assert_eq!(direct, g);
    assert!(residual < 1e-6);
    assert_eq!(mu(&int(-1), &psi).unwrap(), g.pow(-2));
}

#[test]
fn dyadic_index_is_unsupported() {
    let err = AdditiveCharacter::standard(Place::Finite(2)).unwrap_err();
    assert!(matches!(err, metaplectic::Error::Unsupported(_)), "{err}");
}

#[test]
fn small_model_is_projective_and_split_by_parity() {
    let model = FiniteWeilModel::new(5, 1).unwrap();
    let run = multiplier_cocycle_run(&model, 40, 7).unwrap();
    assert_eq!(run.tested, 40);
    assert!(run.failures.is_empty(), "{:?}", run.failures);
    assert!(parity_invariance_check(&model, &Generator::W).unwrap());
    assert!(FiniteWeilModel::new(4, 1).is_err());
}
