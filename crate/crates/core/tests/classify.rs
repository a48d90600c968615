mod common;

use common::*;
use mpcorr_core::classify::{
    classify_two_qubit, correlation_spectrum, ph_condition_explicit, ph_invariants, ph_test,
    ph_test_signflip, werner_strength, Category,
};
use mpcorr_core::qstate::{self, apply_local_unitaries};
use mpcorr_core::sampling::{random_bloch_vector, random_density, random_mixed, random_pure, random_unitary};
use mpcorr_core::states::{self, BellState, CcTerm};
use mpcorr_core::{decompose, DensityMatrix, Error};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn nsv(rho: &DensityMatrix) -> usize {
    let c = decompose(rho).unwrap().correlation_matrix(0, 1).unwrap();
    correlation_spectrum(&c).nsv_count
}

fn random_cc<R: Rng>(k: usize, rng: &mut R) -> DensityMatrix {
    let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    let terms: Vec<CcTerm> = w
        .iter()
        .map(|&x| CcTerm {
            weight: x / total,
            n_a: random_bloch_vector(rng),
            n_b: random_bloch_vector(rng),
        })
        .collect();
    states::cc_mixture(&terms).unwrap()
}

#[test]
fn nsv_grows_with_terms() {
    let mut r = rng(51);
    for k in 2..=8 {
        let want = (k - 1).min(3);
        let hits = (0..1000)
            .map(|_| nsv(&random_cc(k, &mut r)))
            .inspect(|&n| assert!(n <= want, "k {k}: {n}"))
            .filter(|&n| n == want)
            .count();
        assert!(hits >= 990, "k {k}: {hits}");
    }
}

#[test]
fn qutrit_nsv_bounded_by_terms() {
    let mut r = rng(52);
    for k in 2..=10 {
        let parts: Vec<DensityMatrix> = (0..k)
            .map(|_| {
                let a = random_density(&[3], &mut r).unwrap();
                let b = random_density(&[3], &mut r).unwrap();
                qstate::tensor(&a, &b).unwrap()
            })
            .collect();
        let w = vec![1.0 / k as f64; k];
        let n = nsv(&qstate::mix(&w, &parts).unwrap());
        assert!(n <= (k - 1).min(8), "k {k}: {n}");
        assert_eq!(n, (k - 1).min(8));
    }
}

#[test]
fn cc_states_are_never_entangled() {
    let mut r = rng(53);
    for k in 1..=6 {
        for _ in 0..100 {
            let rho = random_cc(k, &mut r);
            let v = ph_test(&rho).unwrap();
            assert!(!v.entangled && v.min_pt_eigenvalue >= -1e-10);
            let report = classify_two_qubit(&rho).unwrap();
            assert!(matches!(
                report.category,
                Category::ClassicallyCorrelated | Category::Uncorrelated | Category::PureProduct
            ));
        }
    }
    for b in BellState::ALL {
        assert!(ph_test(&states::bell(b)).unwrap().entangled);
    }
}

#[test]
fn decision_table() {
    let cases: Vec<(DensityMatrix, Category, usize)> = vec![
        (states::bell(BellState::PsiMinus), Category::PureEntangled, 3),
        (states::rashid(0.7).unwrap(), Category::PureEntangled, 3),
        (DensityMatrix::basis_state(1, &[2, 2]).unwrap(), Category::PureProduct, 0),
        (DensityMatrix::maximally_mixed(&[2, 2]).unwrap(), Category::Uncorrelated, 0),
        (states::generalized_werner(0.9, 0.0).unwrap(), Category::MixedEntangled, 3),
        (states::generalized_werner(0.2, 0.0).unwrap(), Category::ClassicallyCorrelated, 3),
        (states::cc_example(0.4).unwrap(), Category::ClassicallyCorrelated, 1),
    ];
    for (rho, cat, n) in cases {
        let report = classify_two_qubit(&rho).unwrap();
        assert_eq!(report.category, cat);
        assert_eq!(report.nsv_count, n);
    }
    let a = states::qubit_state([0.3, 0.0, 0.2]).unwrap();
    let b = states::qubit_state([0.0, -0.5, 0.0]).unwrap();
    let report = classify_two_qubit(&qstate::tensor(&a, &b).unwrap()).unwrap();
    assert_eq!(report.category, Category::Uncorrelated);
    assert!(report.invariants.is_none());
}

#[test]
fn classify_rejects_other_shapes() {
    let rho = DensityMatrix::maximally_mixed(&[2, 3]).unwrap();
    assert!(matches!(classify_two_qubit(&rho), Err(Error::UnsupportedShape(_))));
    assert!(ph_test_signflip(&rho).is_err());
    // the transpose test itself covers any bipartite shape
    assert!(!ph_test(&rho).unwrap().entangled);
}

#[test]
fn qubit_qutrit_ppt_is_conclusive() {
    let mut r = rng(54);
    let rho = random_pure(&[2, 3], &mut r).unwrap();
    let v = ph_test(&rho).unwrap();
    assert!(v.entangled && v.conclusive);
    let v = ph_test(&DensityMatrix::maximally_mixed(&[3, 3]).unwrap()).unwrap();
    assert_eq!(v.label(), "PPT (inconclusive)");
}

#[test]
fn werner_invariants() {
    for (p, theta) in [(0.5, 0.3), (0.9, 0.2), (0.2, -1.1)] {
        let inv = ph_invariants(&decompose(&states::generalized_werner(p, theta).unwrap()).unwrap()).unwrap();
        let s = sech(2.0 * theta);
        let t = (2.0 * theta).tanh();
        assert!((inv.xi + 2.0 * p * s).abs() < 1e-12);
        assert!((inv.na_dot_nb + p * p * t * t).abs() < 1e-12);
        assert!((werner_strength(&inv).unwrap() - p * (1.0 + 2.0 * s)).abs() < 1e-10);
        assert_eq!(ph_condition_explicit(&inv).unwrap(), p * (1.0 + 2.0 * s) >= 1.0);
    }
    let w = decompose(&states::generalized_werner(0.5, 0.0).unwrap()).unwrap();
    assert!(matches!(ph_invariants(&w), Err(Error::DegenerateBlochVectors(_))));
}

#[test]
fn spectrum_threshold_scales() {
    let tiny = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1e-6, 1e-6, 5e-16]));
    let s = correlation_spectrum(&tiny);
    assert_eq!(s.nsv_count, 2);
    assert!((s.threshold_used - 1e-12).abs() < 1e-24);
    let zero = DMatrix::zeros(3, 3);
    assert_eq!(correlation_spectrum(&zero).nsv_count, 0);
    let rect = DMatrix::from_element(3, 8, 1.0);
    let s = correlation_spectrum(&rect);
    assert_eq!(s.nsv_count, 1);
    assert!(s.eigenvalues.is_none());
}

#[test]
fn ph_paths_agree() {
    let mut r = rng(55);
    for i in 0..1000 {
        let rho = random_mixed(&[2, 2], 1 + i % 4, &mut r).unwrap();
        assert_eq!(ph_test(&rho).unwrap().entangled, ph_test_signflip(&rho).unwrap().entangled);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_survive_common_rotation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random_density(&[2, 2], &mut r).unwrap();
        let u = random_unitary(2, &mut r);
        let rot = apply_local_unitaries(&rho, &[u.clone(), u]).unwrap();
        let a = ph_invariants(&decompose(&rho).unwrap()).unwrap();
        prop_assume!(a.na_dot_nb.abs() > 1e-4);
        let b = ph_invariants(&decompose(&rot).unwrap()).unwrap();
        prop_assert!((a.xi - b.xi).abs() < 1e-10 * (1.0 + a.xi.abs()));
        prop_assert!((a.na_dot_nb - b.na_dot_nb).abs() < 1e-10);
    }
}
