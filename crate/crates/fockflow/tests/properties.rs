//! Structural invariants checked over randomized states and networks.

use fockflow::oracle::random_unitary;
use fockflow::{enumerate_basis, FockBasisState, ModeUnitary64, StateVector64};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: usize = 3;

fn entry_strategy() -> impl Strategy<Value = (Vec<u32>, Complex64)> {
    (
        proptest::collection::vec(0u32..=2, MODES),
        -1.0f64..1.0,
        -1.0f64..1.0,
    )
        .prop_map(|(occ, re, im)| (occ, Complex64::new(re, im)))
}

fn state_strategy() -> impl Strategy<Value = StateVector64> {
    proptest::collection::vec(entry_strategy(), 1..5)
        .prop_map(|entries| StateVector64::from_entries(MODES, entries).unwrap())
}

fn seeded_unitary(seed: u64) -> ModeUnitary64 {
    random_unitary(MODES, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn two_photon_state_strategy() -> impl Strategy<Value = StateVector64> {
    let patterns = enumerate_basis(MODES, 2);
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), patterns.len()).prop_map(
        move |amps| {
            let entries = patterns
                .iter()
                .zip(amps)
                .map(|(p, (re, im))| (p.occupations().to_vec(), Complex64::new(re, im)));
            StateVector64::from_entries(MODES, entries).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn inner_product_is_conjugate_symmetric(a in state_strategy(), b in state_strategy()) {
        let ab = a.inner_product(&b).unwrap();
        let ba = b.inner_product(&a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
    }

    #[test]
    fn projection_probabilities_exhaust_the_norm(state in two_photon_state_strategy()) {
        let total: f64 = enumerate_basis(MODES, 2)
            .iter()
            .map(|p| state.projection_probability(p).unwrap())
            .sum();
        prop_assert!((total - state.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_preserves_the_norm(state in state_strategy()) {
        let rho = state.partial_trace(&[2]).unwrap();
        prop_assert!((rho.trace() - state.norm_sqr()).abs() < 1e-12);
        prop_assert!(rho.hermiticity_deviation() < 1e-13);
    }

    #[test]
    fn basis_states_reduce_to_pure_states(occ in proptest::collection::vec(0u32..=2, MODES)) {
        let state = StateVector64::basis(FockBasisState::new(occ).unwrap());
        let rho = state.partial_trace(&[0]).unwrap();
        prop_assert!((rho.purity() - 1.0).abs() < 1e-13);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn propagation_preserves_the_norm(state in state_strategy(), seed in 0u64..1000) {
        let u = seeded_unitary(seed);
        let out = u.apply(&state).unwrap();
        prop_assert!((out.norm_sqr() - state.norm_sqr()).abs() < 1e-10);
    }

    #[test]
    fn composition_matches_sequential_application(
        state in state_strategy(),
        seed_a in 0u64..1000,
        seed_b in 1000u64..2000,
    ) {
        let a = seeded_unitary(seed_a);
        let b = seeded_unitary(seed_b);
        let composed = a.then(&b).unwrap().apply(&state).unwrap();
        let sequential = b.apply(&a.apply(&state).unwrap()).unwrap();
        let difference = composed
            .try_add(&sequential.scaled(Complex64::new(-1.0, 0.0)))
            .unwrap();
        prop_assert!(difference.norm_sqr().sqrt() < 1e-10);
    }

    #[test]
    fn single_photons_follow_matrix_columns(seed in 0u64..1000, mode in 0usize..MODES) {
        let u = seeded_unitary(seed);
        let mut occ = vec![0u32; MODES];
        occ[mode] = 1;
        let out = u.apply(&StateVector64::basis(FockBasisState::new(occ).unwrap())).unwrap();
        for (row, value) in u.column(mode).into_iter().enumerate() {
            let mut target = vec![0u32; MODES];
            target[row] = 1;
            let amp = out.amplitude(&FockBasisState::new(target).unwrap());
            prop_assert!((amp - value).norm() < 1e-13);
        }
    }
}
