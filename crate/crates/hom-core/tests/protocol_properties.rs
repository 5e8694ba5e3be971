use std::f64::consts::FRAC_PI_2;

use hom_core::protocols::{
    classifier_coincidence, classifier_floor, fusion_fidelity, key_rate_bound, mdi_outcome_expansion,
    mdi_outcome_table, BasisState, KeyRateInputs, MdiScenario,
};
use proptest::prelude::*;

fn basis() -> impl Strategy<Value = BasisState> {
    prop::sample::select(BasisState::ALL.to_vec())
}

fn inputs(e_single: f64, e_all: f64) -> KeyRateInputs {
    KeyRateInputs {
        single_photon_probability: 0.8,
        single_photon_yield: 0.3,
        single_photon_error: e_single,
        gain: 0.25,
        error: e_all,
        correction_inefficiency: KeyRateInputs::DEFAULT_INEFFICIENCY,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn table_matches_state_expansion(a in basis(), b in basis(), phi in 0.0f64..=FRAC_PI_2, theta in 0.0f64..=FRAC_PI_2) {
        let s = MdiScenario::new(a, b, phi, theta).unwrap();
        let x = mdi_outcome_table(&s).as_array();
        let y = mdi_outcome_expansion(&s).unwrap().as_array();
        for k in 0..4 {
            prop_assert!((x[k] - y[k]).abs() < 1e-14);
        }
        prop_assert!(x.iter().sum::<f64>() <= 1.0 + 1e-15);
    }

    // H and V photons never interfere, so spectra drop out
    #[test]
    fn rectilinear_rows_ignore_spectral_mismatch(a in prop::sample::select(vec![BasisState::H, BasisState::V]),
                                                 b in prop::sample::select(vec![BasisState::H, BasisState::V]),
                                                 phi in 0.0f64..=FRAC_PI_2, t1 in 0.0f64..=FRAC_PI_2, t2 in 0.0f64..=FRAC_PI_2) {
        let x = mdi_outcome_table(&MdiScenario::new(a, b, phi, t1).unwrap()).as_array();
        let y = mdi_outcome_table(&MdiScenario::new(a, b, phi, t2).unwrap()).as_array();
        for k in 0..4 {
            prop_assert!((x[k] - y[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn key_rate_falls_with_errors(e1 in 0.0f64..0.5, e2 in 0.0f64..0.5, d in 1e-4f64..0.1) {
        let base = key_rate_bound(&inputs(e1, e2)).unwrap();
        prop_assert!(key_rate_bound(&inputs((e1 + d).min(0.5), e2)).unwrap() <= base);
        prop_assert!(key_rate_bound(&inputs(e1, (e2 + d).min(0.5))).unwrap() <= base);
    }

    #[test]
    fn classifier_rises_with_mismatch(a in 0.0f64..FRAC_PI_2, b in 0.0f64..FRAC_PI_2, d in 1e-6f64..0.1) {
        let p = classifier_coincidence(a, b);
        prop_assert!((0.0..=0.5).contains(&p));
        prop_assert!(classifier_coincidence((a + d).min(FRAC_PI_2), b) >= p);
        prop_assert!(classifier_coincidence(a, (b + d).min(FRAC_PI_2)) >= p);
        prop_assert!(p >= classifier_floor(a) - 1e-15);
    }

    #[test]
    fn fusion_is_complement_of_aligned_classifier(theta in 0.0f64..=FRAC_PI_2) {
        prop_assert!((fusion_fidelity(theta) - (1.0 - classifier_coincidence(theta, 0.0))).abs() < 1e-15);
        prop_assert!((0.5..=1.0).contains(&fusion_fidelity(theta)));
    }
}
