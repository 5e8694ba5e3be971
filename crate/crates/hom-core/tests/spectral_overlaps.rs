use hom_core::spectral::{fwhm, overlap, overlap_in_frequency, overlap_magnitude, Shape, SpectralProfile};
use proptest::prelude::*;

fn profile(shape: Shape, center: f64, fwhm_value: f64, delay: f64) -> SpectralProfile {
    SpectralProfile::from_fwhm(shape, center, fwhm_value).unwrap().with_delay(delay)
}

#[test]
fn time_and_frequency_routes_agree_for_every_pair() {
    for a in Shape::ALL {
        for b in Shape::ALL {
            for (wb, detune, delay) in [(0.8, 0.0, 0.0), (1.3, 0.2, 1.5), (0.6, -0.4, -2.0)] {
                let pa = profile(a, 1216.0, 0.8, 0.3);
                let pb = profile(b, 1216.0 + detune, wb, 0.3 + delay);
                let fast = overlap(&pa, &pb).unwrap();
                let slow = overlap_in_frequency(&pa, &pb).unwrap();
                // the frequency route truncates sinc tails
                let tol = if a == Shape::Sinc && b == Shape::Sinc { 1e-3 } else { 1e-8 };
                assert!(
                    (fast - slow).norm() < tol,
                    "{a:?} {b:?} {wb} {detune} {delay}: {fast} vs {slow}"
                );
            }
        }
    }
}

#[test]
fn sinc_pairs_match_rectangular_pulses() {
    // a sinc spectrum is a flat pulse of length T in time
    for (ta, tb, delay) in [(2.0, 2.0, 0.0), (2.0, 3.5, 0.0), (2.0, 3.5, 1.2), (4.0, 1.0, -2.0), (1.0, 1.5, 5.0)] {
        let a = SpectralProfile::sinc(1216.0, ta).unwrap();
        let b = SpectralProfile::sinc(1216.0, tb).unwrap().with_delay(delay);
        let lo = (-ta / 2.0f64).max(delay - tb / 2.0);
        let hi = (ta / 2.0f64).min(delay + tb / 2.0);
        let want = (hi - lo).max(0.0) / (ta * tb).sqrt();
        let got = overlap_magnitude(&a, &b).unwrap();
        assert!((got - want).abs() < 1e-9, "{ta} {tb} {delay}: {got} vs {want}");
    }
}

#[test]
fn overlap_is_hermitian() {
    let a = profile(Shape::Sech, 1216.0, 0.7, 0.0);
    let b = profile(Shape::Lorentzian, 1216.3, 1.1, 2.5);
    let ab = overlap(&a, &b).unwrap();
    let ba = overlap(&b, &a).unwrap();
    assert!((ab - ba.conj()).norm() < 1e-10);
}

fn shape() -> impl Strategy<Value = Shape> {
    prop::sample::select(Shape::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn self_overlap_is_one(s in shape(), w in 0.05f64..5.0, delay in -10.0f64..10.0) {
        let p = profile(s, 1216.0, w, delay);
        prop_assert!((overlap_magnitude(&p, &p).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn overlap_bounded(
        a in shape(), b in shape(),
        wa in 0.1f64..3.0, wb in 0.1f64..3.0,
        detune in -2.0f64..2.0, delay in -20.0f64..20.0,
    ) {
        let pa = profile(a, 1216.0, wa, 0.0);
        let pb = profile(b, 1216.0 + detune, wb, delay);
        let c = overlap(&pa, &pb).unwrap().norm();
        prop_assert!(c <= 1.0 + 1e-9);
    }

    #[test]
    fn fwhm_round_trip(s in shape(), w in 0.01f64..50.0) {
        let p = profile(s, 0.0, w, 0.0);
        prop_assert!((fwhm(&p).unwrap() / w - 1.0).abs() < 1e-9);
    }

    #[test]
    fn overlap_ignores_common_delay(s in shape(), w in 0.2f64..2.0, shift in -50.0f64..50.0) {
        let a = profile(s, 1216.0, w, 0.0);
        let b = profile(Shape::Gaussian, 1216.1, 1.0, 1.0);
        let x = overlap_magnitude(&a, &b).unwrap();
        let y = overlap_magnitude(&a.with_delay(shift), &b.with_delay(1.0 + shift)).unwrap();
        prop_assert!((x - y).abs() < 1e-9);
    }
}
