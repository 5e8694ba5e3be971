use hom_core::fock::{coincidence_from_overlap, dip_curve, Apparatus, BeamSplitter, FockPair};
use hom_core::oracle::{coincidence_from_distribution, expand_fock, ModeDecomposition, MAX_PHOTONS};
use hom_core::polarization::{cos_phi, Detector, Polarization};
use hom_core::spectral::{Shape, SpectralProfile};
use hom_core::Complex64;
use proptest::prelude::*;

fn polarization() -> impl Strategy<Value = Polarization> {
    (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU).prop_map(|(angle, phase)| {
        let (s, c) = angle.sin_cos();
        Polarization::new(Complex64::new(c, 0.0), Complex64::from_polar(s, phase)).unwrap()
    })
}

fn detector() -> impl Strategy<Value = Detector> {
    (0.3f64..1.0, 0.3f64..1.0).prop_map(|(h, v)| Detector::new(h, v).unwrap())
}

fn apparatus() -> impl Strategy<Value = Apparatus> {
    (0.05f64..0.95, detector(), detector()).prop_map(|(t, a, b)| Apparatus {
        splitter: BeamSplitter::new(t).unwrap(),
        detector_a: a,
        detector_b: b,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // formula against full expansion with arbitrary polarizations and a
    // complex spectral overlap
    #[test]
    fn formula_matches_expansion_for_ideal_detectors(
        m in 0u32..5, n in 0u32..5,
        pa in polarization(), pb in polarization(),
        mag in 0.0f64..1.0, arg in 0.0f64..std::f64::consts::TAU,
        t in 0.05f64..0.95,
    ) {
        let bs = BeamSplitter::new(t).unwrap();
        let spectral = Complex64::from_polar(mag, arg);
        let (ma, mb) = ModeDecomposition::from_overlap(spectral).internal_modes(&pa, &pb);
        let dist = expand_fock(m, ma, n, mb, &bs).unwrap();
        let brute = coincidence_from_distribution(&dist, &Detector::IDEAL, &Detector::IDEAL);
        let app = Apparatus { splitter: bs, ..Apparatus::ideal() };
        let c = cos_phi(&pa, &pb) * mag;
        let formula = coincidence_from_overlap(m, n, c, &pa, &pb, &app);
        prop_assert!((formula - brute).abs() < 1e-12, "{} vs {}", formula, brute);
    }

    #[test]
    fn ideal_coincidence_is_a_probability(m in 0u32..7, n in 0u32..7, c in 0.0f64..1.0, t in 0.0f64..1.0) {
        let app = Apparatus { splitter: BeamSplitter::new(t).unwrap(), ..Apparatus::ideal() };
        let h = Polarization::H;
        let p = coincidence_from_overlap(m, n, c, &h, &h, &app);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
    }

    // exchanging the arms together with T and R leaves the detectors alone
    #[test]
    fn arm_exchange_symmetry(
        m in 0u32..6, n in 0u32..6, c in 0.0f64..1.0,
        pa in polarization(), pb in polarization(), app in apparatus(),
    ) {
        let p = coincidence_from_overlap(m, n, c, &pa, &pb, &app);
        let swapped = Apparatus { splitter: app.splitter.swapped(), ..app };
        let q = coincidence_from_overlap(n, m, c, &pb, &pa, &swapped);
        prop_assert!((p - q).abs() < 1e-14);
    }

    #[test]
    fn detector_exchange_symmetry(
        m in 0u32..6, n in 0u32..6, c in 0.0f64..1.0,
        pa in polarization(), pb in polarization(), app in apparatus(),
    ) {
        let p = coincidence_from_overlap(m, n, c, &pa, &pb, &app);
        let swapped = Apparatus {
            splitter: app.splitter.swapped(),
            detector_a: app.detector_b,
            detector_b: app.detector_a,
        };
        let q = coincidence_from_overlap(m, n, c, &pa, &pb, &swapped);
        prop_assert!((p - q).abs() < 1e-14);
    }

    #[test]
    fn dip_is_even_in_delay(tau in 0.0f64..20.0, s in prop::sample::select(Shape::ALL.to_vec())) {
        let spec = SpectralProfile::from_fwhm(s, 1216.0, 0.8).unwrap();
        let pair = FockPair::matched(2, 1, Polarization::H, spec);
        let curve = dip_curve(&pair, &Apparatus::ideal(), &[tau, -tau]).unwrap();
        prop_assert!((curve[0].1 - curve[1].1).abs() < 1e-10);
    }
}

#[test]
fn expansion_refuses_large_inputs() {
    let (a, b) = ModeDecomposition::from_overlap(Complex64::new(1.0, 0.0))
        .internal_modes(&Polarization::H, &Polarization::H);
    assert!(expand_fock(MAX_PHOTONS, a, 1, b, &BeamSplitter::balanced()).is_err());
    assert!(expand_fock(MAX_PHOTONS - 1, a, 1, b, &BeamSplitter::balanced()).is_ok());
}
