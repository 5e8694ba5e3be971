//! Figures of merit for protocols built on two-photon interference:
//! polarization MDI key distribution, NOON-state phase sensing, an optical
//! classifier kernel and type-II fusion.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check, check_unit};
use crate::fock::BeamSplitter;
use crate::oracle::{expand, Creation, InputState, ModeDecomposition, OutputDistribution, Port};
use crate::polarization::Polarization;
use crate::special::binary_entropy;
use crate::spectral::gaussian_amplitude_overlap;
use crate::{Error, Result};

/// Polarization state sent by one party.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisState {
    H,
    V,
    D,
    A,
}

impl BasisState {
    pub const ALL: [BasisState; 4] = [BasisState::H, BasisState::V, BasisState::D, BasisState::A];

    pub fn polarization(self) -> Polarization {
        match self {
            BasisState::H => Polarization::H,
            BasisState::V => Polarization::V,
            BasisState::D => Polarization::D,
            BasisState::A => Polarization::A,
        }
    }

    pub fn label(self) -> char {
        match self {
            BasisState::H => 'H',
            BasisState::V => 'V',
            BasisState::D => 'D',
            BasisState::A => 'A',
        }
    }
}

/// Two photons meeting at the relay. Bob's polarization is rotated by `phi`
/// and the spectral overlap magnitude is `cos(theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MdiScenario {
    pub alice: BasisState,
    pub bob: BasisState,
    pub phi: f64,
    pub theta: f64,
}

impl MdiScenario {
    pub fn new(alice: BasisState, bob: BasisState, phi: f64, theta: f64) -> Result<Self> {
        let quarter = core::f64::consts::FRAC_PI_2;
        check("phi", phi, (0.0..=quarter).contains(&phi))?;
        check("theta", theta, (0.0..=quarter).contains(&theta))?;
        Ok(MdiScenario { alice, bob, phi, theta })
    }

    fn polarizations(&self) -> (Polarization, Polarization) {
        (self.alice.polarization(), self.bob.polarization().rotate(self.phi))
    }
}

/// Probabilities of the four two-detector patterns after the relay's
/// splitter and polarizing splitters. Output port `a` carries detectors 3
/// (H) and 4 (V), port `b` carries detectors 1 (H) and 2 (V).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MdiOutcomes {
    /// `b_H b_V`
    pub m12: f64,
    /// `a_H a_V`
    pub m34: f64,
    /// `a_H b_V`
    pub m23: f64,
    /// `b_H a_V`
    pub m14: f64,
}

impl MdiOutcomes {
    pub fn as_array(&self) -> [f64; 4] {
        [self.m12, self.m34, self.m23, self.m14]
    }

    /// Read the four patterns off a full output distribution.
    pub fn from_distribution(dist: &OutputDistribution) -> Self {
        MdiOutcomes {
            m12: dist.pattern((0, 0), (1, 1)),
            m34: dist.pattern((1, 1), (0, 0)),
            m23: dist.pattern((1, 0), (0, 1)),
            m14: dist.pattern((0, 1), (1, 0)),
        }
    }
}

/// Outcome probabilities on a balanced splitter.
pub fn mdi_outcome_table(s: &MdiScenario) -> MdiOutcomes {
    let (a, b) = s.polarizations();
    let direct = (a.h * b.v).norm_sqr() + (a.v * b.h).norm_sqr();
    let c = s.theta.cos();
    let cross = 2.0 * ((a.h * b.v).conj() * a.v * b.h).re * c * c;
    MdiOutcomes {
        m12: 0.25 * (direct + cross),
        m34: 0.25 * (direct + cross),
        m23: 0.25 * (direct - cross),
        m14: 0.25 * (direct - cross),
    }
}

/// The same table by expanding the two-photon state through the splitter.
pub fn mdi_outcome_expansion(s: &MdiScenario) -> Result<MdiOutcomes> {
    let (a, b) = s.polarizations();
    let dec = ModeDecomposition::from_overlap(Complex64::new(s.theta.cos(), 0.0));
    let (ma, mb) = dec.internal_modes(&a, &b);
    let state = InputState {
        terms: alloc::vec![(
            Complex64::new(1.0, 0.0),
            alloc::vec![
                Creation { port: Port::A, mode: ma },
                Creation { port: Port::B, mode: mb },
            ],
        )],
    };
    Ok(MdiOutcomes::from_distribution(&expand(&state, &BeamSplitter::balanced())?))
}

/// Probability of each conclusive outcome carried by the singlet part of an
/// anti-correlated diagonal input.
pub fn conclusive_probability(phi: f64, theta: f64) -> f64 {
    let (cp, ct) = (phi.cos(), theta.cos());
    0.125 * cp * cp * (1.0 + ct * ct)
}

/// Error from spectral mismatch alone.
pub fn spectral_error(theta: f64) -> f64 {
    let s = theta.sin();
    0.5 * s * s
}

/// Error contributions in the diagonal basis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorBudget {
    pub background: f64,
    pub asymmetry: f64,
    pub polarization: f64,
    pub temporal: f64,
    pub spectral: f64,
}

/// Summed error; `useless` marks totals above one half.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorTotal {
    pub value: f64,
    pub useless: bool,
}

impl ErrorBudget {
    pub fn validate(&self) -> Result<()> {
        check_unit("background error", self.background)?;
        check_unit("asymmetry error", self.asymmetry)?;
        check_unit("polarization error", self.polarization)?;
        check_unit("temporal error", self.temporal)?;
        check_unit("spectral error", self.spectral)?;
        Ok(())
    }

    pub fn total(&self) -> ErrorTotal {
        let value = self.background + self.asymmetry + self.polarization + self.temporal + self.spectral;
        ErrorTotal {
            value,
            useless: value > 0.5,
        }
    }
}

/// Inputs to the asymptotic key-rate bound. The error-correction
/// inefficiency is a constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeyRateInputs {
    /// Probability both parties send single photons in the key basis.
    pub single_photon_probability: f64,
    /// Yield of single-photon pairs.
    pub single_photon_yield: f64,
    /// Phase error of single-photon pairs.
    pub single_photon_error: f64,
    /// Overall gain in the key basis.
    pub gain: f64,
    /// Overall error in the key basis.
    pub error: f64,
    pub correction_inefficiency: f64,
}

impl KeyRateInputs {
    pub const DEFAULT_INEFFICIENCY: f64 = 1.16;

    pub fn validate(&self) -> Result<()> {
        check_unit("single-photon probability", self.single_photon_probability)?;
        check_unit("single-photon yield", self.single_photon_yield)?;
        check_unit("single-photon error", self.single_photon_error)?;
        check_unit("gain", self.gain)?;
        check_unit("error", self.error)?;
        let f = self.correction_inefficiency;
        check("correction inefficiency", f, f >= 1.0)?;
        Ok(())
    }
}

/// Lower bound on the secret key rate per pulse; may be negative.
pub fn key_rate_bound(k: &KeyRateInputs) -> Result<f64> {
    k.validate()?;
    Ok(k.single_photon_probability * k.single_photon_yield * (1.0 - binary_entropy(k.single_photon_error))
        - k.gain * k.correction_inefficiency * binary_entropy(k.error))
}

/// Mean intensity difference for an `n`-photon NOON probe with spectral
/// overlap `cos(theta)` and phase `phase`.
pub fn noon_signal(n: u32, theta: f64, phase: f64) -> Result<f64> {
    check("photon number", n as f64, n >= 1)?;
    Ok(-(n as f64) * theta.cos() * phase.sin())
}

/// Phase uncertainty scale `1 / (n cos(theta))`.
pub fn noon_sensitivity(n: u32, theta: f64) -> Result<f64> {
    check("photon number", n as f64, n >= 1)?;
    let c = theta.cos();
    if c.abs() < 1e-12 {
        return Err(Error::Singular {
            what: "phase sensitivity at orthogonal spectra",
        });
    }
    Ok(1.0 / (n as f64 * c))
}

/// Coincidence probability of the classifier for spectral mismatch `theta`
/// and transverse mismatch `transverse`.
pub fn classifier_coincidence(theta: f64, transverse: f64) -> f64 {
    let (a, b) = (theta.cos(), transverse.cos());
    0.5 * (1.0 - a * a * b * b)
}

/// Lowest coincidence reachable by aligning the transverse profiles.
pub fn classifier_floor(theta: f64) -> f64 {
    let s = theta.sin();
    0.5 * s * s
}

/// Separable 2-D Gaussian transverse profile: amplitude widths and centre
/// per axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransverseProfile {
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub x0: f64,
    pub y0: f64,
}

/// Mismatch angle between two transverse profiles.
pub fn transverse_angle(a: &TransverseProfile, b: &TransverseProfile) -> Result<f64> {
    for w in [a.sigma_x, a.sigma_y, b.sigma_x, b.sigma_y] {
        check("transverse width", w, w > 0.0)?;
    }
    let ox = gaussian_amplitude_overlap(a.sigma_x, b.sigma_x, a.x0 - b.x0);
    let oy = gaussian_amplitude_overlap(a.sigma_y, b.sigma_y, a.y0 - b.y0);
    Ok((ox * oy).min(1.0).acos())
}

/// Logistic activation.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Binary cross-entropy of prediction `p` against label `y`, in nats.
/// Predictions are clipped to `[1e-15, 1 - 1e-15]`.
pub fn binary_cross_entropy(y: f64, p: f64) -> f64 {
    let p = p.clamp(1e-15, 1.0 - 1e-15);
    -(y * p.ln() + (1.0 - y) * (1.0 - p).ln())
}

/// Fidelity of the state left after fusing two photons with spectral
/// mismatch `theta`.
pub fn fusion_fidelity(theta: f64) -> f64 {
    let c = theta.cos();
    0.5 * (1.0 + c * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn table(a: BasisState, b: BasisState, phi: f64, theta: f64) -> [f64; 4] {
        mdi_outcome_table(&MdiScenario::new(a, b, phi, theta).unwrap()).as_array()
    }

    #[test]
    fn aligned_table_rows() {
        use BasisState::*;
        let q = 0.25;
        let rows = [
            (H, H, [0.0; 4]),
            (H, V, [q; 4]),
            (V, H, [q; 4]),
            (V, V, [0.0; 4]),
            (D, D, [q, q, 0.0, 0.0]),
            (D, A, [0.0, 0.0, q, q]),
            (A, D, [0.0, 0.0, q, q]),
            (A, A, [q, q, 0.0, 0.0]),
        ];
        for (a, b, want) in rows {
            let got = table(a, b, 0.0, 0.0);
            for k in 0..4 {
                assert!((got[k] - want[k]).abs() < 1e-15, "{a:?}{b:?} col {k}");
            }
        }
    }

    #[test]
    fn expansion_agrees() {
        for a in BasisState::ALL {
            for b in BasisState::ALL {
                let s = MdiScenario::new(a, b, 0.4, 0.9).unwrap();
                let x = mdi_outcome_table(&s).as_array();
                let y = mdi_outcome_expansion(&s).unwrap().as_array();
                for k in 0..4 {
                    assert!((x[k] - y[k]).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn orthogonal_spectra_diagonal_row() {
        let got = table(BasisState::D, BasisState::A, 0.0, FRAC_PI_2);
        assert!((got[2] - 0.125).abs() < 1e-15);
        assert!((conclusive_probability(0.0, FRAC_PI_2) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn rectilinear_rows_ignore_spectra() {
        for theta in [0.0, 0.5, 1.2] {
            let got = table(BasisState::H, BasisState::V, 0.0, theta);
            assert!(got.iter().all(|p| (p - 0.25).abs() < 1e-15));
        }
    }

    #[test]
    fn error_terms() {
        assert_eq!(spectral_error(0.0), 0.0);
        assert!((spectral_error(FRAC_PI_2) - 0.5).abs() < 1e-15);
        assert!((spectral_error(FRAC_PI_4) - 0.25).abs() < 1e-15);
        let b = ErrorBudget {
            background: 0.01,
            polarization: 0.02,
            spectral: 0.04,
            ..Default::default()
        };
        let t = b.total();
        assert!((t.value - 0.07).abs() < 1e-15);
        assert!(!t.useless);
        let all = ErrorBudget {
            spectral: spectral_error(FRAC_PI_2),
            temporal: 0.01,
            ..Default::default()
        };
        assert!(all.total().useless);
    }

    #[test]
    fn key_rate_values() {
        let mut k = KeyRateInputs {
            single_photon_probability: 1.0,
            single_photon_yield: 0.1,
            single_photon_error: 0.02,
            gain: 0.1,
            error: 0.02,
            correction_inefficiency: KeyRateInputs::DEFAULT_INEFFICIENCY,
        };
        let h = binary_entropy(0.02);
        assert!((h - 0.141_440_542_541_820_67).abs() < 1e-15);
        let r = key_rate_bound(&k).unwrap();
        assert!((r - (0.1 * (1.0 - h) - 0.116 * h)).abs() < 1e-15);
        assert!((r - 0.069_448_842_810_966_73).abs() < 1e-15);
        k.single_photon_error = 0.0;
        k.error = 0.0;
        assert!((key_rate_bound(&k).unwrap() - 0.1).abs() < 1e-15);
        k.correction_inefficiency = 0.9;
        assert!(key_rate_bound(&k).is_err());
    }

    #[test]
    fn noon_values() {
        assert!((noon_signal(3, 0.0, FRAC_PI_2).unwrap() + 3.0).abs() < 1e-15);
        assert!((noon_signal(2, FRAC_PI_3, FRAC_PI_2).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(noon_signal(4, 0.3, 0.0).unwrap(), 0.0);
        assert!(noon_signal(0, 0.0, 1.0).is_err());
        assert!(noon_signal(2, FRAC_PI_2, 1.0).unwrap().abs() < 1e-15);
        assert!(noon_sensitivity(2, FRAC_PI_2).is_err());
        assert!((noon_sensitivity(2, 0.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn classifier_values() {
        assert_eq!(classifier_coincidence(0.0, 0.0), 0.0);
        assert!((classifier_coincidence(FRAC_PI_2, 0.7) - 0.5).abs() < 1e-15);
        assert!((classifier_coincidence(FRAC_PI_3, 0.0) - 0.375).abs() < 1e-15);
        assert!((classifier_floor(FRAC_PI_3) - 0.375).abs() < 1e-15);
        let p = TransverseProfile {
            sigma_x: 1.0,
            sigma_y: 2.0,
            x0: 0.0,
            y0: 0.0,
        };
        assert!(transverse_angle(&p, &p).unwrap().abs() < 1e-7);
        let wide = TransverseProfile { sigma_x: 2.0, ..p };
        let t = transverse_angle(&p, &wide).unwrap();
        assert!((t.cos() - 0.8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn activation_and_loss() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert!((sigmoid(800.0) - 1.0).abs() < 1e-15);
        assert!(sigmoid(-800.0) >= 0.0);
        assert!((binary_cross_entropy(1.0, 0.5) - core::f64::consts::LN_2).abs() < 1e-15);
        assert!(binary_cross_entropy(0.0, 0.0) < 1e-12);
        assert!(binary_cross_entropy(1.0, 0.0).is_finite());
    }

    #[test]
    fn fusion_values() {
        assert_eq!(fusion_fidelity(0.0), 1.0);
        assert!((fusion_fidelity(FRAC_PI_2) - 0.5).abs() < 1e-15);
        assert!((fusion_fidelity(FRAC_PI_4) - 0.75).abs() < 1e-15);
    }
}
