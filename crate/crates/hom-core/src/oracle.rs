//! Brute-force reference engine.
//!
//! The input creation operators are pushed through the beam splitter and
//! multiplied out as a polynomial in eight output creation operators:
//! two ports, H/V polarization and two orthonormal spectral modes. Each
//! monomial is one output occupation pattern. Detectors see H and V photons
//! independently, so click probabilities are exact per pattern.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::fock::{Apparatus, BeamSplitter, FockPair};
use crate::polarization::{Detector, Polarization};
use crate::spectral::overlap;
use crate::{Error, Result};

/// Largest total photon number the expansion accepts.
pub const MAX_PHOTONS: u32 = 12;

/// Output mode count: port x polarization x spectral mode.
pub const MODES: usize = 8;

/// Photon numbers per output mode, indexed by [`mode_index`].
pub type Occupation = [u8; MODES];

/// Amplitudes over (H, e1), (H, e2), (V, e1), (V, e2).
pub type InternalMode = [Complex64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Port {
    A,
    B,
}

pub fn mode_index(port: Port, vertical: bool, second_spectral: bool) -> usize {
    let p = match port {
        Port::A => 0,
        Port::B => 4,
    };
    p + 2 * vertical as usize + second_spectral as usize
}

/// Arm B's spectral amplitude split along arm A's (`parallel`) and the
/// orthogonal remainder (`perp`, real and non-negative).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeDecomposition {
    pub parallel: Complex64,
    pub perp: f64,
}

impl ModeDecomposition {
    pub fn new(pair: &FockPair) -> Result<Self> {
        Ok(Self::from_overlap(overlap(&pair.spec_a, &pair.spec_b)?))
    }

    pub fn from_overlap(parallel: Complex64) -> Self {
        let perp = (1.0 - parallel.norm_sqr()).max(0.0).sqrt();
        ModeDecomposition { parallel, perp }
    }

    /// Internal modes of arm A (polarization `a`, spectral mode e1) and arm
    /// B (polarization `b`, spectral `parallel e1 + perp e2`).
    pub fn internal_modes(&self, a: &Polarization, b: &Polarization) -> (InternalMode, InternalMode) {
        let zero = Complex64::new(0.0, 0.0);
        let ma = [a.h, zero, a.v, zero];
        let mb = [
            b.h * self.parallel,
            b.h * self.perp,
            b.v * self.parallel,
            b.v * self.perp,
        ];
        (ma, mb)
    }
}

/// One creation operator: an input port and an internal mode.
#[derive(Clone, Copy, Debug)]
pub struct Creation {
    pub port: Port,
    pub mode: InternalMode,
}

/// Superposition of products of input creation operators acting on vacuum.
#[derive(Clone, Debug, Default)]
pub struct InputState {
    pub terms: Vec<(Complex64, Vec<Creation>)>,
}

impl InputState {
    /// `(A+)^m (B+)^n |0> / sqrt(m! n!)`.
    pub fn fock(m: u32, a: InternalMode, n: u32, b: InternalMode) -> Self {
        let mut ops = Vec::new();
        ops.extend((0..m).map(|_| Creation { port: Port::A, mode: a }));
        ops.extend((0..n).map(|_| Creation { port: Port::B, mode: b }));
        let norm = 1.0 / (factorial(m) * factorial(n)).sqrt();
        InputState {
            terms: alloc::vec![(Complex64::new(norm, 0.0), ops)],
        }
    }

    pub fn photons(&self) -> u32 {
        self.terms.iter().map(|(_, ops)| ops.len() as u32).max().unwrap_or(0)
    }
}

/// Probabilities of output occupation patterns.
#[derive(Clone, Debug, Default)]
pub struct OutputDistribution {
    pub probabilities: BTreeMap<Occupation, f64>,
}

impl OutputDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.values().sum()
    }

    /// Photon counts `(H, V)` at one port.
    pub fn port_counts(occ: &Occupation, port: Port) -> (u32, u32) {
        let h = occ[mode_index(port, false, false)] + occ[mode_index(port, false, true)];
        let v = occ[mode_index(port, true, false)] + occ[mode_index(port, true, true)];
        (h as u32, v as u32)
    }

    /// Total probability of patterns with the given `(H, V)` counts at each port.
    pub fn pattern(&self, a: (u32, u32), b: (u32, u32)) -> f64 {
        self.probabilities
            .iter()
            .filter(|(occ, _)| Self::port_counts(occ, Port::A) == a && Self::port_counts(occ, Port::B) == b)
            .map(|(_, p)| p)
            .sum()
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

// output creation operators reached by one input creation operator
fn output_form(op: &Creation, bs: &BeamSplitter) -> [Complex64; MODES] {
    let t = bs.transmission().sqrt();
    let r = bs.reflection().sqrt();
    let (to_a, to_b) = match op.port {
        Port::A => (t, r),
        Port::B => (r, -t),
    };
    let mut out = [Complex64::new(0.0, 0.0); MODES];
    for k in 0..4 {
        out[k] = op.mode[k] * to_a;
        out[4 + k] = op.mode[k] * to_b;
    }
    out
}

/// Expands an input state through the splitter.
pub fn expand(state: &InputState, bs: &BeamSplitter) -> Result<OutputDistribution> {
    let photons = state.photons();
    if photons > MAX_PHOTONS {
        return Err(Error::TooManyPhotons {
            photons,
            limit: MAX_PHOTONS,
        });
    }
    let mut total: BTreeMap<Occupation, Complex64> = BTreeMap::new();
    for (coef, ops) in &state.terms {
        let mut poly: BTreeMap<Occupation, Complex64> = BTreeMap::new();
        poly.insert([0; MODES], *coef);
        for op in ops {
            let form = output_form(op, bs);
            let mut next: BTreeMap<Occupation, Complex64> = BTreeMap::new();
            for (occ, amp) in &poly {
                for (k, f) in form.iter().enumerate() {
                    if f.norm_sqr() == 0.0 {
                        continue;
                    }
                    let mut o = *occ;
                    o[k] += 1;
                    *next.entry(o).or_insert(Complex64::new(0.0, 0.0)) += amp * f;
                }
            }
            poly = next;
        }
        for (occ, amp) in poly {
            *total.entry(occ).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
    }
    let mut probabilities = BTreeMap::new();
    for (occ, amp) in total {
        // (a+)^k |0> = sqrt(k!) |k>
        let weight: f64 = occ.iter().map(|&k| factorial(k as u32)).product();
        let p = amp.norm_sqr() * weight;
        if p > 0.0 {
            probabilities.insert(occ, p);
        }
    }
    Ok(OutputDistribution { probabilities })
}

/// Output distribution for `m` photons in mode `a` and `n` in mode `b`;
/// checks that the result is normalized to 1e-10.
pub fn expand_fock(m: u32, a: InternalMode, n: u32, b: InternalMode, bs: &BeamSplitter) -> Result<OutputDistribution> {
    let dist = expand(&InputState::fock(m, a, n, b), bs)?;
    let residual = (dist.total() - 1.0).abs();
    if residual > 1e-10 {
        return Err(Error::Normalization { residual });
    }
    Ok(dist)
}

/// Output distribution of a Fock pair.
pub fn expand_pair(pair: &FockPair, bs: &BeamSplitter) -> Result<OutputDistribution> {
    let dec = ModeDecomposition::new(pair)?;
    let (a, b) = dec.internal_modes(&pair.pol_a, &pair.pol_b);
    expand_fock(pair.m, a, pair.n, b, bs)
}

/// Output distribution for equal H polarizations and a real spectral overlap `c`.
pub fn expand_with_overlap(m: u32, n: u32, c: f64, bs: &BeamSplitter) -> Result<OutputDistribution> {
    let dec = ModeDecomposition::from_overlap(Complex64::new(c, 0.0));
    let (a, b) = dec.internal_modes(&Polarization::H, &Polarization::H);
    expand_fock(m, a, n, b, bs)
}

fn port_click(det: &Detector, counts: (u32, u32)) -> f64 {
    1.0 - (1.0 - det.eta_h).powi(counts.0 as i32) * (1.0 - det.eta_v).powi(counts.1 as i32)
}

/// Probability that both detectors fire.
pub fn coincidence_from_distribution(dist: &OutputDistribution, det_a: &Detector, det_b: &Detector) -> f64 {
    dist.probabilities
        .iter()
        .map(|(occ, p)| {
            let a = OutputDistribution::port_counts(occ, Port::A);
            let b = OutputDistribution::port_counts(occ, Port::B);
            p * port_click(det_a, a) * port_click(det_b, b)
        })
        .sum()
}

/// Reference coincidence probability for a Fock pair.
pub fn oracle_coincidence(pair: &FockPair, app: &Apparatus) -> Result<f64> {
    let dist = expand_pair(pair, &app.splitter)?;
    Ok(coincidence_from_distribution(&dist, &app.detector_a, &app.detector_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair_dip() {
        let bs = BeamSplitter::balanced();
        let d = expand_with_overlap(1, 1, 1.0, &bs).unwrap();
        let p = coincidence_from_distribution(&d, &Detector::IDEAL, &Detector::IDEAL);
        assert!(p.abs() < 1e-15);
        let far = expand_with_overlap(1, 1, 0.0, &bs).unwrap();
        let p = coincidence_from_distribution(&far, &Detector::IDEAL, &Detector::IDEAL);
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn three_photons_all_at_a() {
        // (a+ + b+)^2 (a+ - b+) / 4 has |3,0> weight 6/16
        let d = expand_with_overlap(2, 1, 1.0, &BeamSplitter::balanced()).unwrap();
        let all_a = d.pattern((3, 0), (0, 0));
        assert!((all_a - 0.375).abs() < 1e-15);
    }

    #[test]
    fn crossed_polarizations_do_not_interfere() {
        let dec = ModeDecomposition::from_overlap(Complex64::new(1.0, 0.0));
        let (a, b) = dec.internal_modes(&Polarization::H, &Polarization::V);
        let d = expand_fock(1, a, 1, b, &BeamSplitter::balanced()).unwrap();
        let p = coincidence_from_distribution(&d, &Detector::IDEAL, &Detector::IDEAL);
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn photon_limit() {
        let r = expand_with_overlap(7, 6, 1.0, &BeamSplitter::balanced());
        assert!(matches!(r, Err(Error::TooManyPhotons { photons: 13, .. })));
    }

    #[test]
    fn distribution_is_normalized_for_mixed_modes() {
        let dec = ModeDecomposition::from_overlap(Complex64::new(0.3, 0.4));
        let (a, b) = dec.internal_modes(&Polarization::D, &Polarization::linear(0.3));
        let d = expand_fock(3, a, 2, b, &BeamSplitter::new(0.3).unwrap()).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-12);
    }
}
