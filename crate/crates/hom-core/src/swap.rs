//! Joint spectral amplitudes and entanglement swapping through a Bell-state
//! measurement on the inner photons of two pair sources.
//!
//! Source AB emits `(|H>_A |V>_B - |V>_A |H>_B) / sqrt 2` with joint
//! spectrum `f(w_A, w_B)`; source CD does the same with `g(w_C, w_D)` and
//! its photon C rotated in polarization by `phi`. Photons B and C meet on a
//! balanced splitter; the heralded AD state is compared with the singlet.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::check;
use crate::spectral::{gaussian_amplitude_overlap, SpectralProfile};
use crate::{Error, Result};

/// Gaussian pump envelope `exp(-(ws + wi - center)^2 / (2 sigma^2))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pump {
    pub center: f64,
    pub sigma: f64,
}

/// Gaussian phase matching `exp(-dk^2 / (2 sigma^2))` with
/// `dk = slope_s (ws - wp/2) + slope_i (wi - wp/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseMatching {
    pub sigma: f64,
    pub slope_s: f64,
    pub slope_i: f64,
}

impl PhaseMatching {
    pub fn new(sigma: f64) -> Self {
        PhaseMatching {
            sigma,
            slope_s: 1.0,
            slope_i: -0.5,
        }
    }
}

/// Sampling grid: `n` points per axis over `+- span` marginal widths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub span: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n: 256, span: 5.0 }
    }
}

/// Joint spectral amplitude of a photon pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JointSpectrum {
    Separable {
        signal: SpectralProfile,
        idler: SpectralProfile,
    },
    Gaussian {
        pump: Pump,
        phase_matching: PhaseMatching,
    },
}

impl JointSpectrum {
    pub fn validate(&self) -> Result<()> {
        match self {
            JointSpectrum::Separable { signal, idler } => {
                signal.validate()?;
                idler.validate()
            }
            JointSpectrum::Gaussian {
                pump,
                phase_matching: pm,
            } => {
                check("pump sigma", pump.sigma, pump.sigma > 0.0)?;
                check("pump center", pump.center, true)?;
                check("phase-matching sigma", pm.sigma, pm.sigma > 0.0)?;
                check("slope_s", pm.slope_s, true)?;
                let d = pm.slope_s - pm.slope_i;
                check("slope difference", d, d != 0.0)?;
                Ok(())
            }
        }
    }

    // quadratic form of |f|^2 = N^2 exp(-v^T q v) around (wp/2, wp/2)
    fn gaussian_form(pump: &Pump, pm: &PhaseMatching) -> [f64; 3] {
        let p = 1.0 / (pump.sigma * pump.sigma);
        let k = 1.0 / (pm.sigma * pm.sigma);
        let (a, b) = (pm.slope_s, pm.slope_i);
        [p + a * a * k, p + a * b * k, p + b * b * k]
    }

    /// Unit-norm amplitude.
    pub fn amplitude(&self, ws: f64, wi: f64) -> Complex64 {
        match self {
            JointSpectrum::Separable { signal, idler } => signal.amplitude(ws) * idler.amplitude(wi),
            JointSpectrum::Gaussian {
                pump,
                phase_matching: pm,
            } => {
                let [qss, qsi, qii] = Self::gaussian_form(pump, pm);
                let det = qss * qii - qsi * qsi;
                let norm = (det.sqrt() / core::f64::consts::PI).sqrt();
                let x = ws - 0.5 * pump.center;
                let y = wi - 0.5 * pump.center;
                let sum = ws + wi - pump.center;
                let dk = pm.slope_s * x + pm.slope_i * y;
                let e = -sum * sum / (2.0 * pump.sigma * pump.sigma) - dk * dk / (2.0 * pm.sigma * pm.sigma);
                Complex64::new(norm * e.exp(), 0.0)
            }
        }
    }

    /// Center and half-width of the amplitude marginal on each axis
    /// (signal first).
    pub fn windows(&self, span: f64) -> [(f64, f64); 2] {
        match self {
            JointSpectrum::Separable { signal, idler } => [
                (signal.center, span * signal.spectral_scale()),
                (idler.center, span * idler.spectral_scale()),
            ],
            JointSpectrum::Gaussian {
                pump,
                phase_matching: pm,
            } => {
                let [qss, qsi, qii] = Self::gaussian_form(pump, pm);
                let det = qss * qii - qsi * qsi;
                let c = 0.5 * pump.center;
                [(c, span * (qii / det).sqrt()), (c, span * (qss / det).sqrt())]
            }
        }
    }
}

/// A joint amplitude sampled on a tensor grid with quadrature weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GriddedJsa {
    pub signal_axis: Vec<f64>,
    pub idler_axis: Vec<f64>,
    pub signal_weights: Vec<f64>,
    pub idler_weights: Vec<f64>,
    /// Row-major, signal index first.
    pub values: Vec<Complex64>,
}

/// `n` evenly spaced points over `[lo, hi]` with trapezoid weights.
pub fn trapezoid_axis(lo: f64, hi: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 || !(hi > lo) {
        return Err(Error::InvalidParameter {
            name: "grid points",
            value: n as f64,
        });
    }
    let h = (hi - lo) / (n - 1) as f64;
    let axis = (0..n).map(|i| lo + h * i as f64).collect();
    let weights = (0..n)
        .map(|i| if i == 0 || i + 1 == n { 0.5 * h } else { h })
        .collect();
    Ok((axis, weights))
}

impl GriddedJsa {
    /// Samples `jsa` and rescales it to unit norm on the grid. Errors if the
    /// grid misses more than 1e-6 of the norm.
    pub fn sample(
        jsa: &JointSpectrum,
        signal: (Vec<f64>, Vec<f64>),
        idler: (Vec<f64>, Vec<f64>),
    ) -> Result<Self> {
        jsa.validate()?;
        let mut values = Vec::with_capacity(signal.0.len() * idler.0.len());
        for &ws in &signal.0 {
            for &wi in &idler.0 {
                values.push(jsa.amplitude(ws, wi));
            }
        }
        let mut g = GriddedJsa {
            signal_axis: signal.0,
            signal_weights: signal.1,
            idler_axis: idler.0,
            idler_weights: idler.1,
            values,
        };
        let residual = (g.norm_sqr() - 1.0).abs();
        if residual > 1e-6 {
            return Err(Error::Normalization { residual });
        }
        g.normalize();
        Ok(g)
    }

    /// A discrete amplitude over `rows x cols` bins with unit weights.
    pub fn from_discrete(values: Vec<Complex64>, rows: usize, cols: usize) -> Result<Self> {
        if values.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::GridMismatch);
        }
        let mut g = GriddedJsa {
            signal_axis: (0..rows).map(|i| i as f64).collect(),
            idler_axis: (0..cols).map(|i| i as f64).collect(),
            signal_weights: alloc::vec![1.0; rows],
            idler_weights: alloc::vec![1.0; cols],
            values,
        };
        g.normalize();
        Ok(g)
    }

    pub fn at(&self, s: usize, i: usize) -> Complex64 {
        self.values[s * self.idler_axis.len() + i]
    }

    pub fn norm_sqr(&self) -> f64 {
        let cols = self.idler_axis.len();
        let mut acc = 0.0;
        for (s, ws) in self.signal_weights.iter().enumerate() {
            for (i, wi) in self.idler_weights.iter().enumerate() {
                acc += ws * wi * self.values[s * cols + i].norm_sqr();
            }
        }
        acc
    }

    fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            for v in self.values.iter_mut() {
                *v /= n;
            }
        }
    }

    // sqrt-weighted matrix whose singular values are the Schmidt coefficients
    fn weighted(&self) -> Vec<Complex64> {
        let cols = self.idler_axis.len();
        let mut out = self.values.clone();
        for (s, ws) in self.signal_weights.iter().enumerate() {
            for (i, wi) in self.idler_weights.iter().enumerate() {
                out[s * cols + i] *= (ws * wi).sqrt();
            }
        }
        out
    }

    /// Signal reduced density matrix `K = G G^dagger` of the weighted matrix.
    fn signal_kernel(&self) -> Vec<Complex64> {
        let g = self.weighted();
        let (rows, cols) = (self.signal_axis.len(), self.idler_axis.len());
        let mut k = alloc::vec![Complex64::new(0.0, 0.0); rows * rows];
        for r in 0..rows {
            for s in r..rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..cols {
                    acc += g[r * cols + i] * g[s * cols + i].conj();
                }
                k[r * rows + s] = acc;
                k[s * rows + r] = acc.conj();
            }
        }
        k
    }

    /// `sum_k lambda_k^2` over Schmidt weights; 1 for a separable amplitude.
    pub fn schmidt_purity(&self) -> f64 {
        self.signal_kernel().iter().map(|x| x.norm_sqr()).sum()
    }

    /// Largest Schmidt weight, by power iteration.
    pub fn largest_schmidt_weight(&self) -> f64 {
        let k = self.signal_kernel();
        let n = self.signal_axis.len();
        let mut v = alloc::vec![Complex64::new(1.0, 0.0); n];
        // start from the heaviest row to avoid an orthogonal guess
        for (r, x) in v.iter_mut().enumerate() {
            *x = Complex64::new(k[r * n + r].re + 1e-3, 0.0);
        }
        let mut lambda = 0.0;
        for _ in 0..500 {
            let mut w = alloc::vec![Complex64::new(0.0, 0.0); n];
            for r in 0..n {
                for s in 0..n {
                    w[r] += k[r * n + s] * v[s];
                }
            }
            let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            let next = norm / v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for x in w.iter_mut() {
                *x /= norm;
            }
            v = w;
            if (next - lambda).abs() < 1e-15 {
                return next;
            }
            lambda = next;
        }
        lambda
    }
}

/// Two pair sources and the polarization rotation on photon C.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwapScenario {
    pub source_ab: JointSpectrum,
    pub source_cd: JointSpectrum,
    pub phi: f64,
    pub grid: GridSpec,
}

impl SwapScenario {
    /// Samples both sources, with B and C on one shared axis.
    pub fn sample(&self) -> Result<(GriddedJsa, GriddedJsa)> {
        let GridSpec { n, span } = self.grid;
        let [(ca, ha), (cb, hb)] = self.source_ab.windows(span);
        let [(cc, hc), (cd, hd)] = self.source_cd.windows(span);
        let shared_lo = (cb - hb).min(cc - hc);
        let shared_hi = (cb + hb).max(cc + hc);
        let shared = trapezoid_axis(shared_lo, shared_hi, n)?;
        let f = GriddedJsa::sample(&self.source_ab, trapezoid_axis(ca - ha, ca + ha, n)?, shared.clone())?;
        let g = GriddedJsa::sample(&self.source_cd, shared, trapezoid_axis(cd - hd, cd + hd, n)?)?;
        Ok((f, g))
    }
}

/// `int |int f(a, b) conj(g(b, d)) db|^2 da dd` for gridded amplitudes whose
/// idler (f) and signal (g) axes coincide.
pub fn exchange_overlap(f: &GriddedJsa, g: &GriddedJsa) -> Result<f64> {
    if f.idler_axis != g.signal_axis || f.idler_weights != g.signal_weights {
        return Err(Error::GridMismatch);
    }
    let na = f.signal_axis.len();
    let nb = f.idler_axis.len();
    let nd = g.idler_axis.len();
    let zero = Complex64::new(0.0, 0.0);
    // p[b][b'] = sum_a w_a f(a,b) conj f(a,b'), upper triangle
    let mut p = alloc::vec![zero; nb * nb];
    for a in 0..na {
        let wa = f.signal_weights[a];
        let row = &f.values[a * nb..(a + 1) * nb];
        for b in 0..nb {
            let x = row[b] * wa;
            for bp in b..nb {
                p[b * nb + bp] += x * row[bp].conj();
            }
        }
    }
    // q[b][b'] = sum_d w_d conj g(b,d) g(b',d), upper triangle
    let mut q = alloc::vec![zero; nb * nb];
    for b in 0..nb {
        let rb = &g.values[b * nd..(b + 1) * nd];
        for bp in b..nb {
            let rbp = &g.values[bp * nd..(bp + 1) * nd];
            let mut acc = zero;
            for d in 0..nd {
                acc += rb[d].conj() * rbp[d] * g.idler_weights[d];
            }
            q[b * nb + bp] = acc;
        }
    }
    let w = &f.idler_weights;
    let mut x = 0.0;
    for b in 0..nb {
        x += w[b] * w[b] * (p[b * nb + b] * q[b * nb + b]).re;
        for bp in b + 1..nb {
            // the (b', b) term is the conjugate of (b, b')
            x += 2.0 * w[b] * w[bp] * (p[b * nb + bp] * q[b * nb + bp]).re;
        }
    }
    Ok(x)
}

/// Singlet fidelity of the heralded AD pair.
pub fn swap_fidelity(scenario: &SwapScenario) -> Result<f64> {
    let (f, g) = scenario.sample()?;
    fidelity_from_gridded(&f, &g, scenario.phi)
}

pub fn fidelity_from_gridded(f: &GriddedJsa, g: &GriddedJsa, phi: f64) -> Result<f64> {
    let c = phi.cos();
    Ok(0.5 * c * c * (1.0 + exchange_overlap(f, g)?))
}

/// Fidelity for separable sources whose B and C spectra meet at mismatch
/// angle `theta`.
pub fn separable_fidelity(phi: f64, theta: f64) -> f64 {
    fidelity_from_overlap(phi, theta.cos())
}

fn fidelity_from_overlap(phi: f64, overlap: f64) -> f64 {
    let c = phi.cos();
    0.5 * c * c * (1.0 + overlap * overlap)
}

/// Probabilities of the four detection patterns, in the order
/// (b_H c_V), (b_V c_H), (b_H b_V), (c_H c_V).
pub fn bsm_outcome_probabilities(scenario: &SwapScenario) -> Result<[f64; 4]> {
    let (f, g) = scenario.sample()?;
    Ok(outcome_probabilities(&f, &g, scenario.phi))
}

pub fn outcome_probabilities(f: &GriddedJsa, g: &GriddedJsa, phi: f64) -> [f64; 4] {
    // each pattern collects two branches with orthogonal A polarizations;
    // within a branch the D amplitudes are cos(phi) and sin(phi)
    let (s, c) = phi.sin_cos();
    let branch = f.norm_sqr() * g.norm_sqr() * (c * c + s * s) / 16.0;
    [2.0 * branch; 4]
}

/// Fidelity curves against B's amplitude width, one per detuning.
#[derive(Clone, Debug, PartialEq)]
pub struct BandwidthSweep {
    pub detunings: Vec<f64>,
    pub sigma_b: Vec<f64>,
    /// One row per detuning.
    pub fidelity: Vec<Vec<f64>>,
}

impl BandwidthSweep {
    /// `sigma_b` at the maximum of each curve.
    pub fn argmax(&self) -> Vec<f64> {
        self.fidelity
            .iter()
            .map(|row| {
                let mut best = 0;
                for (i, v) in row.iter().enumerate() {
                    if *v > row[best] {
                        best = i;
                    }
                }
                self.sigma_b[best]
            })
            .collect()
    }
}

/// Separable Gaussian fidelity (`phi = 0`) against B's amplitude width with
/// C's width fixed, for each center detuning.
pub fn detuned_bandwidth_sweep(detunings: &[f64], sigma_b: &[f64], sigma_c: f64) -> Result<BandwidthSweep> {
    check("sigma_c", sigma_c, sigma_c > 0.0)?;
    let mut fidelity = Vec::with_capacity(detunings.len());
    for &d in detunings {
        let mut row = Vec::with_capacity(sigma_b.len());
        for &sb in sigma_b {
            check("sigma_b", sb, sb > 0.0)?;
            row.push(fidelity_from_overlap(0.0, gaussian_amplitude_overlap(sb, sigma_c, d)));
        }
        fidelity.push(row);
    }
    Ok(BandwidthSweep {
        detunings: detunings.to_vec(),
        sigma_b: sigma_b.to_vec(),
        fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{overlap_magnitude, SpectralProfile};
    use core::f64::consts::FRAC_PI_2;

    fn separable(sb: f64, sc: f64, detune: f64) -> (JointSpectrum, JointSpectrum, f64) {
        let a = SpectralProfile::gaussian(10.0, 0.3).unwrap();
        let b = SpectralProfile::gaussian(5.0, sb).unwrap();
        let c = SpectralProfile::gaussian(5.0 + detune, sc).unwrap();
        let d = SpectralProfile::gaussian(12.0, 0.4).unwrap();
        let ov = overlap_magnitude(&b, &c).unwrap();
        (
            JointSpectrum::Separable { signal: a, idler: b },
            JointSpectrum::Separable { signal: c, idler: d },
            ov,
        )
    }

    fn scenario(ab: JointSpectrum, cd: JointSpectrum, phi: f64, n: usize) -> SwapScenario {
        SwapScenario {
            source_ab: ab,
            source_cd: cd,
            phi,
            grid: GridSpec { n, span: 5.0 },
        }
    }

    #[test]
    fn separable_matches_closed_form() {
        let (ab, cd, ov) = separable(0.2, 0.35, 0.1);
        let f = swap_fidelity(&scenario(ab, cd, 0.3, 96)).unwrap();
        assert!((f - separable_fidelity(0.3, ov.acos())).abs() < 1e-9);
    }

    #[test]
    fn orthogonal_rotation_halves() {
        let (ab, cd, _) = separable(0.2, 0.2, 0.0);
        let f = swap_fidelity(&scenario(ab, cd, 0.0, 64)).unwrap();
        assert!((f - 1.0).abs() < 1e-9);
        assert_eq!(separable_fidelity(0.0, FRAC_PI_2), 0.5);
        assert_eq!(separable_fidelity(0.0, 0.0), 1.0);
        let f = swap_fidelity(&scenario(ab, cd, FRAC_PI_2, 64)).unwrap();
        assert!(f.abs() < 1e-15);
    }

    #[test]
    fn outcomes_are_one_eighth() {
        let (ab, cd, _) = separable(0.2, 0.5, 0.3);
        let p = bsm_outcome_probabilities(&scenario(ab, cd, 0.7, 48)).unwrap();
        for x in p {
            assert!((x - 0.125).abs() < 1e-9);
        }
    }

    #[test]
    fn gaussian_jsa_normalized_and_separable_at_matched_widths() {
        // separable when 1/sigma_p^2 + slope_s slope_i / sigma_pm^2 = 0
        let pm = PhaseMatching::new(1.0);
        let sigma_p = (1.0 / (-pm.slope_s * pm.slope_i)).sqrt();
        let jsa = JointSpectrum::Gaussian {
            pump: Pump {
                center: 20.0,
                sigma: sigma_p,
            },
            phase_matching: pm,
        };
        let [(cs, hs), (ci, hi)] = jsa.windows(5.0);
        let g = GriddedJsa::sample(
            &jsa,
            trapezoid_axis(cs - hs, cs + hs, 64).unwrap(),
            trapezoid_axis(ci - hi, ci + hi, 64).unwrap(),
        )
        .unwrap();
        assert!((g.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(g.largest_schmidt_weight() > 1.0 - 1e-9);
        assert!((g.schmidt_purity() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn narrow_pump_is_entangled() {
        let jsa = JointSpectrum::Gaussian {
            pump: Pump {
                center: 20.0,
                sigma: 0.1,
            },
            phase_matching: PhaseMatching::new(1.0),
        };
        let [(cs, hs), (ci, hi)] = jsa.windows(5.0);
        let g = GriddedJsa::sample(
            &jsa,
            trapezoid_axis(cs - hs, cs + hs, 96).unwrap(),
            trapezoid_axis(ci - hi, ci + hi, 96).unwrap(),
        )
        .unwrap();
        assert!(g.schmidt_purity() < 0.5);
    }

    #[test]
    fn coarse_grid_is_reported() {
        let (ab, cd, _) = separable(0.2, 0.2, 0.0);
        let mut s = scenario(ab, cd, 0.0, 64);
        s.grid.span = 1.0;
        assert!(matches!(swap_fidelity(&s), Err(Error::Normalization { .. })));
    }

    #[test]
    fn detuned_sweep_prefers_wider_b() {
        let sigma_b: Vec<f64> = (1..=60).map(|i| 0.05 * i as f64).collect();
        let sweep = detuned_bandwidth_sweep(&[0.0, 1.0], &sigma_b, 1.0).unwrap();
        let best = sweep.argmax();
        assert!((best[0] - 1.0).abs() < 1e-12);
        assert!(best[1] > 1.0);
    }
}
