//! Coincidences for phase-randomized coherent inputs.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::check;
use crate::fock::{coincidence_raw, settle, Apparatus, BeamSplitter};
use crate::polarization::{click_from_efficiencies, cos_phi, Polarization};
use crate::special::{bessel_i0_minus_one, bessel_i0_scaled, poisson_weights};
use crate::spectral::{overlap_magnitude, SpectralProfile};
use crate::{Error, Result};

/// Two coherent pulses with mean photon numbers `mu_a`, `mu_b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentPair {
    pub mu_a: f64,
    pub mu_b: f64,
    pub pol_a: Polarization,
    pub pol_b: Polarization,
    pub spec_a: SpectralProfile,
    pub spec_b: SpectralProfile,
}

/// Single-photon detection efficiencies: detector A for arm A and arm B
/// photons, then detector B for arm A and arm B photons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Efficiencies {
    pub a_from_a: f64,
    pub a_from_b: f64,
    pub b_from_a: f64,
    pub b_from_b: f64,
}

impl Efficiencies {
    pub const IDEAL: Efficiencies = Efficiencies {
        a_from_a: 1.0,
        a_from_b: 1.0,
        b_from_a: 1.0,
        b_from_b: 1.0,
    };

    pub fn new(app: &Apparatus, pol_a: &Polarization, pol_b: &Polarization) -> Self {
        Efficiencies {
            a_from_a: app.detector_a.efficiency(pol_a),
            a_from_b: app.detector_a.efficiency(pol_b),
            b_from_a: app.detector_b.efficiency(pol_a),
            b_from_b: app.detector_b.efficiency(pol_b),
        }
    }
}

impl CoherentPair {
    pub fn validate(&self) -> Result<()> {
        check("mu_a", self.mu_a, self.mu_a >= 0.0)?;
        check("mu_b", self.mu_b, self.mu_b >= 0.0)?;
        self.spec_a.validate()?;
        self.spec_b.validate()
    }

    pub fn overlap(&self) -> Result<f64> {
        Ok(cos_phi(&self.pol_a, &self.pol_b) * overlap_magnitude(&self.spec_a, &self.spec_b)?)
    }
}

// exp(shift) * I0(x), evaluated without overflow
fn weighted_i0(shift: f64, x: f64) -> f64 {
    (shift + x.abs()).exp() * bessel_i0_scaled(x)
}

/// Closed-form coincidence probability for overlap `c`.
pub fn closed_form(mu_a: f64, mu_b: f64, c: f64, eff: &Efficiencies, bs: &BeamSplitter) -> f64 {
    let (t, r) = (bs.transmission(), bs.reflection());
    let (ea, eb, ea2, eb2) = (eff.a_from_a, eff.a_from_b, eff.b_from_a, eff.b_from_b);
    let s = mu_a + mu_b;
    let coef_a = mu_a * r * (1.0 - ea2);
    let coef_b = mu_b * t * (1.0 - eb2);
    let coef_c = mu_a * t * (1.0 - ea);
    let coef_d = mu_b * r * (1.0 - eb);

    let clicks = 1.0 - (-mu_a * ea2 - mu_b * eb2).exp() - (-mu_a * ea - mu_b * eb).exp()
        + (mu_a * (ea * ea2 - ea - ea2) + mu_b * (eb * eb2 - eb - eb2)).exp();
    let x1 = 2.0 * (mu_a * mu_b * r * t).sqrt() * c;
    let bunch = weighted_i0(-s + mu_a * r + mu_b * t, x1) + weighted_i0(-s + mu_a * t + mu_b * r, x1);
    let lost_b = weighted_i0(-s + coef_a + coef_b, 2.0 * (coef_a * coef_b).sqrt() * c);
    let lost_a = weighted_i0(-s + coef_c + coef_d, 2.0 * (coef_c * coef_d).sqrt() * c);
    clicks - bunch + lost_b + lost_a
}

/// Poisson-weighted sum of Fock coincidences, truncated where both tails
/// drop below `tail`.
pub fn series(mu_a: f64, mu_b: f64, c: f64, eff: &Efficiencies, bs: &BeamSplitter, tail: f64) -> f64 {
    let pa = poisson_weights(mu_a, tail);
    let pb = poisson_weights(mu_b, tail);
    let mut acc = 0.0;
    for (m, wa) in pa.iter().enumerate() {
        for (n, wb) in pb.iter().enumerate() {
            let (m, n) = (m as u32, n as u32);
            let da = click_from_efficiencies(eff.a_from_a, eff.a_from_b, m, n);
            let db = click_from_efficiencies(eff.b_from_a, eff.b_from_b, m, n);
            acc += wa * wb * coincidence_raw(m, n, c, da, db, bs);
        }
    }
    acc
}

/// Coincidence probability of a coherent pair. Like the Fock formula it
/// sums, the closed form can go negative for lossy detectors; that is
/// reported as an error.
pub fn total_coincidence(pair: &CoherentPair, app: &Apparatus) -> Result<f64> {
    pair.validate()?;
    app.validate()?;
    let eff = Efficiencies::new(app, &pair.pol_a, &pair.pol_b);
    settle(closed_form(pair.mu_a, pair.mu_b, pair.overlap()?, &eff, &app.splitter))
}

/// Same as [`total_coincidence`] by explicit photon-number summation.
pub fn total_coincidence_series(pair: &CoherentPair, app: &Apparatus, tail: f64) -> Result<f64> {
    pair.validate()?;
    app.validate()?;
    let eff = Efficiencies::new(app, &pair.pol_a, &pair.pol_b);
    settle(series(pair.mu_a, pair.mu_b, pair.overlap()?, &eff, &app.splitter, tail))
}

/// Visibility for equal mean photon number `mu` on an ideal balanced
/// apparatus with polarization mismatch `phi`; `mu = 0` gives the limit.
pub fn coherent_visibility(mu: f64, phi: f64) -> Result<f64> {
    check("mu", mu, mu >= 0.0)?;
    let c = phi.cos();
    if mu == 0.0 {
        return Ok(0.5 * c * c);
    }
    if mu < 20.0 {
        let sh = (0.5 * mu).sinh();
        return Ok(bessel_i0_minus_one(mu * c) / (2.0 * sh * sh));
    }
    // 2 sinh^2(mu/2) = e^mu (1 - e^-mu)^2 / 2, scaled out to avoid overflow
    let x = (mu * c).abs();
    let decay = (-mu).exp();
    let top = 2.0 * ((x - mu).exp() * bessel_i0_scaled(x) - decay);
    Ok(top / ((1.0 - decay) * (1.0 - decay)))
}

/// `(P(inf) - P(0)) / P(inf)` for a coherent pair, with `P(0)` at aligned
/// delays and `P(inf)` at zero spectral overlap.
pub fn visibility(pair: &CoherentPair, app: &Apparatus) -> Result<f64> {
    pair.validate()?;
    app.validate()?;
    let mut aligned = *pair;
    aligned.spec_b = aligned.spec_b.with_delay(pair.spec_a.delay);
    let eff = Efficiencies::new(app, &pair.pol_a, &pair.pol_b);
    visibility_from_overlap(pair.mu_a, pair.mu_b, aligned.overlap()?, &eff, &app.splitter)
}

pub fn visibility_from_overlap(mu_a: f64, mu_b: f64, c: f64, eff: &Efficiencies, bs: &BeamSplitter) -> Result<f64> {
    let far = closed_form(mu_a, mu_b, 0.0, eff, bs);
    if far == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok((far - closed_form(mu_a, mu_b, c, eff, bs)) / far)
}

/// Visibility over intensity ratio and splitter ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioMap {
    /// `mu_a / mu_b` per row.
    pub mu_ratios: Vec<f64>,
    /// `T / R` per column.
    pub split_ratios: Vec<f64>,
    /// Row-major visibilities.
    pub values: Vec<f64>,
}

impl RatioMap {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.split_ratios.len() + col]
    }

    /// `(mu ratio, T/R)` at the largest visibility; first wins on ties.
    pub fn argmax(&self) -> (f64, f64) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        let cols = self.split_ratios.len();
        (self.mu_ratios[best / cols], self.split_ratios[best % cols])
    }
}

/// Visibility map with `mu_b = mu_ref`, `mu_a = ratio * mu_ref` and
/// `T = s / (1 + s)` for each splitter ratio `s`; `c` is the overlap at
/// zero delay.
pub fn visibility_ratio_map(
    mu_ref: f64,
    mu_ratios: &[f64],
    split_ratios: &[f64],
    c: f64,
    pol_a: &Polarization,
    pol_b: &Polarization,
    app: &Apparatus,
) -> Result<RatioMap> {
    check("mu_ref", mu_ref, mu_ref > 0.0)?;
    app.validate()?;
    let eff = Efficiencies::new(app, pol_a, pol_b);
    let mut values = Vec::with_capacity(mu_ratios.len() * split_ratios.len());
    for &q in mu_ratios {
        check("mu ratio", q, q >= 0.0)?;
        for &s in split_ratios {
            check("T/R ratio", s, s >= 0.0)?;
            let bs = BeamSplitter::new(s / (1.0 + s))?;
            values.push(visibility_from_overlap(q * mu_ref, mu_ref, c, &eff, &bs)?);
        }
    }
    Ok(RatioMap {
        mu_ratios: mu_ratios.to_vec(),
        split_ratios: split_ratios.to_vec(),
        values,
    })
}
