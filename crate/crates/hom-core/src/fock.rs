//! Coincidence probabilities for Fock-state inputs on a lossless beam splitter.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::check;
use crate::polarization::{click_from_efficiencies, cos_phi, Detector, Polarization};
use crate::spectral::{fwhm, overlap_magnitude, Shape, SpectralProfile};
use crate::special::binomial;
use crate::{Error, Result};

/// Round-off allowance before a probability is treated as out of range.
pub const PROBABILITY_SLACK: f64 = 1e-9;

/// Lossless splitter with intensity transmission `T` and reflection `R = 1 - T`.
///
/// Convention: `a -> t a + r b`, `b -> r a - t b` with `t = sqrt(T)`,
/// `r = sqrt(R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitter {
    transmission: f64,
    reflection: f64,
}

impl BeamSplitter {
    pub fn new(transmission: f64) -> Result<Self> {
        check(
            "transmission",
            transmission,
            (0.0..=1.0).contains(&transmission),
        )?;
        Ok(BeamSplitter {
            transmission,
            reflection: 1.0 - transmission,
        })
    }

    /// Splitter from both coefficients; they must sum to one within 1e-12.
    pub fn from_coefficients(transmission: f64, reflection: f64) -> Result<Self> {
        check("reflection", reflection, (0.0..=1.0).contains(&reflection))?;
        let sum = transmission + reflection;
        check("T + R", sum, (sum - 1.0).abs() <= 1e-12)?;
        let mut bs = Self::new(transmission)?;
        bs.reflection = reflection;
        Ok(bs)
    }

    pub fn balanced() -> Self {
        BeamSplitter {
            transmission: 0.5,
            reflection: 0.5,
        }
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    pub fn reflection(&self) -> f64 {
        self.reflection
    }

    /// The splitter with `T` and `R` exchanged.
    pub fn swapped(&self) -> Self {
        BeamSplitter {
            transmission: self.reflection,
            reflection: self.transmission,
        }
    }
}

/// Splitter plus one threshold detector per output port.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Apparatus {
    pub splitter: BeamSplitter,
    pub detector_a: Detector,
    pub detector_b: Detector,
}

impl Apparatus {
    pub fn ideal() -> Self {
        Apparatus {
            splitter: BeamSplitter::balanced(),
            detector_a: Detector::IDEAL,
            detector_b: Detector::IDEAL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.detector_a.validate()?;
        self.detector_b.validate()
    }
}

/// `m` photons in arm A and `n` in arm B, each arm in a single mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FockPair {
    pub m: u32,
    pub n: u32,
    pub pol_a: Polarization,
    pub pol_b: Polarization,
    pub spec_a: SpectralProfile,
    pub spec_b: SpectralProfile,
}

impl FockPair {
    /// Identical single-mode arms.
    pub fn matched(m: u32, n: u32, pol: Polarization, spec: SpectralProfile) -> Self {
        FockPair {
            m,
            n,
            pol_a: pol,
            pol_b: pol,
            spec_a: spec,
            spec_b: spec,
        }
    }

    /// The pair with arms exchanged.
    pub fn swapped(&self) -> Self {
        FockPair {
            m: self.n,
            n: self.m,
            pol_a: self.pol_b,
            pol_b: self.pol_a,
            spec_a: self.spec_b,
            spec_b: self.spec_a,
        }
    }
}

/// `sum_j C(m,j) C(n,j) c^(2j)`.
pub fn bunching_factor(m: u32, n: u32, c: f64) -> f64 {
    let c2 = c * c;
    let mut acc = 0.0;
    let mut pow = 1.0;
    for j in 0..=m.min(n) {
        acc += binomial(m, j) * binomial(n, j) * pow;
        pow *= c2;
    }
    acc
}

/// Combined mode overlap `cos(phi) cos(theta)` of the two arms.
pub fn mode_overlap(pair: &FockPair) -> Result<f64> {
    Ok(cos_phi(&pair.pol_a, &pair.pol_b) * overlap_magnitude(&pair.spec_a, &pair.spec_b)?)
}

/// Probabilities that every photon leaves through port A, and through port B.
pub fn p_all_one_side(m: u32, n: u32, overlap: f64, bs: &BeamSplitter) -> (f64, f64) {
    let f = bunching_factor(m, n, overlap);
    let (t, r) = (bs.transmission, bs.reflection);
    (
        t.powi(m as i32) * r.powi(n as i32) * f,
        t.powi(n as i32) * r.powi(m as i32) * f,
    )
}

/// Coincidence formula given the overlap and both click probabilities.
/// Not range-checked; for `m = n = 0` it returns 0.
pub fn coincidence_raw(m: u32, n: u32, overlap: f64, click_a: f64, click_b: f64, bs: &BeamSplitter) -> f64 {
    if m + n == 0 {
        return 0.0;
    }
    let (side_a, side_b) = p_all_one_side(m, n, overlap, bs);
    click_a * click_b - (side_a * click_a + side_b * click_b)
}

/// Raw coincidence for explicit polarizations and a given mode overlap.
pub fn coincidence_from_overlap(
    m: u32,
    n: u32,
    overlap: f64,
    pol_a: &Polarization,
    pol_b: &Polarization,
    app: &Apparatus,
) -> f64 {
    let da = &app.detector_a;
    let db = &app.detector_b;
    let click_a = click_from_efficiencies(da.efficiency(pol_a), da.efficiency(pol_b), m, n);
    let click_b = click_from_efficiencies(db.efficiency(pol_a), db.efficiency(pol_b), m, n);
    coincidence_raw(m, n, overlap, click_a, click_b, &app.splitter)
}

/// Coincidence probability. Errors when the formula goes negative beyond
/// round-off, which happens for lossy detectors outside the model's range.
pub fn coincidence(pair: &FockPair, app: &Apparatus) -> Result<f64> {
    app.validate()?;
    let c = mode_overlap(pair)?;
    let p = coincidence_from_overlap(pair.m, pair.n, c, &pair.pol_a, &pair.pol_b, app);
    settle(p)
}

pub(crate) fn settle(p: f64) -> Result<f64> {
    if p < -PROBABILITY_SLACK || !p.is_finite() {
        return Err(Error::InvalidRegime { value: p });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Coincidence as arm B's delay runs over `taus`.
pub fn dip_curve(pair: &FockPair, app: &Apparatus, taus: &[f64]) -> Result<Vec<(f64, f64)>> {
    taus.iter()
        .map(|&tau| {
            let mut p = *pair;
            p.spec_b = p.spec_b.with_delay(tau);
            coincidence(&p, app).map(|v| (tau, v))
        })
        .collect()
}

/// `(P(inf) - P(0)) / P(inf)` where `P(0)` has both arms at the same delay
/// and `P(inf)` uses zero spectral overlap. May be negative.
pub fn visibility(pair: &FockPair, app: &Apparatus) -> Result<f64> {
    app.validate()?;
    let mut aligned = *pair;
    aligned.spec_b = aligned.spec_b.with_delay(pair.spec_a.delay);
    let c = mode_overlap(&aligned)?;
    visibility_from_overlap(pair.m, pair.n, c, &pair.pol_a, &pair.pol_b, app)
}

/// Visibility for a known overlap at zero delay.
pub fn visibility_from_overlap(
    m: u32,
    n: u32,
    overlap: f64,
    pol_a: &Polarization,
    pol_b: &Polarization,
    app: &Apparatus,
) -> Result<f64> {
    let far = coincidence_from_overlap(m, n, 0.0, pol_a, pol_b, app);
    if far == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    let near = coincidence_from_overlap(m, n, overlap, pol_a, pol_b, app);
    Ok((far - near) / far)
}

/// Visibility against polarization mismatch for spectrally identical arms
/// on an ideal balanced apparatus.
pub fn visibility_vs_polarization(m: u32, n: u32, phis: &[f64]) -> Result<Vec<f64>> {
    let app = Apparatus::ideal();
    phis.iter()
        .map(|&phi| {
            let b = Polarization::H.rotate(phi);
            visibility_from_overlap(m, n, cos_phi(&Polarization::H, &b), &Polarization::H, &b, &app)
        })
        .collect()
}

/// Best visibility against a fixed photon when only the other photon's
/// width is free.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WidthOptimum {
    pub visibility: f64,
    /// FWHM of the fixed photon over that of the tuned one.
    pub fwhm_ratio: f64,
}

/// Maximizes the ideal, polarization-matched visibility of `m` photons in
/// `fixed` and `n` photons of shape `shape` (same center) over the tuned
/// photon's FWHM. Scans FWHM ratios in `[1/30, 30]` on a log grid, then
/// refines by golden section.
pub fn best_width_match(m: u32, n: u32, fixed: &SpectralProfile, shape: Shape) -> Result<WidthOptimum> {
    let base = fwhm(fixed)?;
    let overlap_at = |log_ratio: f64| -> Result<f64> {
        let tuned = SpectralProfile::from_fwhm(shape, fixed.center, base * log_ratio.exp())?.with_delay(fixed.delay);
        overlap_magnitude(fixed, &tuned)
    };
    let span = 30f64.ln();
    let steps = 60;
    let h = 2.0 * span / steps as f64;
    let mut best = (0.0, -1.0);
    for i in 0..=steps {
        let x = -span + h * i as f64;
        let c = overlap_at(x)?;
        if c > best.1 {
            best = (x, c);
        }
    }
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = overlap_at(x1)?;
    let mut f2 = overlap_at(x2)?;
    while hi - lo > 1e-7 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = overlap_at(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = overlap_at(x1)?;
        }
    }
    let x = 0.5 * (lo + hi);
    let c = overlap_at(x)?.max(best.1);
    let pol = Polarization::H;
    let visibility = visibility_from_overlap(m, n, c, &pol, &pol, &Apparatus::ideal())?;
    Ok(WidthOptimum {
        visibility,
        fwhm_ratio: (-x).exp(),
    })
}
