//! Noisy channels acting on each arm before the beam splitter.
//!
//! A channel applies amplitude damping to the photon number, then a
//! depolarizing map to the polarization label shared by every photon of
//! the wavepacket, then spectral broadening. The result is kept as an
//! explicit ensemble of pure branches: photons in one wavepacket share a
//! label, so the arm's state is not fixed by its 2x2 density matrix alone
//! once more than one photon is present.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check, check_unit};
use crate::fock::{coincidence_from_overlap, settle, Apparatus};
use crate::polarization::{cos_phi, eigendecompose, pauli, Polarization, PolarizationDensity};
use crate::special::{binomial, poisson_weights};
use crate::spectral::{overlap_magnitude, SpectralProfile};
use crate::{Complex64, Error, Result};

/// Damping probability `gamma`, depolarizing probability `p_depol` and
/// spectral broadening factor `xi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Channel {
    pub gamma: f64,
    pub p_depol: f64,
    pub xi: f64,
}

impl Channel {
    pub const IDENTITY: Channel = Channel {
        gamma: 0.0,
        p_depol: 0.0,
        xi: 1.0,
    };

    pub fn new(gamma: f64, p_depol: f64, xi: f64) -> Result<Self> {
        let ch = Channel { gamma, p_depol, xi };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("gamma", self.gamma)?;
        check_unit("p_depol", self.p_depol)?;
        check("xi", self.xi, self.xi > 0.0)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhotonNumber {
    Fock(u32),
    /// Phase-randomized coherent state with this mean.
    Coherent(f64),
}

/// A pure single-mode source.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Source {
    pub number: PhotonNumber,
    pub pol: Polarization,
    pub spec: SpectralProfile,
}

/// One pure component of a mixed arm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub weight: f64,
    pub photons: u32,
    pub pol: Polarization,
}

/// Ensemble of pure branches sharing one spectral amplitude.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedSource {
    pub branches: Vec<Branch>,
    pub spec: SpectralProfile,
}

/// Tail mass dropped when a coherent photon number is truncated.
pub const POISSON_TAIL: f64 = 1e-16;

/// Surviving-photon distribution after damping `n` photons; index is the
/// number of survivors.
pub fn damp_number(n: u32, gamma: f64) -> Result<Vec<f64>> {
    check_unit("gamma", gamma)?;
    let keep = 1.0 - gamma;
    Ok((0..=n)
        .map(|k| binomial(n, k) * keep.powi(k as i32) * gamma.powi((n - k) as i32))
        .collect())
}

/// Damping applied to a photon-number distribution.
pub fn damp_distribution(dist: &[f64], gamma: f64) -> Result<Vec<f64>> {
    check_unit("gamma", gamma)?;
    let mut out = alloc::vec![0.0; dist.len()];
    for (n, &p) in dist.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for (k, q) in damp_number(n as u32, gamma)?.into_iter().enumerate() {
            out[k] += p * q;
        }
    }
    Ok(out)
}

fn pauli_branches(pol: &Polarization, p: f64) -> Vec<(f64, Polarization)> {
    let mut out = alloc::vec![(1.0 - p, *pol)];
    if p > 0.0 {
        for s in pauli() {
            out.push((p / 3.0, pol.apply(&s)));
        }
    }
    out.retain(|(w, _)| *w > 0.0);
    out
}

impl MixedSource {
    pub fn pure(source: &Source) -> Result<Self> {
        source.spec.validate()?;
        let numbers = match source.number {
            PhotonNumber::Fock(n) => {
                let mut v = alloc::vec![0.0; n as usize + 1];
                v[n as usize] = 1.0;
                v
            }
            PhotonNumber::Coherent(mu) => {
                check("mu", mu, mu >= 0.0)?;
                normalized_poisson(mu)
            }
        };
        Ok(Self::from_parts(&numbers, &[(1.0, source.pol)], source.spec))
    }

    /// Product of a photon-number distribution and a polarization ensemble.
    pub fn from_parts(numbers: &[f64], pols: &[(f64, Polarization)], spec: SpectralProfile) -> Self {
        let mut branches = Vec::new();
        for (n, &pn) in numbers.iter().enumerate() {
            for &(pw, pol) in pols {
                if pn * pw > 0.0 {
                    branches.push(Branch {
                        weight: pn * pw,
                        photons: n as u32,
                        pol,
                    });
                }
            }
        }
        MixedSource { branches, spec }
    }

    /// Arm whose polarization is known only through `rho`; its
    /// eigen-decomposition is taken as the ensemble.
    pub fn from_density(numbers: &[f64], rho: &PolarizationDensity, spec: SpectralProfile) -> Result<Self> {
        rho.validate()?;
        Ok(Self::from_parts(numbers, &eigendecompose(rho), spec))
    }

    /// Photon-number distribution, indexed by photon number.
    pub fn numbers(&self) -> Vec<f64> {
        let top = self.branches.iter().map(|b| b.photons).max().unwrap_or(0);
        let mut out = alloc::vec![0.0; top as usize + 1];
        for b in &self.branches {
            out[b.photons as usize] += b.weight;
        }
        out
    }

    /// Polarization density averaged over branches.
    pub fn density(&self) -> PolarizationDensity {
        let zero = Complex64::new(0.0, 0.0);
        let mut m = [[zero; 2]; 2];
        for b in &self.branches {
            let d = b.pol.density();
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] += d.m[i][j] * b.weight;
                }
            }
        }
        PolarizationDensity { m }
    }

    pub fn total_weight(&self) -> f64 {
        self.branches.iter().map(|b| b.weight).sum()
    }

    /// Convex combination `(1 - w) self + w other`; spectra must agree.
    pub fn mix(&self, other: &MixedSource, w: f64) -> Result<MixedSource> {
        check_unit("mixing weight", w)?;
        if self.spec != other.spec {
            return Err(Error::InvalidParameter {
                name: "mixed spectra",
                value: other.spec.width,
            });
        }
        let mut branches: Vec<Branch> = self
            .branches
            .iter()
            .map(|b| Branch {
                weight: b.weight * (1.0 - w),
                ..*b
            })
            .collect();
        branches.extend(other.branches.iter().map(|b| Branch {
            weight: b.weight * w,
            ..*b
        }));
        branches.retain(|b| b.weight > 0.0);
        Ok(MixedSource {
            branches,
            spec: self.spec,
        })
    }

    /// This ensemble after a channel.
    pub fn through(&self, ch: &Channel) -> Result<MixedSource> {
        ch.validate()?;
        let mut branches = Vec::new();
        for b in &self.branches {
            let survivors = damp_number(b.photons, ch.gamma)?;
            let pols = pauli_branches(&b.pol, ch.p_depol);
            for (k, pk) in survivors.iter().enumerate() {
                for (pw, pol) in &pols {
                    let weight = b.weight * pk * pw;
                    if weight > 0.0 {
                        branches.push(Branch {
                            weight,
                            photons: k as u32,
                            pol: *pol,
                        });
                    }
                }
            }
        }
        Ok(MixedSource {
            branches,
            spec: self.spec.with_broadening(self.spec.broadening * ch.xi),
        })
    }
}

fn normalized_poisson(mu: f64) -> Vec<f64> {
    let mut w = poisson_weights(mu, POISSON_TAIL);
    let total: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= total;
    }
    w
}

/// A pure source sent through a channel.
pub fn apply_channel(source: &Source, ch: &Channel) -> Result<MixedSource> {
    MixedSource::pure(source)?.through(ch)
}

/// Coincidence probability for two mixed arms, with `spec_overlap` the
/// spectral overlap magnitude to use.
pub fn mixed_coincidence_with_overlap(a: &MixedSource, b: &MixedSource, spec_overlap: f64, app: &Apparatus) -> f64 {
    let mut acc = 0.0;
    for x in &a.branches {
        for y in &b.branches {
            let c = cos_phi(&x.pol, &y.pol) * spec_overlap;
            acc += x.weight * y.weight * coincidence_from_overlap(x.photons, y.photons, c, &x.pol, &y.pol, app);
        }
    }
    acc
}

/// Coincidence probability for two mixed arms.
pub fn mixed_coincidence(a: &MixedSource, b: &MixedSource, app: &Apparatus) -> Result<f64> {
    app.validate()?;
    let c = overlap_magnitude(&a.spec, &b.spec)?;
    settle(mixed_coincidence_with_overlap(a, b, c, app))
}

/// Visibility for two mixed arms: zero-overlap baseline against aligned delays.
pub fn mixed_visibility(a: &MixedSource, b: &MixedSource, app: &Apparatus) -> Result<f64> {
    app.validate()?;
    let aligned = a.spec;
    let other = b.spec.with_delay(aligned.delay);
    let c = overlap_magnitude(&aligned, &other)?;
    let far = mixed_coincidence_with_overlap(a, b, 0.0, app);
    if far == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok((far - mixed_coincidence_with_overlap(a, b, c, app)) / far)
}

/// Which channel parameter a contour sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelAxis {
    Damping,
    Depolarizing,
    Broadening,
}

impl ChannelAxis {
    pub fn channel(self, value: f64) -> Result<Channel> {
        match self {
            ChannelAxis::Damping => Channel::new(value, 0.0, 1.0),
            ChannelAxis::Depolarizing => Channel::new(0.0, value, 1.0),
            ChannelAxis::Broadening => Channel::new(0.0, 0.0, value),
        }
    }
}

/// Values on a rectangular grid, row-major over `rows x cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub rows: Vec<f64>,
    pub cols: Vec<f64>,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols.len() + col]
    }

    /// Row and column values at the largest entry; first wins on ties.
    pub fn argmax(&self) -> (f64, f64) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        let n = self.cols.len();
        (self.rows[best / n], self.cols[best % n])
    }
}

/// Visibility with arm A's channel parameter over `values_a` (rows) and
/// arm B's over `values_b` (columns).
pub fn channel_visibility_contour(
    a: &Source,
    b: &Source,
    axis: ChannelAxis,
    values_a: &[f64],
    values_b: &[f64],
    app: &Apparatus,
) -> Result<Grid> {
    let pure_a = MixedSource::pure(a)?;
    let pure_b = MixedSource::pure(b)?;
    let arms_b = values_b
        .iter()
        .map(|&v| pure_b.through(&axis.channel(v)?))
        .collect::<Result<Vec<_>>>()?;
    let mut values = Vec::with_capacity(values_a.len() * values_b.len());
    for &va in values_a {
        let arm_a = pure_a.through(&axis.channel(va)?)?;
        for arm_b in &arms_b {
            values.push(mixed_visibility(&arm_a, arm_b, app)?);
        }
    }
    Ok(Grid {
        rows: values_a.to_vec(),
        cols: values_b.to_vec(),
        values,
    })
}
