//! Coherent-pulse visibility maps.

use std::f64::consts::FRAC_PI_2;

use hom_core::coherent::{visibility, visibility_ratio_map, CoherentPair};
use hom_core::polarization::cos_phi;
use hom_core::spectral::{overlap_magnitude, thz_to_angular};
use serde::{Deserialize, Serialize};

use super::{grid_csv, par_map};
use crate::config::header;
use crate::error::{invalid, numeric, Result};
use crate::literals::{ApparatusLiteral, Axis, PolarizationLiteral, ProfileLiteral, ShapeName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoherentKind {
    /// `x` = mean photon number of both pulses, `y` = polarization mismatch.
    MuPhi,
    /// `x` = arm B's `width_thz`, `y` = arm B's center offset in THz.
    Spectral,
    /// `x` = `mu_a / mu_b`, `y` = `T / R`.
    Ratio,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MuPhiSection {
    pub mu: Axis,
    pub phi: Axis,
    /// Arm B's width parameter over arm A's.
    pub width_ratio: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectralSection {
    pub mu_a: f64,
    pub mu_b: f64,
    pub phi: f64,
    pub shape_b: ShapeName,
    pub width_thz: Axis,
    pub offset_thz: Axis,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatioSection {
    pub mu_b: f64,
    pub mu_ratio: Axis,
    pub split_ratio: Axis,
    pub pol_b: PolarizationLiteral,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_b: Option<ProfileLiteral>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoherentConfig {
    pub kind: CoherentKind,
    pub grid: usize,
    pub pol_a: PolarizationLiteral,
    pub apparatus: ApparatusLiteral,
    pub profile_a: ProfileLiteral,
    pub mu_phi: MuPhiSection,
    pub spectral: SpectralSection,
    pub ratio: RatioSection,
}

impl Default for MuPhiSection {
    fn default() -> Self {
        MuPhiSection {
            mu: Axis::log(0.01, 10.0),
            phi: Axis::linear(0.0, FRAC_PI_2),
            width_ratio: 1.0,
        }
    }
}

impl Default for SpectralSection {
    fn default() -> Self {
        SpectralSection {
            mu_a: 1.0,
            mu_b: 1.0,
            phi: 0.0,
            shape_b: ShapeName::Gaussian,
            width_thz: Axis::log(0.05, 5.0),
            offset_thz: Axis::linear(-1.0, 1.0),
        }
    }
}

impl Default for RatioSection {
    fn default() -> Self {
        RatioSection {
            mu_b: 1.0,
            mu_ratio: Axis::log(0.1, 10.0),
            split_ratio: Axis::log(0.1, 10.0),
            pol_b: PolarizationLiteral::default(),
            profile_b: None,
        }
    }
}

impl Default for CoherentConfig {
    fn default() -> Self {
        CoherentConfig {
            kind: CoherentKind::MuPhi,
            grid: 61,
            pol_a: PolarizationLiteral::default(),
            apparatus: ApparatusLiteral::default(),
            profile_a: ProfileLiteral::thz(ShapeName::Gaussian, 193.55, 0.5),
            mu_phi: MuPhiSection::default(),
            spectral: SpectralSection::default(),
            ratio: RatioSection::default(),
        }
    }
}

pub fn run(cfg: CoherentConfig) -> Result<String> {
    let spec_a = cfg.profile_a.resolve("profile_a")?;
    let pol_a = cfg.pol_a.resolve("pol_a")?;
    let app = cfg.apparatus.resolve("apparatus")?;
    let n = cfg.grid;
    let pair = |mu_a, mu_b, pol_b, spec_b| CoherentPair {
        mu_a,
        mu_b,
        pol_a,
        pol_b,
        spec_a,
        spec_b,
    };

    let (xs, ys, values) = match cfg.kind {
        CoherentKind::MuPhi => {
            let s = &cfg.mu_phi;
            let mus = s.mu.points(n, "mu_phi.mu")?;
            let phis = s.phi.points(n, "mu_phi.phi")?;
            let mut b = cfg.profile_a.clone();
            b.width_thz = b.width_thz.map(|w| w * s.width_ratio);
            b.fwhm_nm = b.fwhm_nm.map(|w| w * s.width_ratio);
            let spec_b = b.resolve("mu_phi.width_ratio")?;
            let values = par_map(&mus, |&mu| {
                phis.iter()
                    .map(|&phi| {
                        visibility(&pair(mu, mu, pol_a.rotate(phi), spec_b), &app)
                            .map_err(|e| numeric(&format!("mu={mu} phi={phi}"), e))
                    })
                    .collect()
            })?;
            (mus, phis, values)
        }
        CoherentKind::Spectral => {
            let s = &cfg.spectral;
            let widths = s.width_thz.points(n, "spectral.width_thz")?;
            let offsets = s.offset_thz.points(n, "spectral.offset_thz")?;
            let center_thz = spec_a.center / thz_to_angular(1.0);
            let mut b = ProfileLiteral::thz(s.shape_b, center_thz, 1.0);
            b.delay_ps = cfg.profile_a.delay_ps;
            // validate the section's scalars once, before the sweep
            pair(s.mu_a, s.mu_b, pol_a, b.resolve("spectral")?)
                .validate()
                .map_err(|e| invalid("spectral", e))?;
            let values = par_map(&widths, |&w| {
                offsets
                    .iter()
                    .map(|&off| {
                        let mut lit = b.clone();
                        lit.width_thz = Some(w);
                        lit.center_thz = Some(center_thz + off);
                        let spec_b = lit.resolve("spectral")?;
                        visibility(&pair(s.mu_a, s.mu_b, pol_a.rotate(s.phi), spec_b), &app)
                            .map_err(|e| numeric(&format!("width_thz={w} offset_thz={off}"), e))
                    })
                    .collect()
            })?;
            (widths, offsets, values)
        }
        CoherentKind::Ratio => {
            let s = &cfg.ratio;
            let qs = s.mu_ratio.points(n, "ratio.mu_ratio")?;
            let rs = s.split_ratio.points(n, "ratio.split_ratio")?;
            let pol_b = s.pol_b.resolve("ratio.pol_b")?;
            let spec_b = match &s.profile_b {
                Some(p) => p.resolve("ratio.profile_b")?,
                None => spec_a,
            };
            let c = cos_phi(&pol_a, &pol_b)
                * overlap_magnitude(&spec_a, &spec_b.with_delay(spec_a.delay)).map_err(|e| numeric("overlap", e))?;
            let values = par_map(&qs, |&q| {
                visibility_ratio_map(s.mu_b, &[q], &rs, c, &pol_a, &pol_b, &app)
                    .map(|m| m.values)
                    .map_err(|e| match e {
                        hom_core::Error::InvalidParameter { .. } => invalid("ratio", e),
                        _ => numeric(&format!("mu_ratio={q}"), e),
                    })
            })?;
            (qs, rs, values)
        }
    };
    Ok(header("coherent", &cfg)? + &grid_csv(&xs, &ys, &values, "visibility"))
}
