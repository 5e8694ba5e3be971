//! Channel contours, damped photon-number distributions and depolarized
//! coincidence curves.

use std::f64::consts::PI;

use hom_core::channels::{
    channel_visibility_contour, damp_number, mixed_coincidence, Channel, ChannelAxis, MixedSource, PhotonNumber,
    Source,
};
use serde::{Deserialize, Serialize};

use super::{grid_csv, par_map, row};
use crate::config::header;
use crate::error::{invalid, numeric, Result};
use crate::literals::{ApparatusLiteral, Axis, PolarizationLiteral, ProfileLiteral, ShapeName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    /// Visibility over arm A's (`x`) and arm B's (`y`) damping.
    Damping,
    Depolarizing,
    Broadening,
    /// Photon-number distribution of a damped Fock state.
    Distribution,
    /// Single-photon coincidence against arm B's polarization rotation.
    DepolarizingDip,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContourSection {
    pub photons: [u32; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Axis>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DistributionSection {
    pub photons: u32,
    pub gamma: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DipSection {
    pub p_depol: Vec<f64>,
    pub theta: Axis,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelsConfig {
    pub kind: ChannelKind,
    pub grid: usize,
    pub pol: PolarizationLiteral,
    pub apparatus: ApparatusLiteral,
    pub profile: ProfileLiteral,
    pub contour: ContourSection,
    pub distribution: DistributionSection,
    pub depolarizing_dip: DipSection,
}

impl Default for ContourSection {
    fn default() -> Self {
        ContourSection {
            photons: [2, 1],
            axis: None,
        }
    }
}

impl Default for DistributionSection {
    fn default() -> Self {
        DistributionSection {
            photons: 4,
            gamma: vec![0.1, 0.3, 0.5, 0.7],
        }
    }
}

impl Default for DipSection {
    fn default() -> Self {
        DipSection {
            p_depol: vec![0.0, 0.25, 0.5, 0.75],
            theta: Axis::linear(0.0, PI),
        }
    }
}

impl Default for ChannelsConfig {
    fn default() -> Self {
        ChannelsConfig {
            kind: ChannelKind::Damping,
            grid: 61,
            pol: PolarizationLiteral::default(),
            apparatus: ApparatusLiteral::default(),
            profile: ProfileLiteral::thz(ShapeName::Gaussian, 193.55, 0.5),
            contour: ContourSection::default(),
            distribution: DistributionSection::default(),
            depolarizing_dip: DipSection::default(),
        }
    }
}

fn default_axis(axis: ChannelAxis) -> Axis {
    match axis {
        ChannelAxis::Damping => Axis::linear(0.0, 0.95),
        ChannelAxis::Depolarizing => Axis::linear(0.0, 1.0),
        ChannelAxis::Broadening => Axis::log(0.25, 4.0),
    }
}

pub fn run(mut cfg: ChannelsConfig) -> Result<String> {
    let spec = cfg.profile.resolve("profile")?;
    let pol = cfg.pol.resolve("pol")?;
    let app = cfg.apparatus.resolve("apparatus")?;
    let fock = |n, pol| Source {
        number: PhotonNumber::Fock(n),
        pol,
        spec,
    };

    let axis = match cfg.kind {
        ChannelKind::Damping => ChannelAxis::Damping,
        ChannelKind::Depolarizing => ChannelAxis::Depolarizing,
        ChannelKind::Broadening => ChannelAxis::Broadening,
        ChannelKind::Distribution => return distribution(&cfg),
        ChannelKind::DepolarizingDip => {
            let s = &cfg.depolarizing_dip;
            let thetas = s.theta.points(cfg.grid, "depolarizing_dip.theta")?;
            let channels = s
                .p_depol
                .iter()
                .map(|&p| Channel::new(0.0, p, 1.0).map_err(|e| invalid("depolarizing_dip.p_depol", e)))
                .collect::<Result<Vec<_>>>()?;
            let arm_a = |ch: &Channel| MixedSource::pure(&fock(1, pol)).and_then(|s| s.through(ch));
            let mut out = header("channels", &cfg)? + "p_depol,theta,p_co\n";
            for (p, ch) in s.p_depol.iter().zip(&channels) {
                let a = arm_a(ch).map_err(|e| numeric("arm A", e))?;
                let curve = par_map(&thetas, |&t| {
                    let ctx = format!("p_depol={p} theta={t}");
                    let b = MixedSource::pure(&fock(1, pol.rotate(t)))
                        .and_then(|s| s.through(ch))
                        .map_err(|e| numeric(&ctx, e))?;
                    mixed_coincidence(&a, &b, &app).map_err(|e| numeric(&ctx, e))
                })?;
                for (t, v) in thetas.iter().zip(curve) {
                    out.push_str(&row(&[*p, *t, v]));
                }
            }
            return Ok(out);
        }
    };

    let range = *cfg.contour.axis.get_or_insert(default_axis(axis));
    let values = range.points(cfg.grid, "contour.axis")?;
    for &v in &values {
        axis.channel(v).map_err(|e| invalid("contour.axis", e))?;
    }
    let [m, n] = cfg.contour.photons;
    let (a, b) = (fock(m, pol), fock(n, pol));
    let columns = par_map(&values, |&va| {
        channel_visibility_contour(&a, &b, axis, &[va], &values, &app)
            .map(|g| g.values)
            .map_err(|e| numeric(&format!("arm A parameter {va}"), e))
    })?;
    Ok(header("channels", &cfg)? + &grid_csv(&values, &values, &columns, "visibility"))
}

fn distribution(cfg: &ChannelsConfig) -> Result<String> {
    let s = &cfg.distribution;
    let mut out = header("channels", cfg)? + "gamma,k,initial,damped\n";
    for &g in &s.gamma {
        let damped = damp_number(s.photons, g).map_err(|e| invalid("distribution.gamma", e))?;
        for (k, p) in damped.iter().enumerate() {
            let initial = if k as u32 == s.photons { 1.0 } else { 0.0 };
            out.push_str(&row(&[g, k as f64, initial, *p]));
        }
    }
    Ok(out)
}
