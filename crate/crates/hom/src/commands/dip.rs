//! Coincidence against relative delay.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use hom_core::fock::{coincidence, FockPair};
use serde::{Deserialize, Serialize};

use super::{par_map, row};
use crate::config::header;
use crate::error::{invalid, numeric, Result};
use crate::literals::{ApparatusLiteral, Axis, PolarizationLiteral, ProfileLiteral, ShapeName};

/// Arm B carries arm A's polarization rotated by each `phi` (radians).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DipConfig {
    pub grid: usize,
    pub photons: Vec<[u32; 2]>,
    pub phi: Vec<f64>,
    pub tau_ps: Axis,
    pub pol_a: PolarizationLiteral,
    pub apparatus: ApparatusLiteral,
    pub profile_a: ProfileLiteral,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_b: Option<ProfileLiteral>,
}

impl Default for DipConfig {
    fn default() -> Self {
        DipConfig {
            grid: 201,
            photons: vec![[1, 1], [2, 2], [3, 3]],
            phi: vec![0.0, FRAC_PI_4, FRAC_PI_2],
            tau_ps: Axis::linear(-3.0, 3.0),
            pol_a: PolarizationLiteral::default(),
            apparatus: ApparatusLiteral::default(),
            profile_a: ProfileLiteral::thz(ShapeName::Gaussian, 193.55, 0.5),
            profile_b: None,
        }
    }
}

pub fn run(cfg: DipConfig) -> Result<String> {
    let taus = cfg.tau_ps.points(cfg.grid, "tau_ps")?;
    let spec_a = cfg.profile_a.resolve("profile_a")?;
    let spec_b = match &cfg.profile_b {
        Some(p) => p.resolve("profile_b")?,
        None => spec_a,
    };
    let pol_a = cfg.pol_a.resolve("pol_a")?;
    let app = cfg.apparatus.resolve("apparatus")?;
    if cfg.photons.is_empty() || cfg.phi.is_empty() {
        return Err(invalid("photons/phi", "need at least one entry each"));
    }
    if let Some(phi) = cfg.phi.iter().find(|p| !p.is_finite()) {
        return Err(invalid("phi", format!("not finite: {phi}")));
    }

    let mut out = header("dip", &cfg)?;
    for &[m, n] in &cfg.photons {
        for &phi in &cfg.phi {
            let pair = FockPair {
                m,
                n,
                pol_a,
                pol_b: pol_a.rotate(phi),
                spec_a,
                spec_b,
            };
            let curve = par_map(&taus, |&tau| {
                let mut p = pair;
                p.spec_b = spec_b.with_delay(spec_b.delay + tau);
                coincidence(&p, &app).map_err(|e| numeric(&format!("m={m} n={n} phi={phi} tau={tau}"), e))
            })?;
            out.push_str(&format!("\n# m={m} n={n} phi={phi}\ntau_ps,p_co\n"));
            for (tau, p) in taus.iter().zip(curve) {
                out.push_str(&row(&[*tau, p]));
            }
        }
    }
    Ok(out)
}
