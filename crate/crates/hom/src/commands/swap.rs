//! Entanglement-swapping fidelity sweeps.

use std::f64::consts::FRAC_PI_2;

use hom_core::swap::{
    detuned_bandwidth_sweep, fidelity_from_gridded, separable_fidelity, JointSpectrum, SwapScenario,
};
use serde::{Deserialize, Serialize};

use super::{grid_csv, par_map, row};
use crate::config::header;
use crate::error::{invalid, numeric, Result};
use crate::literals::{Axis, JsaLiteral, PmfLiteral, PumpLiteral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwapKind {
    /// `x` = pump width of source CD, `y` = polarization mismatch.
    Pump,
    /// Separable Gaussian fidelity against B's width, per detuning.
    Bandwidth,
    /// `x` = polarization mismatch, `y` = spectral mismatch angle.
    Separable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PumpSection {
    pub source_ab: JsaLiteral,
    /// Source CD; its pump width is replaced by each `pump_sigma`.
    pub source_cd: JsaLiteral,
    pub pump_sigma: Axis,
    pub phi: Axis,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandwidthSection {
    pub detunings: Vec<f64>,
    pub sigma_c: f64,
    pub sigma_b: Axis,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeparableSection {
    pub phi: Axis,
    pub theta: Axis,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwapConfig {
    pub kind: SwapKind,
    pub grid: usize,
    pub pump: PumpSection,
    pub bandwidth: BandwidthSection,
    pub separable: SeparableSection,
}

impl Default for PumpSection {
    fn default() -> Self {
        // sqrt(2) pump width against unit phase matching with the default
        // slopes makes the source factorable
        let pmf = PmfLiteral {
            sigma: 1.0,
            slope_s: 1.0,
            slope_i: -0.5,
        };
        let source = JsaLiteral::gaussian(
            PumpLiteral {
                center: 20.0,
                sigma: std::f64::consts::SQRT_2,
            },
            pmf,
        );
        PumpSection {
            source_ab: source.clone(),
            source_cd: source,
            pump_sigma: Axis::log(0.1, 10.0),
            phi: Axis::linear(0.0, FRAC_PI_2),
        }
    }
}

impl Default for BandwidthSection {
    fn default() -> Self {
        BandwidthSection {
            detunings: vec![0.0, 0.5, 1.0, 1.5],
            sigma_c: 1.0,
            sigma_b: Axis::log(0.1, 10.0),
        }
    }
}

impl Default for SeparableSection {
    fn default() -> Self {
        SeparableSection {
            phi: Axis::linear(0.0, FRAC_PI_2),
            theta: Axis::linear(0.0, FRAC_PI_2),
        }
    }
}

impl Default for SwapConfig {
    fn default() -> Self {
        SwapConfig {
            kind: SwapKind::Pump,
            grid: 61,
            pump: PumpSection::default(),
            bandwidth: BandwidthSection::default(),
            separable: SeparableSection::default(),
        }
    }
}

pub fn run(cfg: SwapConfig) -> Result<String> {
    let n = cfg.grid;
    match cfg.kind {
        SwapKind::Pump => {
            let s = &cfg.pump;
            let sigmas = s.pump_sigma.points(n, "pump.pump_sigma")?;
            let phis = s.phi.points(n, "pump.phi")?;
            let source_ab = s.source_ab.resolve("pump.source_ab")?;
            let source_cd = s.source_cd.resolve("pump.source_cd")?;
            let grid = match (s.source_ab.grid("pump.source_ab")?, s.source_cd.grid("pump.source_cd")?) {
                (Some(a), Some(b)) if a != b => {
                    return Err(invalid("pump.source_cd.grid", "both sources must share one sampling grid"))
                }
                (a, b) => a.or(b).unwrap_or_default(),
            };
            let JointSpectrum::Gaussian { pump, phase_matching } = source_cd else {
                return Err(invalid("pump.source_cd", "the swept source needs pump and pmf"));
            };
            let values = par_map(&sigmas, |&sigma| {
                let mut p = pump;
                p.sigma = sigma;
                let scenario = SwapScenario {
                    source_ab,
                    source_cd: JointSpectrum::Gaussian { pump: p, phase_matching },
                    phi: 0.0,
                    grid,
                };
                let ctx = format!("pump_sigma={sigma}");
                scenario.source_cd.validate().map_err(|e| invalid("pump.pump_sigma", e))?;
                let (f, g) = scenario.sample().map_err(|e| numeric(&ctx, e))?;
                // the contraction is the expensive part and the mismatch
                // only scales it by cos^2
                let aligned = fidelity_from_gridded(&f, &g, 0.0).map_err(|e| numeric(&ctx, e))?;
                Ok(phis.iter().map(|phi| aligned * phi.cos().powi(2)).collect())
            })?;
            Ok(header("swap", &cfg)? + &grid_csv(&sigmas, &phis, &values, "fidelity"))
        }
        SwapKind::Bandwidth => {
            let s = &cfg.bandwidth;
            let sigma_b = s.sigma_b.points(n, "bandwidth.sigma_b")?;
            let sweep = detuned_bandwidth_sweep(&s.detunings, &sigma_b, s.sigma_c).map_err(|e| invalid("bandwidth", e))?;
            let mut out = header("swap", &cfg)? + "detuning,sigma_b,fidelity\n";
            for (d, curve) in sweep.detunings.iter().zip(&sweep.fidelity) {
                for (sb, f) in sweep.sigma_b.iter().zip(curve) {
                    out.push_str(&row(&[*d, *sb, *f]));
                }
            }
            Ok(out)
        }
        SwapKind::Separable => {
            let s = &cfg.separable;
            let phis = s.phi.points(n, "separable.phi")?;
            let thetas = s.theta.points(n, "separable.theta")?;
            let values: Vec<Vec<f64>> = phis
                .iter()
                .map(|&phi| thetas.iter().map(|&t| separable_fidelity(phi, t)).collect())
                .collect();
            Ok(header("swap", &cfg)? + &grid_csv(&phis, &thetas, &values, "fidelity"))
        }
    }
}
