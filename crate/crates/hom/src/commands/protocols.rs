//! Scalar protocol metrics as a JSON report.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use hom_core::protocols::{
    classifier_coincidence, classifier_floor, conclusive_probability, fusion_fidelity, key_rate_bound,
    mdi_outcome_table, noon_sensitivity, noon_signal, spectral_error, transverse_angle, BasisState, ErrorBudget,
    KeyRateInputs, MdiScenario, TransverseProfile,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{invalid, numeric, CliError, Result};

/// Bob's polarization rotation `phi` and spectral mismatch `theta`, radians.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MdiSection {
    pub phi: f64,
    pub theta: f64,
}

/// Error contributions other than the spectral one, which follows from
/// `mdi.theta`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ErrorSection {
    pub background: f64,
    pub asymmetry: f64,
    pub polarization: f64,
    pub temporal: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KeyRateSection {
    pub single_photon_probability: f64,
    pub single_photon_yield: f64,
    pub single_photon_error: f64,
    pub gain: f64,
    pub error: f64,
    pub correction_inefficiency: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoonSection {
    pub max_photons: u32,
    pub theta: f64,
    pub phase: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransverseLiteral {
    pub sigma_x: f64,
    pub sigma_y: f64,
    #[serde(default)]
    pub x0: f64,
    #[serde(default)]
    pub y0: f64,
}

/// The transverse mismatch is `transverse` unless both profiles are given.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierSection {
    pub theta: f64,
    pub transverse: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_a: Option<TransverseLiteral>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_b: Option<TransverseLiteral>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FusionSection {
    pub theta: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolsConfig {
    pub mdi: MdiSection,
    pub errors: ErrorSection,
    pub key_rate: KeyRateSection,
    pub noon: NoonSection,
    pub classifier: ClassifierSection,
    pub fusion: FusionSection,
}

impl Default for MdiSection {
    fn default() -> Self {
        MdiSection { phi: 0.0, theta: 0.0 }
    }
}

impl Default for KeyRateSection {
    fn default() -> Self {
        KeyRateSection {
            single_photon_probability: 1.0,
            single_photon_yield: 0.1,
            single_photon_error: 0.02,
            gain: 0.1,
            error: 0.02,
            correction_inefficiency: KeyRateInputs::DEFAULT_INEFFICIENCY,
        }
    }
}

impl Default for NoonSection {
    fn default() -> Self {
        NoonSection {
            max_photons: 5,
            theta: 0.0,
            phase: vec![0.0, FRAC_PI_4, FRAC_PI_2],
        }
    }
}

impl Default for ClassifierSection {
    fn default() -> Self {
        ClassifierSection {
            theta: 0.0,
            transverse: 0.0,
            profile_a: None,
            profile_b: None,
        }
    }
}

impl Default for FusionSection {
    fn default() -> Self {
        FusionSection {
            theta: vec![0.0, FRAC_PI_4, FRAC_PI_2],
        }
    }
}

const PAIRS: [(BasisState, BasisState); 8] = {
    use BasisState::*;
    [(H, H), (H, V), (V, H), (V, V), (D, D), (D, A), (A, D), (A, A)]
};

fn in_quarter(field: &str, angle: f64) -> Result<f64> {
    if (0.0..=FRAC_PI_2).contains(&angle) {
        Ok(angle)
    } else {
        Err(invalid(field, format!("angle {angle} outside [0, pi/2]")))
    }
}

pub fn run(cfg: ProtocolsConfig) -> Result<String> {
    let MdiSection { phi, theta } = cfg.mdi;
    let mut rows = Vec::new();
    for (alice, bob) in PAIRS {
        let s = MdiScenario::new(alice, bob, phi, theta).map_err(|e| invalid("mdi", e))?;
        let t = mdi_outcome_table(&s);
        rows.push(json!({
            "input": format!("{}{}", alice.label(), bob.label()),
            "m12": t.m12,
            "m34": t.m34,
            "m23": t.m23,
            "m14": t.m14,
        }));
    }

    let e = &cfg.errors;
    let budget = ErrorBudget {
        background: e.background,
        asymmetry: e.asymmetry,
        polarization: e.polarization,
        temporal: e.temporal,
        spectral: spectral_error(theta),
    };
    budget.validate().map_err(|err| invalid("errors", err))?;
    let total = budget.total();

    let k = &cfg.key_rate;
    let rate = key_rate_bound(&KeyRateInputs {
        single_photon_probability: k.single_photon_probability,
        single_photon_yield: k.single_photon_yield,
        single_photon_error: k.single_photon_error,
        gain: k.gain,
        error: k.error,
        correction_inefficiency: k.correction_inefficiency,
    })
    .map_err(|err| invalid("key_rate", err))?;

    let noon = &cfg.noon;
    if noon.max_photons == 0 {
        return Err(invalid("noon.max_photons", "need at least one photon"));
    }
    let mut probes = Vec::new();
    for n in 1..=noon.max_photons {
        let signal = noon
            .phase
            .iter()
            .map(|&p| noon_signal(n, noon.theta, p).map_err(|err| numeric("noon", err)))
            .collect::<Result<Vec<_>>>()?;
        let sensitivity = match noon_sensitivity(n, noon.theta) {
            Ok(v) => Value::from(v),
            Err(hom_core::Error::Singular { .. }) => Value::Null,
            Err(err) => return Err(numeric("noon", err)),
        };
        probes.push(json!({ "photons": n, "signal": signal, "sensitivity": sensitivity }));
    }

    let c = &cfg.classifier;
    let c_theta = in_quarter("classifier.theta", c.theta)?;
    let transverse = match (c.profile_a, c.profile_b) {
        (Some(a), Some(b)) => {
            let lit = |t: TransverseLiteral| TransverseProfile {
                sigma_x: t.sigma_x,
                sigma_y: t.sigma_y,
                x0: t.x0,
                y0: t.y0,
            };
            transverse_angle(&lit(a), &lit(b)).map_err(|err| invalid("classifier.profile", err))?
        }
        (None, None) => in_quarter("classifier.transverse", c.transverse)?,
        _ => return Err(invalid("classifier", "give both profile_a and profile_b, or neither")),
    };

    let fusion = cfg
        .fusion
        .theta
        .iter()
        .map(|&t| {
            in_quarter("fusion.theta", t).map(|t| json!({ "theta": t, "fidelity": fusion_fidelity(t) }))
        })
        .collect::<Result<Vec<_>>>()?;

    let report = json!({
        "command": "protocols",
        "config": serde_json::to_value(&cfg).map_err(|err| CliError::Config(err.to_string()))?,
        "mdi": {
            "phi": phi,
            "theta": theta,
            "outcomes": rows,
            "conclusive_probability": conclusive_probability(phi, theta),
            "spectral_error": budget.spectral,
        },
        "error_budget": { "total": total.value, "useless": total.useless },
        "key_rate": rate,
        "noon": probes,
        "classifier": {
            "theta": c_theta,
            "transverse": transverse,
            "coincidence": classifier_coincidence(c_theta, transverse),
            "floor": classifier_floor(c_theta),
        },
        "fusion": fusion,
    });
    let mut text = serde_json::to_string_pretty(&report).map_err(|err| CliError::Config(err.to_string()))?;
    text.push('\n');
    Ok(text)
}
