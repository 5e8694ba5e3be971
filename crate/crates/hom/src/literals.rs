//! Config literals for profiles, polarizations, detectors, channels, joint
//! spectra and sweep axes, with conversion into validated core types.

use hom_core::channels::Channel;
use hom_core::fock::{Apparatus, BeamSplitter};
use hom_core::polarization::{named, Detector, Polarization};
use hom_core::spectral::{
    thz_to_angular, wavelength_to_angular, wavelength_width_to_angular, Shape, SpectralProfile,
    REFERENCE_CENTER_THZ, SPEED_OF_LIGHT,
};
use hom_core::swap::{GridSpec, JointSpectrum, PhaseMatching, Pump};
use hom_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    Gaussian,
    Sinc,
    #[serde(alias = "lorentz")]
    Lorentzian,
    Sech,
}

impl From<ShapeName> for Shape {
    fn from(s: ShapeName) -> Shape {
        match s {
            ShapeName::Gaussian => Shape::Gaussian,
            ShapeName::Sinc => Shape::Sinc,
            ShapeName::Lorentzian => Shape::Lorentzian,
            ShapeName::Sech => Shape::Sech,
        }
    }
}

/// `width_thz` is the shape parameter in ordinary frequency (`2 pi` times it
/// in rad/ps); for sinc the duration is `1 / width_thz` ps. `fwhm_nm` is the
/// intensity FWHM in wavelength at the profile's center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileLiteral {
    pub shape: ShapeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_thz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width_thz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fwhm_nm: Option<f64>,
    #[serde(default)]
    pub delay_ps: f64,
    #[serde(default = "unit")]
    pub broadening: f64,
}

fn unit() -> f64 {
    1.0
}

impl ProfileLiteral {
    pub fn thz(shape: ShapeName, center_thz: f64, width_thz: f64) -> Self {
        ProfileLiteral {
            shape,
            center_thz: Some(center_thz),
            center_nm: None,
            width_thz: Some(width_thz),
            fwhm_nm: None,
            delay_ps: 0.0,
            broadening: 1.0,
        }
    }

    pub fn nm(shape: ShapeName, center_thz: f64, fwhm_nm: f64) -> Self {
        ProfileLiteral {
            fwhm_nm: Some(fwhm_nm),
            width_thz: None,
            ..Self::thz(shape, center_thz, 1.0)
        }
    }

    /// Center wavelength in nm.
    pub fn wavelength(&self, field: &str) -> Result<f64> {
        match (self.center_thz, self.center_nm) {
            (Some(_), Some(_)) => Err(invalid(field, "give only one of center_thz and center_nm")),
            (_, Some(nm)) => positive(&format!("{field}.center_nm"), nm),
            (thz, None) => {
                let thz = positive(&format!("{field}.center_thz"), thz.unwrap_or(REFERENCE_CENTER_THZ))?;
                Ok(SPEED_OF_LIGHT / thz)
            }
        }
    }

    pub fn resolve(&self, field: &str) -> Result<SpectralProfile> {
        let lambda = self.wavelength(field)?;
        let center = wavelength_to_angular(lambda);
        let shape = Shape::from(self.shape);
        let profile = match (self.width_thz, self.fwhm_nm) {
            (Some(_), Some(_)) => return Err(invalid(field, "give only one of width_thz and fwhm_nm")),
            (None, None) => return Err(invalid(field, "missing width_thz or fwhm_nm")),
            (Some(w), None) => {
                let w = positive(&format!("{field}.width_thz"), w)?;
                let width = match shape {
                    Shape::Sinc => 1.0 / w,
                    _ => thz_to_angular(w),
                };
                SpectralProfile::new(shape, center, width)
            }
            (None, Some(dl)) => {
                let dl = positive(&format!("{field}.fwhm_nm"), dl)?;
                SpectralProfile::from_fwhm(shape, center, wavelength_width_to_angular(lambda, dl))
            }
        }
        .map_err(|e| invalid(field, e))?;
        let profile = profile.with_delay(self.delay_ps).with_broadening(self.broadening);
        profile.validate().map_err(|e| invalid(field, e))?;
        Ok(profile)
    }
}

fn positive(field: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be positive, got {v}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolarizationLiteral {
    Named(String),
    Components {
        h_re: f64,
        #[serde(default)]
        h_im: f64,
        v_re: f64,
        #[serde(default)]
        v_im: f64,
    },
}

impl Default for PolarizationLiteral {
    fn default() -> Self {
        PolarizationLiteral::Named("H".into())
    }
}

impl PolarizationLiteral {
    pub fn resolve(&self, field: &str) -> Result<Polarization> {
        match self {
            PolarizationLiteral::Named(s) => named(s).map_err(|_| invalid(field, format!("unknown polarization {s:?}"))),
            PolarizationLiteral::Components { h_re, h_im, v_re, v_im } => {
                Polarization::new(Complex64::new(*h_re, *h_im), Complex64::new(*v_re, *v_im))
                    .map_err(|e| invalid(field, e))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorLiteral {
    pub eta_h: f64,
    pub eta_v: f64,
}

impl Default for DetectorLiteral {
    fn default() -> Self {
        DetectorLiteral { eta_h: 1.0, eta_v: 1.0 }
    }
}

impl DetectorLiteral {
    pub fn resolve(&self, field: &str) -> Result<Detector> {
        Detector::new(self.eta_h, self.eta_v).map_err(|e| invalid(field, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ApparatusLiteral {
    pub transmission: f64,
    pub detector_a: DetectorLiteral,
    pub detector_b: DetectorLiteral,
}

impl Default for ApparatusLiteral {
    fn default() -> Self {
        ApparatusLiteral {
            transmission: 0.5,
            detector_a: DetectorLiteral::default(),
            detector_b: DetectorLiteral::default(),
        }
    }
}

impl ApparatusLiteral {
    pub fn resolve(&self, field: &str) -> Result<Apparatus> {
        Ok(Apparatus {
            splitter: BeamSplitter::new(self.transmission).map_err(|e| invalid(&format!("{field}.transmission"), e))?,
            detector_a: self.detector_a.resolve(&format!("{field}.detector_a"))?,
            detector_b: self.detector_b.resolve(&format!("{field}.detector_b"))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelLiteral {
    pub gamma: f64,
    pub p_depol: f64,
    pub xi: f64,
}

impl Default for ChannelLiteral {
    fn default() -> Self {
        ChannelLiteral { gamma: 0.0, p_depol: 0.0, xi: 1.0 }
    }
}

impl ChannelLiteral {
    pub fn resolve(&self, field: &str) -> Result<Channel> {
        Channel::new(self.gamma, self.p_depol, self.xi).map_err(|e| invalid(field, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpLiteral {
    pub center: f64,
    pub sigma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfLiteral {
    pub sigma: f64,
    #[serde(default = "unit")]
    pub slope_s: f64,
    #[serde(default = "default_slope_i")]
    pub slope_i: f64,
}

fn default_slope_i() -> f64 {
    PhaseMatching::new(1.0).slope_i
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridLiteral {
    pub n: usize,
    pub span: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparableLiteral {
    pub signal: ProfileLiteral,
    pub idler: ProfileLiteral,
}

/// Either `pump` and `pmf` (optionally `grid`) or `separable`. Pump and
/// phase-matching values are in rad/ps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsaLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump: Option<PumpLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmf: Option<PmfLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separable: Option<SeparableLiteral>,
}

impl JsaLiteral {
    pub fn gaussian(pump: PumpLiteral, pmf: PmfLiteral) -> Self {
        JsaLiteral {
            pump: Some(pump),
            pmf: Some(pmf),
            grid: None,
            separable: None,
        }
    }

    pub fn resolve(&self, field: &str) -> Result<JointSpectrum> {
        let jsa = match (&self.pump, &self.pmf, &self.separable) {
            (Some(p), Some(m), None) => JointSpectrum::Gaussian {
                pump: Pump {
                    center: p.center,
                    sigma: p.sigma,
                },
                phase_matching: PhaseMatching {
                    sigma: m.sigma,
                    slope_s: m.slope_s,
                    slope_i: m.slope_i,
                },
            },
            (None, None, Some(s)) => JointSpectrum::Separable {
                signal: s.signal.resolve(&format!("{field}.separable.signal"))?,
                idler: s.idler.resolve(&format!("{field}.separable.idler"))?,
            },
            _ => return Err(invalid(field, "give either pump and pmf, or separable")),
        };
        jsa.validate().map_err(|e| invalid(field, e))?;
        Ok(jsa)
    }

    pub fn grid(&self, field: &str) -> Result<Option<GridSpec>> {
        let Some(g) = self.grid else { return Ok(None) };
        if g.n < 2 {
            return Err(invalid(&format!("{field}.grid.n"), "need at least 2 points"));
        }
        positive(&format!("{field}.grid.span"), g.span)?;
        Ok(Some(GridSpec { n: g.n, span: g.span }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// One sweep axis; the point count comes from the command's `grid`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    #[serde(default = "linear")]
    pub scale: Scale,
}

fn linear() -> Scale {
    Scale::Linear
}

impl Axis {
    pub fn linear(min: f64, max: f64) -> Self {
        Axis { min, max, scale: Scale::Linear }
    }

    pub fn log(min: f64, max: f64) -> Self {
        Axis { min, max, scale: Scale::Log }
    }

    pub fn points(&self, n: usize, field: &str) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.max < self.min {
            return Err(invalid(field, format!("need finite min <= max, got [{}, {}]", self.min, self.max)));
        }
        if n == 0 {
            return Err(invalid("grid", "need at least one point"));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(invalid(field, "log axis needs min > 0"));
        }
        if n == 1 {
            return Ok(vec![self.min]);
        }
        let step = 1.0 / (n - 1) as f64;
        Ok((0..n)
            .map(|i| {
                let t = i as f64 * step;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max / self.min).ln()).exp(),
                }
            })
            .collect())
    }
}
