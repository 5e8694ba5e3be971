//! Fock visibility over arm B's spectral width and center.

use hom_core::fock::{visibility, FockPair};
use hom_core::spectral::{wavelength_to_angular, wavelength_width_to_angular, Shape, SpectralProfile};
use serde::{Deserialize, Serialize};

use super::{grid_csv, par_map};
use crate::config::header;
use crate::error::{invalid, numeric, Result};
use crate::literals::{ApparatusLiteral, Axis, PolarizationLiteral, ProfileLiteral, ShapeName};

/// `x` is arm B's intensity FWHM in nm, `y` its center wavelength offset
/// from arm A in nm. Arm B's polarization is arm A's rotated by `phi`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContourConfig {
    pub grid: usize,
    pub photons: [u32; 2],
    pub phi: f64,
    pub shape_b: ShapeName,
    pub fwhm_nm: Axis,
    pub offset_nm: Axis,
    pub pol_a: PolarizationLiteral,
    pub apparatus: ApparatusLiteral,
    pub profile_a: ProfileLiteral,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            grid: 61,
            photons: [1, 1],
            phi: 0.0,
            shape_b: ShapeName::Gaussian,
            fwhm_nm: Axis::log(0.1, 10.0),
            offset_nm: Axis::linear(-2.0, 2.0),
            pol_a: PolarizationLiteral::default(),
            apparatus: ApparatusLiteral::default(),
            profile_a: ProfileLiteral::nm(ShapeName::Gaussian, 193.55, 1.0),
        }
    }
}

pub fn run(cfg: ContourConfig) -> Result<String> {
    let xs = cfg.fwhm_nm.points(cfg.grid, "fwhm_nm")?;
    let ys = cfg.offset_nm.points(cfg.grid, "offset_nm")?;
    if xs[0] <= 0.0 {
        return Err(invalid("fwhm_nm", "widths must be positive"));
    }
    let spec_a = cfg.profile_a.resolve("profile_a")?;
    let lambda_a = cfg.profile_a.wavelength("profile_a")?;
    if let Some(&y) = ys.iter().find(|&&y| lambda_a + y <= 0.0) {
        return Err(invalid("offset_nm", format!("offset {y} gives a non-positive wavelength")));
    }
    let pol_a = cfg.pol_a.resolve("pol_a")?;
    let app = cfg.apparatus.resolve("apparatus")?;
    let [m, n] = cfg.photons;
    let shape = Shape::from(cfg.shape_b);

    let values = par_map(&xs, |&width_nm| {
        ys.iter()
            .map(|&offset| {
                let lambda = lambda_a + offset;
                let ctx = format!("fwhm_nm={width_nm} offset_nm={offset}");
                let spec_b = SpectralProfile::from_fwhm(
                    shape,
                    wavelength_to_angular(lambda),
                    wavelength_width_to_angular(lambda, width_nm),
                )
                .map_err(|e| numeric(&ctx, e))?
                .with_delay(spec_a.delay);
                let pair = FockPair {
                    m,
                    n,
                    pol_a,
                    pol_b: pol_a.rotate(cfg.phi),
                    spec_a,
                    spec_b,
                };
                visibility(&pair, &app).map_err(|e| numeric(&ctx, e))
            })
            .collect()
    })?;
    Ok(header("contour", &cfg)? + &grid_csv(&xs, &ys, &values, "visibility"))
}
