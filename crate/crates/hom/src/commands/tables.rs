//! Best achievable visibility for every pairing of spectral shapes.

use hom_core::fock::best_width_match;
use hom_core::spectral::Shape;
use serde::{Deserialize, Serialize};

use super::par_map;
use crate::config::header;
use crate::error::{invalid, numeric, Result};
use crate::literals::{ProfileLiteral, ShapeName};

/// Arm A keeps the configured center and FWHM; arm B's FWHM is optimized.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TablesConfig {
    pub center_thz: f64,
    pub fwhm_nm: f64,
    pub photons: Vec<[u32; 2]>,
}

impl Default for TablesConfig {
    fn default() -> Self {
        TablesConfig {
            center_thz: 193.55,
            fwhm_nm: 1.0,
            photons: vec![[1, 1], [2, 2]],
        }
    }
}

const NAMES: [ShapeName; 4] = [ShapeName::Gaussian, ShapeName::Sinc, ShapeName::Lorentzian, ShapeName::Sech];

pub fn run(cfg: TablesConfig) -> Result<String> {
    if cfg.photons.is_empty() {
        return Err(invalid("photons", "need at least one entry"));
    }
    let fixed = NAMES
        .iter()
        .map(|&s| ProfileLiteral::nm(s, cfg.center_thz, cfg.fwhm_nm).resolve("center_thz/fwhm_nm"))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).collect();

    let mut out = header("tables", &cfg)?;
    for &[m, n] in &cfg.photons {
        let best = par_map(&cells, |&(r, c)| {
            best_width_match(m, n, &fixed[r], Shape::from(NAMES[c]))
                .map_err(|e| numeric(&format!("m={m} n={n} {:?}/{:?}", NAMES[r], NAMES[c]), e))
        })?;
        out.push_str(&format!(
            "\nm={m} n={n}: rows fix arm A's shape, columns tune arm B; entries are max visibility | FWHM_A/FWHM_B\n"
        ));
        let mut line = format!("{:<12}", "");
        for s in NAMES {
            line.push_str(&format!("{:<16}", Shape::from(s).name()));
        }
        push_trimmed(&mut out, &line);
        for (r, s) in NAMES.iter().enumerate() {
            let mut line = format!("{:<12}", Shape::from(*s).name());
            for w in &best[4 * r..4 * r + 4] {
                line.push_str(&format!("{:<16}", format!("{:.3} | {:.3}", w.visibility, w.fwhm_ratio)));
            }
            push_trimmed(&mut out, &line);
        }
    }
    Ok(out)
}

fn push_trimmed(out: &mut String, line: &str) {
    out.push_str(line.trim_end());
    out.push('\n');
}
