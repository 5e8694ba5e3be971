//! Polarization states, density matrices and polarization-dependent detectors.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check, check_unit};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;

/// Jones vector `h |H> + v |V>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polarization {
    pub h: Complex64,
    pub v: Complex64,
}

impl Polarization {
    pub const H: Polarization = Polarization {
        h: Complex64::new(1.0, 0.0),
        v: Complex64::new(0.0, 0.0),
    };
    pub const V: Polarization = Polarization {
        h: Complex64::new(0.0, 0.0),
        v: Complex64::new(1.0, 0.0),
    };
    pub const D: Polarization = Polarization {
        h: Complex64::new(FRAC_1_SQRT_2, 0.0),
        v: Complex64::new(FRAC_1_SQRT_2, 0.0),
    };
    pub const A: Polarization = Polarization {
        h: Complex64::new(FRAC_1_SQRT_2, 0.0),
        v: Complex64::new(-FRAC_1_SQRT_2, 0.0),
    };

    /// Normalized state; errors if the amplitudes deviate from unit norm by
    /// more than 1e-10.
    pub fn new(h: Complex64, v: Complex64) -> Result<Self> {
        let n = h.norm_sqr() + v.norm_sqr();
        check("polarization norm", n, (n - 1.0).abs() <= NORM_TOL)?;
        Ok(Polarization { h, v })
    }

    /// Linear polarization at `angle` from horizontal.
    pub fn linear(angle: f64) -> Self {
        Polarization {
            h: Complex64::new(angle.cos(), 0.0),
            v: Complex64::new(angle.sin(), 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Polarization) -> Complex64 {
        self.h.conj() * other.h + self.v.conj() * other.v
    }

    /// Real rotation by `angle` in the H/V plane.
    pub fn rotate(&self, angle: f64) -> Polarization {
        let (s, c) = angle.sin_cos();
        Polarization {
            h: self.h * c - self.v * s,
            v: self.h * s + self.v * c,
        }
    }

    /// The orthogonal state `(-conj v, conj h)`.
    pub fn orthogonal(&self) -> Polarization {
        Polarization {
            h: -self.v.conj(),
            v: self.h.conj(),
        }
    }

    pub fn density(&self) -> PolarizationDensity {
        let m = [
            [self.h * self.h.conj(), self.h * self.v.conj()],
            [self.v * self.h.conj(), self.v * self.v.conj()],
        ];
        PolarizationDensity { m }
    }

    pub fn apply(&self, op: &[[Complex64; 2]; 2]) -> Polarization {
        Polarization {
            h: op[0][0] * self.h + op[0][1] * self.v,
            v: op[1][0] * self.h + op[1][1] * self.v,
        }
    }
}

/// `|<a|b>|`, the cosine of the polarization mismatch angle.
pub fn cos_phi(a: &Polarization, b: &Polarization) -> f64 {
    a.inner(b).norm().min(1.0)
}

/// 2x2 polarization density matrix in the H/V basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizationDensity {
    pub m: [[Complex64; 2]; 2],
}

impl PolarizationDensity {
    pub fn maximally_mixed() -> Self {
        let half = Complex64::new(0.5, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        PolarizationDensity {
            m: [[half, zero], [zero, half]],
        }
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0].re + self.m[1][1].re
    }

    /// Bloch vector `(x, y, z)` with `rho = (I + r . sigma) / 2`.
    pub fn bloch(&self) -> [f64; 3] {
        [
            2.0 * self.m[0][1].re,
            -2.0 * self.m[0][1].im,
            self.m[0][0].re - self.m[1][1].re,
        ]
    }

    pub fn from_bloch(r: [f64; 3]) -> Self {
        PolarizationDensity {
            m: [
                [
                    Complex64::new(0.5 * (1.0 + r[2]), 0.0),
                    Complex64::new(0.5 * r[0], -0.5 * r[1]),
                ],
                [
                    Complex64::new(0.5 * r[0], 0.5 * r[1]),
                    Complex64::new(0.5 * (1.0 - r[2]), 0.0),
                ],
            ],
        }
    }

    /// `<e| rho |e>`.
    pub fn expectation(&self, e: &Polarization) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let c = [e.h, e.v];
        for i in 0..2 {
            for j in 0..2 {
                acc += c[i].conj() * self.m[i][j] * c[j];
            }
        }
        acc.re
    }

    /// Checks Hermiticity, unit trace and non-negative eigenvalues.
    pub fn validate(&self) -> Result<()> {
        let herm = (self.m[0][1] - self.m[1][0].conj()).norm()
            + self.m[0][0].im.abs()
            + self.m[1][1].im.abs();
        check("density hermiticity", herm, herm <= NORM_TOL)?;
        let tr = self.trace();
        check("density trace", tr, (tr - 1.0).abs() <= NORM_TOL)?;
        let r = self.bloch();
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        check("bloch length", len, len <= 1.0 + NORM_TOL)?;
        Ok(())
    }

    pub fn mix(&self, other: &PolarizationDensity, weight: f64) -> PolarizationDensity {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = *x * (1.0 - weight) + other.m[i][j] * weight;
            }
        }
        PolarizationDensity { m }
    }
}

/// Depolarizing channel `(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`.
pub fn depolarize(rho: &PolarizationDensity, p: f64) -> Result<PolarizationDensity> {
    check_unit("depolarizing probability", p)?;
    let r = rho.bloch();
    let k = 1.0 - 4.0 * p / 3.0;
    Ok(PolarizationDensity::from_bloch([k * r[0], k * r[1], k * r[2]]))
}

/// Eigen-decomposition of a density matrix as weighted pure states, largest
/// weight first. A degenerate matrix returns the H/V basis.
pub fn eigendecompose(rho: &PolarizationDensity) -> Vec<(f64, Polarization)> {
    let r = rho.bloch();
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if len < 1e-12 {
        let w = 0.5 * rho.trace();
        return alloc::vec![(w, Polarization::H), (w, Polarization::V)];
    }
    // the +r direction on the Bloch sphere
    let theta = (r[2] / len).clamp(-1.0, 1.0).acos();
    let phi = r[1].atan2(r[0]);
    let up = Polarization {
        h: Complex64::new((0.5 * theta).cos(), 0.0),
        v: Complex64::from_polar((0.5 * theta).sin(), phi),
    };
    let tr = rho.trace();
    alloc::vec![
        (0.5 * (tr + len), up),
        (0.5 * (tr - len), up.orthogonal())
    ]
}

/// Pauli matrices X, Y, Z.
pub fn pauli() -> [[[Complex64; 2]; 2]; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [[[o, one], [one, o]], [[o, -i], [i, o]], [[one, o], [o, -one]]]
}

/// Threshold detector with polarization-dependent efficiency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Detector {
    pub eta_h: f64,
    pub eta_v: f64,
}

impl Detector {
    pub const IDEAL: Detector = Detector {
        eta_h: 1.0,
        eta_v: 1.0,
    };

    pub fn new(eta_h: f64, eta_v: f64) -> Result<Self> {
        check_unit("eta_h", eta_h)?;
        check_unit("eta_v", eta_v)?;
        Ok(Detector { eta_h, eta_v })
    }

    pub fn validate(&self) -> Result<()> {
        Detector::new(self.eta_h, self.eta_v).map(|_| ())
    }

    /// Detection probability for one photon in state `e`.
    pub fn efficiency(&self, e: &Polarization) -> f64 {
        let n = e.norm_sqr();
        (e.h.norm_sqr() * self.eta_h + e.v.norm_sqr() * self.eta_v) / n
    }
}

/// Probability that a detector fires given `m` photons in `a` and `n` in `b`,
/// each detected independently.
pub fn click_probability(
    det: &Detector,
    a: &Polarization,
    b: &Polarization,
    m: u32,
    n: u32,
) -> f64 {
    click_from_efficiencies(det.efficiency(a), det.efficiency(b), m, n)
}

pub(crate) fn click_from_efficiencies(eta_a: f64, eta_b: f64, m: u32, n: u32) -> f64 {
    1.0 - (1.0 - eta_a).powi(m as i32) * (1.0 - eta_b).powi(n as i32)
}

/// Parses `H`, `V`, `D` or `A`.
pub fn named(label: &str) -> Result<Polarization> {
    match label {
        "H" | "h" => Ok(Polarization::H),
        "V" | "v" => Ok(Polarization::V),
        "D" | "d" => Ok(Polarization::D),
        "A" | "a" => Ok(Polarization::A),
        _ => Err(Error::InvalidParameter {
            name: "polarization label",
            value: f64::NAN,
        }),
    }
}
