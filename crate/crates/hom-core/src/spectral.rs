//! Spectral envelopes, their overlaps and widths.
//!
//! A profile's amplitude is `psi(w - center) * exp(i w delay)` where `psi` is
//! one of four unit-norm envelopes. Overlaps are evaluated in the time
//! domain, where every envelope has a closed-form transform with fast decay;
//! [`overlap_in_frequency`] integrates the spectral product directly.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::check;
use crate::quadrature::Integrator;
use crate::{Error, Result};

/// Speed of light in nm/ps.
pub const SPEED_OF_LIGHT: f64 = 299_792.458;

/// Telecom reference carrier, in THz.
pub const REFERENCE_CENTER_THZ: f64 = 193.55;

/// `2 sqrt(2 ln 2)`: Gaussian intensity FWHM over its standard deviation.
pub const GAUSSIAN_FWHM_FACTOR: f64 = 2.354_820_045_030_949_4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Gaussian,
    Sinc,
    Lorentzian,
    Sech,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Gaussian, Shape::Sinc, Shape::Lorentzian, Shape::Sech];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Gaussian => "gaussian",
            Shape::Sinc => "sinc",
            Shape::Lorentzian => "lorentzian",
            Shape::Sech => "sech",
        }
    }
}

/// A single-photon spectral amplitude.
///
/// `width` is the shape parameter: the intensity standard deviation for
/// Gaussian, the time-domain duration `T` (ps) for sinc, the amplitude FWHM
/// for Lorentzian and the sech scale for sech. `broadening` scales the
/// spectral width (it divides the sinc duration).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralProfile {
    pub shape: Shape,
    pub center: f64,
    pub width: f64,
    pub delay: f64,
    pub broadening: f64,
}

impl SpectralProfile {
    pub fn new(shape: Shape, center: f64, width: f64) -> Result<Self> {
        let p = SpectralProfile {
            shape,
            center,
            width,
            delay: 0.0,
            broadening: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn gaussian(center: f64, sigma: f64) -> Result<Self> {
        Self::new(Shape::Gaussian, center, sigma)
    }

    pub fn sinc(center: f64, duration: f64) -> Result<Self> {
        Self::new(Shape::Sinc, center, duration)
    }

    pub fn lorentzian(center: f64, fwhm: f64) -> Result<Self> {
        Self::new(Shape::Lorentzian, center, fwhm)
    }

    pub fn sech(center: f64, sigma: f64) -> Result<Self> {
        Self::new(Shape::Sech, center, sigma)
    }

    /// Profile of the given shape whose [`fwhm`] equals `fwhm`.
    pub fn from_fwhm(shape: Shape, center: f64, fwhm_value: f64) -> Result<Self> {
        check("fwhm", fwhm_value, fwhm_value > 0.0)?;
        let unit = fwhm(&Self::new(shape, 0.0, 1.0)?)?;
        let width = match shape {
            Shape::Sinc => unit / fwhm_value,
            _ => fwhm_value / unit,
        };
        Self::new(shape, center, width)
    }

    pub fn with_delay(mut self, delay: f64) -> Self {
        self.delay = delay;
        self
    }

    pub fn with_center(mut self, center: f64) -> Self {
        self.center = center;
        self
    }

    pub fn with_broadening(mut self, factor: f64) -> Self {
        self.broadening = factor;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check("width", self.width, self.width > 0.0)?;
        check("center", self.center, true)?;
        check("delay", self.delay, true)?;
        check("broadening", self.broadening, self.broadening > 0.0)?;
        Ok(())
    }

    /// Shape parameter after broadening.
    pub fn effective_width(&self) -> f64 {
        match self.shape {
            Shape::Sinc => self.width / self.broadening,
            _ => self.width * self.broadening,
        }
    }

    /// Unit-norm envelope at detuning `x` from the center, without delay phase.
    pub fn envelope(&self, x: f64) -> f64 {
        let w = self.effective_width();
        match self.shape {
            Shape::Gaussian => {
                (w * (2.0 * PI).sqrt()).powf(-0.5) * (-x * x / (4.0 * w * w)).exp()
            }
            Shape::Sinc => {
                let half = 0.5 * x;
                let core = if half.abs() < 1e-8 {
                    w * (1.0 - (w * half) * (w * half) / 6.0)
                } else {
                    (w * half).sin() / half
                };
                core / (2.0 * PI * w).sqrt()
            }
            Shape::Lorentzian => {
                let g = 0.5 * w;
                (2.0 * g * g * g / PI).sqrt() / (x * x + g * g)
            }
            Shape::Sech => (2.0 * w).powf(-0.5) / (x / w).cosh(),
        }
    }

    /// Complex amplitude at angular frequency `omega`.
    pub fn amplitude(&self, omega: f64) -> Complex64 {
        let phase = Complex64::new(0.0, omega * self.delay).exp();
        phase * self.envelope(omega - self.center)
    }

    /// Transform of the envelope, `int psi(x) exp(-i x s) dx`; real and even.
    pub fn time_envelope(&self, s: f64) -> f64 {
        let w = self.effective_width();
        match self.shape {
            Shape::Gaussian => {
                let n = (w * (2.0 * PI).sqrt()).powf(-0.5);
                n * 2.0 * w * PI.sqrt() * (-w * w * s * s).exp()
            }
            Shape::Sinc => {
                let n = (2.0 * PI * w).powf(-0.5);
                let edge = 0.5 * w;
                if s.abs() < edge {
                    n * 2.0 * PI
                } else if s.abs() == edge {
                    n * PI
                } else {
                    0.0
                }
            }
            Shape::Lorentzian => {
                let g = 0.5 * w;
                let n = (2.0 * g * g * g / PI).sqrt();
                n * (PI / g) * (-g * s.abs()).exp()
            }
            Shape::Sech => {
                let n = (2.0 * w).powf(-0.5);
                n * PI * w / (0.5 * PI * w * s).cosh()
            }
        }
    }

    // Half-length beyond which the time envelope is below ~1e-15 of its peak.
    fn time_reach(&self) -> f64 {
        let w = self.effective_width();
        match self.shape {
            Shape::Gaussian => 6.0 / w,
            Shape::Sinc => 0.5 * w,
            Shape::Lorentzian => 70.0 / w,
            Shape::Sech => 22.5 / w,
        }
    }

    /// Rough spectral half-width of the amplitude, used to place grids.
    pub fn spectral_scale(&self) -> f64 {
        let w = self.effective_width();
        match self.shape {
            Shape::Gaussian => 2.0 * w,
            Shape::Sinc => 2.0 * PI / w,
            Shape::Lorentzian => 0.5 * w,
            Shape::Sech => w,
        }
    }
}

/// Angular frequency (rad/ps) of an ordinary frequency in THz.
pub fn thz_to_angular(thz: f64) -> f64 {
    2.0 * PI * thz
}

/// Ordinary frequency in THz of an angular frequency in rad/ps.
pub fn angular_to_thz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

/// Angular frequency (rad/ps) of a vacuum wavelength in nm.
pub fn wavelength_to_angular(nm: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / nm
}

/// Angular width equivalent to a wavelength width `dlambda` at `lambda0` (nm).
pub fn wavelength_width_to_angular(lambda0: f64, dlambda: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT * dlambda / (lambda0 * lambda0)
}

/// Overlap of two unit-norm Gaussian amplitudes `exp(-x^2 / (2 s^2))` with
/// amplitude widths `sigma_a`, `sigma_b` and center separation `detuning`.
pub fn gaussian_amplitude_overlap(sigma_a: f64, sigma_b: f64, detuning: f64) -> f64 {
    let s2 = sigma_a * sigma_a + sigma_b * sigma_b;
    (2.0 * sigma_a * sigma_b / s2).sqrt() * (-detuning * detuning / (2.0 * s2)).exp()
}

/// `int conj(phi_a) phi_b dw`.
pub fn overlap(a: &SpectralProfile, b: &SpectralProfile) -> Result<Complex64> {
    a.validate()?;
    b.validate()?;
    if a.shape == Shape::Gaussian && b.shape == Shape::Gaussian {
        return Ok(gaussian_pair(a, b));
    }
    time_domain_overlap(a, b)
}

/// `|int conj(phi_a) phi_b dw|`, the cosine of the spectral mismatch angle.
pub fn overlap_magnitude(a: &SpectralProfile, b: &SpectralProfile) -> Result<f64> {
    Ok(overlap(a, b)?.norm().min(1.0))
}

fn gaussian_pair(a: &SpectralProfile, b: &SpectralProfile) -> Complex64 {
    let (sa, sb) = (a.effective_width(), b.effective_width());
    let mid = 0.5 * (a.center + b.center);
    let (ca, cb) = (a.center - mid, b.center - mid);
    let dt = b.delay - a.delay;
    let s = 0.25 / (sa * sa) + 0.25 / (sb * sb);
    let beta = Complex64::new(0.5 * ca / (sa * sa) + 0.5 * cb / (sb * sb), dt);
    let g0 = 0.25 * ca * ca / (sa * sa) + 0.25 * cb * cb / (sb * sb);
    let norm = (2.0 * PI * sa * sb).powf(-0.5) * (PI / s).sqrt();
    let carrier = Complex64::new(0.0, mid * dt).exp();
    carrier * (beta * beta / (4.0 * s) - g0).exp() * norm
}

fn time_domain_overlap(a: &SpectralProfile, b: &SpectralProfile) -> Result<Complex64> {
    let (ra, rb) = (a.time_reach(), b.time_reach());
    let lo = (a.delay - ra).max(b.delay - rb);
    let hi = (a.delay + ra).min(b.delay + rb);
    if !(hi > lo) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut points: Vec<f64> = alloc::vec![lo, hi];
    for p in [a, b] {
        if p.shape == Shape::Lorentzian && p.delay > lo && p.delay < hi {
            points.push(p.delay);
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();

    let detune = a.center - b.center;
    let mid = 0.5 * (lo + hi);
    let mut piece = (hi - lo).min(ra).min(rb) / 8.0;
    if detune != 0.0 {
        piece = piece.min(PI / detune.abs());
    }
    // the conj(Fa) Fb carrier split into a constant and a slow part
    let constant = Complex64::new(0.0, b.center * b.delay - a.center * a.delay + detune * mid).exp();
    let integrand = |t: f64| {
        let env = a.time_envelope(t - a.delay) * b.time_envelope(t - b.delay);
        Complex64::new(0.0, detune * (t - mid)).exp() * env
    };
    let est = Integrator::new(1e-12, 1e-15).integrate(integrand, &points, Some(piece))?;
    Ok(constant * est.value / (2.0 * PI))
}

/// Spectral overlap by direct quadrature of `conj(phi_a) phi_b` over
/// frequency. Slow and, for sinc envelopes, truncated to a finite window;
/// kept as an independent route for checking [`overlap`].
pub fn overlap_in_frequency(a: &SpectralProfile, b: &SpectralProfile) -> Result<Complex64> {
    a.validate()?;
    b.validate()?;
    let integrand = |w: f64| a.amplitude(w).conj() * b.amplitude(w);
    let lo = (a.center - 10.0 * a.spectral_scale()).min(b.center - 10.0 * b.spectral_scale());
    let hi = (a.center + 10.0 * a.spectral_scale()).max(b.center + 10.0 * b.spectral_scale());
    let mut piece = a.spectral_scale().min(b.spectral_scale()) / 4.0;
    let dt = (a.delay - b.delay).abs();
    if dt > 0.0 {
        piece = piece.min(PI / dt);
    }
    let integrator = Integrator {
        rel_tol: 1e-11,
        abs_tol: 1e-14,
        max_intervals: 200_000,
    };
    let sinc = a.shape == Shape::Sinc || b.shape == Shape::Sinc;
    let est = if sinc {
        // sinc tails fall off like 1/w^2; integrate a wide window and stop
        let reach = 400.0 * a.spectral_scale().max(b.spectral_scale());
        let points = [lo.min(a.center - reach), hi.max(a.center + reach)];
        integrator.integrate(integrand, &points, Some(piece))?
    } else {
        integrator.integrate_line(integrand, &[lo, hi], Some(piece))?
    };
    Ok(est.value)
}

/// Full width at half maximum.
///
/// Gaussian widths refer to the intensity profile, Lorentzian widths to the
/// amplitude (the width parameter itself); sinc and sech widths are found by
/// bisection on the intensity.
pub fn fwhm(p: &SpectralProfile) -> Result<f64> {
    p.validate()?;
    let w = p.effective_width();
    match p.shape {
        Shape::Gaussian => Ok(GAUSSIAN_FWHM_FACTOR * w),
        Shape::Lorentzian => Ok(w),
        Shape::Sinc => half_intensity(p, 2.0 * PI / w).map(|x| 2.0 * x),
        Shape::Sech => half_intensity(p, 4.0 * w).map(|x| 2.0 * x),
    }
}

fn half_intensity(p: &SpectralProfile, upper: f64) -> Result<f64> {
    let peak = p.envelope(0.0).powi(2);
    let excess = |x: f64| p.envelope(x).powi(2) / peak - 0.5;
    let (mut lo, mut hi) = (0.0, upper);
    if !(excess(lo) > 0.0 && excess(hi) < 0.0) {
        return Err(Error::Bracket {
            what: "half-maximum point",
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    const C0: f64 = 1216.0;

    fn profiles() -> [SpectralProfile; 4] {
        [
            SpectralProfile::gaussian(C0, 0.4).unwrap(),
            SpectralProfile::sinc(C0, 3.0).unwrap(),
            SpectralProfile::lorentzian(C0, 0.9).unwrap(),
            SpectralProfile::sech(C0, 0.35).unwrap(),
        ]
    }

    #[test]
    fn self_overlap_is_one() {
        for p in profiles() {
            let o = overlap(&p, &p).unwrap();
            assert!((o.re - 1.0).abs() < 1e-12, "{:?}: {o}", p.shape);
            assert!(o.im.abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_closed_form_matches_quadrature() {
        let a = SpectralProfile::gaussian(C0, 0.4).unwrap().with_delay(0.7);
        let b = SpectralProfile::gaussian(C0 + 0.3, 0.25).unwrap().with_delay(-1.1);
        let closed = gaussian_pair(&a, &b);
        let quad = time_domain_overlap(&a, &b).unwrap();
        assert!((closed - quad).norm() < 1e-12, "{closed} vs {quad}");
    }

    #[test]
    fn amplitude_convention_closed_form() {
        // intensity std sigma is amplitude std sqrt(2) sigma
        let a = SpectralProfile::gaussian(C0, 0.3).unwrap();
        let b = SpectralProfile::gaussian(C0 + 0.2, 0.5).unwrap();
        let want = gaussian_amplitude_overlap(0.3 * 2f64.sqrt(), 0.5 * 2f64.sqrt(), 0.2);
        assert!((overlap_magnitude(&a, &b).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn delayed_matched_gaussians() {
        // |<a|b>| = exp(-sigma^2 tau^2 / 2) for equal widths
        let a = SpectralProfile::gaussian(C0, 0.5).unwrap();
        let b = a.with_delay(2.0);
        let want = (-0.5f64 * 0.25 * 4.0).exp();
        assert!((overlap_magnitude(&a, &b).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn gaussian_fwhm_and_round_trip() {
        let p = SpectralProfile::gaussian(C0, 0.5).unwrap();
        assert!((fwhm(&p).unwrap() - 1.1774100225154747).abs() < 1e-12);
        for shape in Shape::ALL {
            let q = SpectralProfile::from_fwhm(shape, C0, 0.8).unwrap();
            assert!((fwhm(&q).unwrap() - 0.8).abs() < 1e-12, "{shape:?}");
        }
    }

    #[test]
    fn lorentzian_half_amplitude_at_half_width() {
        let p = SpectralProfile::lorentzian(C0, 0.6).unwrap();
        let r = p.envelope(0.3) / p.envelope(0.0);
        assert!((r - 0.5).abs() < 1e-14);
    }

    #[test]
    fn sinc_fwhm_known_root() {
        // sin(u)/u = 1/sqrt(2) at u = 1.3915573782515103
        let p = SpectralProfile::sinc(C0, 2.0).unwrap();
        assert!((fwhm(&p).unwrap() - 4.0 * 1.3915573782515103 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn broadening_scales_width() {
        for p in profiles() {
            let q = p.with_broadening(1.7);
            let r = fwhm(&q).unwrap() / fwhm(&p).unwrap();
            assert!((r - 1.7).abs() < 1e-12, "{:?}", p.shape);
        }
    }

    #[test]
    fn telecom_width_conversion() {
        let dw = wavelength_width_to_angular(1550.0, 1.0);
        assert!((dw - 2.0 * PI * 299_792.458 / 1550.0f64.powi(2)).abs() < 1e-15);
        assert!((dw - 0.784_02).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(matches!(
            SpectralProfile::gaussian(C0, 0.0),
            Err(Error::InvalidParameter { name: "width", .. })
        ));
        assert!(SpectralProfile::sech(C0, f64::NAN).is_err());
    }
}
