//! Globally adaptive Gauss-Kronrod (10/21) quadrature for complex integrands.

// node and weight tables keep their published digits
#![allow(clippy::excessive_precision)]

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            max_intervals: 20_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Map {
    Finite,
    // x = origin + t / (1 - t), t in [0, 1)
    Upper(f64),
    // x = origin - t / (1 - t)
    Lower(f64),
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    map: Map,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rule<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, map: Map) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |u: f64| -> Complex64 {
        match map {
            Map::Finite => f(u),
            Map::Upper(o) => {
                let s = 1.0 - u;
                f(o + u / s) / (s * s)
            }
            Map::Lower(o) => {
                let s = 1.0 - u;
                f(o - u / s) / (s * s)
            }
        }
    };
    let fc = eval(center);
    let mut kron = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = eval(center - dx) + eval(center + dx);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    (value, error)
}

impl Integrator {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Integrator {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    /// Integrates over `[points[0], points[last]]`, with the interior points
    /// used as initial breakpoints. Pieces longer than `max_piece` are split
    /// before adaptation starts.
    pub fn integrate<F: Fn(f64) -> Complex64>(
        &self,
        f: F,
        points: &[f64],
        max_piece: Option<f64>,
    ) -> Result<Estimate> {
        let mut seeds = Vec::new();
        push_finite(&mut seeds, points, max_piece);
        self.run(&f, seeds)
    }

    /// Integrates over the whole real line: finite pieces between `points`
    /// plus mapped tails beyond the first and last point.
    pub fn integrate_line<F: Fn(f64) -> Complex64>(
        &self,
        f: F,
        points: &[f64],
        max_piece: Option<f64>,
    ) -> Result<Estimate> {
        let mut seeds = Vec::new();
        push_finite(&mut seeds, points, max_piece);
        if let (Some(&lo), Some(&hi)) = (points.first(), points.last()) {
            seeds.push((0.0, 1.0, Map::Lower(lo)));
            seeds.push((0.0, 1.0, Map::Upper(hi)));
        }
        self.run(&f, seeds)
    }

    fn run<F: Fn(f64) -> Complex64>(
        &self,
        f: &F,
        seeds: Vec<(f64, f64, Map)>,
    ) -> Result<Estimate> {
        let mut heap = BinaryHeap::with_capacity(seeds.len() * 2);
        let mut total = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for (a, b, map) in seeds {
            let (value, error) = rule(f, a, b, map);
            total += value;
            err += error;
            heap.push(Piece {
                a,
                b,
                map,
                value,
                error,
            });
        }
        loop {
            if err <= self.abs_tol.max(self.rel_tol * total.norm()) {
                break;
            }
            if heap.len() >= self.max_intervals {
                return Err(Error::Quadrature {
                    residual: err,
                    intervals: heap.len(),
                });
            }
            let worst = match heap.pop() {
                Some(p) => p,
                None => break,
            };
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                return Err(Error::Quadrature {
                    residual: err,
                    intervals: heap.len() + 1,
                });
            }
            let (v1, e1) = rule(f, worst.a, mid, worst.map);
            let (v2, e2) = rule(f, mid, worst.b, worst.map);
            total += v1 + v2 - worst.value;
            err += e1 + e2 - worst.error;
            heap.push(Piece {
                a: worst.a,
                b: mid,
                map: worst.map,
                value: v1,
                error: e1,
            });
            heap.push(Piece {
                a: mid,
                b: worst.b,
                map: worst.map,
                value: v2,
                error: e2,
            });
        }
        // fixed summation order, independent of heap layout
        let mut pieces = heap.into_vec();
        let key = |p: &Piece| match p.map {
            Map::Lower(_) => 0,
            Map::Finite => 1,
            Map::Upper(_) => 2,
        };
        pieces.sort_by(|x, y| key(x).cmp(&key(y)).then(x.a.total_cmp(&y.a)));
        let mut value = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        for p in &pieces {
            value += p.value;
            error += p.error;
        }
        Ok(Estimate {
            value,
            error,
            intervals: pieces.len(),
        })
    }
}

fn push_finite(seeds: &mut Vec<(f64, f64, Map)>, points: &[f64], max_piece: Option<f64>) {
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let count = match max_piece {
            Some(h) if h > 0.0 => ((b - a) / h).ceil().clamp(1.0, 1e5) as usize,
            _ => 1,
        };
        let step = (b - a) / count as f64;
        for i in 0..count {
            let lo = a + step * i as f64;
            let hi = if i + 1 == count { b } else { lo + step };
            seeds.push((lo, hi, Map::Finite));
        }
    }
}

/// Integrates `f` over the real line, using `center` and `scale` to place
/// the finite window and its subdivisions.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, center: f64, scale: f64) -> Result<Complex64> {
    let half = 8.0 * scale;
    let points = [center - half, center + half];
    Integrator::default()
        .integrate_line(f, &points, Some(scale))
        .map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn normalized_gaussian() {
        let sigma = 0.7;
        let v = integrate(
            |x| c((-x * x / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())),
            0.0,
            sigma,
        )
        .unwrap();
        assert!((v.re - 1.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn algebraic_tails() {
        // int dx / (1 + x^2) = pi
        let v = integrate(|x| c(1.0 / (1.0 + x * x)), 0.0, 1.0).unwrap();
        assert!((v.re - PI).abs() < 1e-10);
    }

    #[test]
    fn oscillating_phase() {
        // int exp(-x^2) exp(i k x) dx = sqrt(pi) exp(-k^2/4)
        let k = 3.0;
        let v = integrate(
            |x| Complex64::new(0.0, k * x).exp() * (-x * x).exp(),
            0.0,
            1.0,
        )
        .unwrap();
        let want = PI.sqrt() * (-k * k / 4.0).exp();
        assert!((v.re - want).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn breakpoints_handle_kinks() {
        let est = Integrator::default()
            .integrate(|x| c(x.abs()), &[-1.0, 0.0, 2.0], None)
            .unwrap();
        assert!((est.value.re - 2.5).abs() < 1e-14);
    }

    #[test]
    fn reports_non_convergence() {
        let tight = Integrator {
            rel_tol: 1e-15,
            abs_tol: 0.0,
            max_intervals: 8,
        };
        let r = tight.integrate(|x| c((1.0 / (x + 1e-3)).sin()), &[0.0, 1.0], None);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
