//! Entanglement swapping with a few discrete frequency bins, simulated by
//! building the four-photon amplitude tensor and projecting on detector
//! patterns directly.

use hom_core::swap::{
    exchange_overlap, fidelity_from_gridded, outcome_probabilities, swap_fidelity, trapezoid_axis, GridSpec,
    GriddedJsa, JointSpectrum, PhaseMatching, Pump, SwapScenario,
};
use hom_core::Complex64;
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const H: usize = 0;
const V: usize = 1;

fn random_matrix(rng: &mut StdRng, k: usize) -> Vec<Complex64> {
    (0..k * k)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

struct FourPhoton {
    k: usize,
    // psi[a][b][c][d], each index is pol * k + bin
    amp: Vec<Complex64>,
}

impl FourPhoton {
    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let m = 2 * self.k;
        ((a * m + b) * m + c) * m + d
    }

    fn new(f: &GriddedJsa, g: &GriddedJsa, phi: f64) -> Self {
        let k = f.signal_axis.len();
        let m = 2 * k;
        // singlet pairs with photon C rotated: H -> (cos, sin), V -> (-sin, cos)
        let pair = |j: &GriddedJsa, rotate: bool| {
            let (s, c) = if rotate { phi.sin_cos() } else { (0.0, 1.0) };
            let rot = [[c, -s], [s, c]];
            let mut out = vec![Complex64::new(0.0, 0.0); m * m];
            for i in 0..k {
                for l in 0..k {
                    let x = j.at(i, l) / std::f64::consts::SQRT_2;
                    for (p1, p2, sign) in [(H, V, 1.0), (V, H, -1.0)] {
                        for q in [H, V] {
                            out[(q * k + i) * m + p2 * k + l] += x * sign * rot[q][p1];
                        }
                    }
                }
            }
            out
        };
        let ab = pair(f, false);
        let cd = pair(g, true);
        let mut amp = vec![Complex64::new(0.0, 0.0); m * m * m * m];
        for x in 0..m * m {
            for y in 0..m * m {
                amp[x * m * m + y] = ab[x] * cd[y];
            }
        }
        FourPhoton { k, amp }
    }

    /// Heralded AD polarization density (unnormalized) for one detector
    /// pattern. `pattern` gives the polarizations seen at the two output
    /// ports of the B/C splitter, with `same_port` set when both photons left
    /// through one port (`in_c` selects which).
    fn herald(&self, pattern: (usize, usize), same_port: Option<bool>) -> [[Complex64; 4]; 4] {
        let k = self.k;
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        let (p1, p2) = pattern;
        for bin1 in 0..k {
            for bin2 in 0..k {
                let x = p1 * k + bin1;
                let y = p2 * k + bin2;
                // b -> (b + c)/sqrt2, c -> (b - c)/sqrt2 on creation operators
                let (w_direct, w_swapped) = match same_port {
                    None => (-0.5, 0.5),
                    Some(false) => (0.5, 0.5),
                    Some(true) => (-0.5, -0.5),
                };
                for ia in 0..k {
                    for id in 0..k {
                        let mut chi = [Complex64::new(0.0, 0.0); 4];
                        for pa in 0..2 {
                            for pd in 0..2 {
                                let a = pa * k + ia;
                                let d = pd * k + id;
                                chi[pa * 2 + pd] = self.amp[self.idx(a, x, y, d)] * w_direct
                                    + self.amp[self.idx(a, y, x, d)] * w_swapped;
                            }
                        }
                        for r in 0..4 {
                            for s in 0..4 {
                                rho[r][s] += chi[r] * chi[s].conj();
                            }
                        }
                    }
                }
            }
        }
        rho
    }
}

fn expectation(rho: &[[Complex64; 4]; 4], state: [f64; 4]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        for s in 0..4 {
            acc += state[r] * rho[r][s] * state[s];
        }
    }
    acc.re
}

fn trace(rho: &[[Complex64; 4]; 4]) -> f64 {
    (0..4).map(|i| rho[i][i].re).sum()
}

#[test]
fn discrete_bins_match_gram_contraction() {
    let mut rng = StdRng::seed_from_u64(7);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // basis order HH, HV, VH, VV for (A, D)
    let singlet = [0.0, r, -r, 0.0];
    let triplet = [0.0, r, r, 0.0];
    for k in [1, 2, 3] {
        for phi in [0.0, 0.4, 1.1] {
            let f = GriddedJsa::from_discrete(random_matrix(&mut rng, k), k, k).unwrap();
            let g = GriddedJsa::from_discrete(random_matrix(&mut rng, k), k, k).unwrap();
            let sim = FourPhoton::new(&f, &g, phi);
            let want_f = fidelity_from_gridded(&f, &g, phi).unwrap();
            let probs = outcome_probabilities(&f, &g, phi);
            let cases = [
                (sim.herald((H, V), None), singlet),
                (sim.herald((V, H), None), singlet),
                (sim.herald((H, V), Some(false)), triplet),
                (sim.herald((H, V), Some(true)), triplet),
            ];
            for (i, (rho, target)) in cases.iter().enumerate() {
                let p = trace(rho);
                assert!((p - probs[i]).abs() < 1e-12, "k {k} phi {phi} outcome {i}: {p}");
                assert!((p - 0.125).abs() < 1e-12);
                let fid = expectation(rho, *target) / p;
                assert!((fid - want_f).abs() < 1e-12, "k {k} phi {phi} outcome {i}: {fid} vs {want_f}");
            }
        }
    }
}

#[test]
fn schmidt_spectrum_matches_svd() {
    let mut rng = StdRng::seed_from_u64(11);
    for (rows, cols) in [(3, 3), (4, 6), (5, 2)] {
        let g = GriddedJsa::from_discrete(random_matrix(&mut rng, rows.max(cols)).into_iter().take(rows * cols).collect(), rows, cols)
            .unwrap();
        let m = DMatrix::from_fn(rows, cols, |i, j| g.at(i, j));
        let sv = m.svd(false, false).singular_values;
        let weights: Vec<f64> = sv.iter().map(|s| s * s).collect();
        let purity: f64 = weights.iter().map(|w| w * w).sum();
        let largest = weights.iter().cloned().fold(0.0, f64::max);
        assert!((g.schmidt_purity() - purity).abs() < 1e-12);
        assert!((g.largest_schmidt_weight() - largest).abs() < 1e-9);
    }
}

#[test]
fn exchange_overlap_is_one_for_matched_separable() {
    let v = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
    let outer: Vec<Complex64> = v.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect();
    let f = GriddedJsa::from_discrete(outer, 2, 2).unwrap();
    assert!((exchange_overlap(&f, &f).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn mismatched_grids_rejected() {
    let f = GriddedJsa::from_discrete(vec![Complex64::new(1.0, 0.0); 4], 2, 2).unwrap();
    let g = GriddedJsa::from_discrete(vec![Complex64::new(1.0, 0.0); 6], 3, 2).unwrap();
    assert!(exchange_overlap(&f, &g).is_err());
}

fn spdc(sigma_p: f64) -> JointSpectrum {
    JointSpectrum::Gaussian {
        pump: Pump {
            center: 2432.0,
            sigma: sigma_p,
        },
        phase_matching: PhaseMatching::new(1.0),
    }
}

#[test]
fn narrow_pump_ridge_is_anti_diagonal() {
    let jsa = spdc(0.3);
    let [(cs, hs), (ci, hi)] = jsa.windows(5.0);
    let g = GriddedJsa::sample(
        &jsa,
        trapezoid_axis(cs - hs, cs + hs, 200).unwrap(),
        trapezoid_axis(ci - hi, ci + hi, 200).unwrap(),
    )
    .unwrap();
    let mut cov = 0.0;
    for (i, ws) in g.signal_axis.iter().enumerate() {
        for (j, wi) in g.idler_axis.iter().enumerate() {
            cov += g.signal_weights[i] * g.idler_weights[j] * g.at(i, j).norm_sqr() * (ws - cs) * (wi - ci);
        }
    }
    assert!(cov < 0.0);
}

#[test]
fn gaussian_sources_converge_with_grid() {
    for sigma_p in [0.3, 1.414, 5.0] {
        let scenario = |n| SwapScenario {
            source_ab: spdc(sigma_p),
            source_cd: spdc(sigma_p),
            phi: 0.2,
            grid: GridSpec { n, span: 5.0 },
        };
        let coarse = swap_fidelity(&scenario(128)).unwrap();
        let fine = swap_fidelity(&scenario(256)).unwrap();
        assert!((coarse - fine).abs() < 1e-5, "{sigma_p}: {coarse} vs {fine}");
        assert!(fine <= 0.2f64.cos().powi(2) + 1e-12);
    }
}

#[test]
fn symmetric_sources_follow_schmidt_purity() {
    // with opposite slopes the amplitude is symmetric, so the exchange
    // overlap is the Schmidt purity
    for sigma_p in [0.2, 0.5, 1.0, 3.0] {
        let jsa = JointSpectrum::Gaussian {
            pump: Pump {
                center: 2432.0,
                sigma: sigma_p,
            },
            phase_matching: PhaseMatching {
                sigma: 1.0,
                slope_s: 1.0,
                slope_i: -1.0,
            },
        };
        let s = SwapScenario {
            source_ab: jsa,
            source_cd: jsa,
            phi: 0.0,
            grid: GridSpec { n: 160, span: 6.0 },
        };
        let (f, _) = s.sample().unwrap();
        let want = 0.5 * (1.0 + f.schmidt_purity());
        let got = swap_fidelity(&s).unwrap();
        assert!((got - want).abs() < 1e-9, "{sigma_p}: {got} vs {want}");
        if sigma_p == 1.0 {
            assert!((got - 1.0).abs() < 1e-9);
        } else {
            assert!(got < 1.0 - 1e-3);
        }
    }
}
