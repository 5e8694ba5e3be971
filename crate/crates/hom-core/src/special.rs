//! Binomials, Poisson weights and the modified Bessel function I0.

#[allow(unused_imports)]
use num_traits::Float;

/// Largest `n` for which [`binomial`] is computed in exact integer arithmetic.
pub const EXACT_BINOMIAL_LIMIT: u32 = 62;

/// Argument above which I0 switches from its power series to the asymptotic
/// expansion.
pub const I0_CROSSOVER: f64 = 15.0;

/// Exact binomial coefficient, or `None` past [`EXACT_BINOMIAL_LIMIT`].
pub fn binomial_exact(n: u32, k: u32) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    if n > EXACT_BINOMIAL_LIMIT {
        return None;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    Some(acc as u64)
}

/// Natural log of C(n, k); `-inf` when k > n.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if let Some(c) = binomial_exact(n, k) {
        return (c as f64).ln();
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64 / i as f64).ln())
        .sum()
}

/// C(n, k) as a float, exact for n <= 62 and log-domain beyond.
pub fn binomial(n: u32, k: u32) -> f64 {
    match binomial_exact(n, k) {
        Some(c) => c as f64,
        None => ln_binomial(n, k).exp(),
    }
}

/// Poisson weights p_0..p_k for mean `mu`, extended until the remaining tail
/// mass is below `tail`.
pub fn poisson_weights(mu: f64, tail: f64) -> alloc::vec::Vec<f64> {
    let mut out = alloc::vec::Vec::new();
    let mut p = (-mu).exp();
    let mut acc = 0.0;
    let mut k = 0u32;
    loop {
        out.push(p);
        acc += p;
        // past the mode the tail is bounded by a geometric series
        let kf = k as f64 + 1.0;
        let next = p * mu / kf;
        let ratio = mu / (kf + 1.0);
        if kf > mu && (1.0 - acc < tail || (ratio < 1.0 && next / (1.0 - ratio) < tail)) {
            break;
        }
        p = next;
        k += 1;
    }
    out
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> f64 {
    let x = x.abs();
    if x < I0_CROSSOVER {
        1.0 + i0_series_tail(x)
    } else {
        bessel_i0_scaled(x) * x.exp()
    }
}

/// `exp(-|x|) * I0(x)`, finite for every finite `x`.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let x = x.abs();
    if x < I0_CROSSOVER {
        return (1.0 + i0_series_tail(x)) * (-x).exp();
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (k * 8.0 * x);
        if next >= term || next < 1e-17 * sum {
            if next < term {
                sum += next;
            }
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    sum / (2.0 * core::f64::consts::PI * x).sqrt()
}

/// `I0(x) - 1` without cancellation for small `x`.
pub fn bessel_i0_minus_one(x: f64) -> f64 {
    let x = x.abs();
    if x < I0_CROSSOVER {
        i0_series_tail(x)
    } else {
        bessel_i0(x) - 1.0
    }
}

// sum_{k>=1} (x/2)^{2k} / (k!)^2
fn i0_series_tail(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term <= 1e-17 * sum || term == 0.0 {
            return sum;
        }
        k += 1.0;
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}
