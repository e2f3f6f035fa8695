//! Literal, unoptimized evaluations of the transform and channel formulas.
//!
//! These are O(N^2) or dense O(N^3) and exist to cross-check the fast paths,
//! both in tests and in `afdm validate`. Nothing here calls into the
//! FFT-based transform or the sparse effective-channel builder.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;

use crate::transform::cis_cycles;

fn frac_ratio_times(c: Ratio<u64>, k: i128) -> f64 {
    let num = *c.numer() as i128;
    let den = *c.denom() as i128;
    ((num * k).rem_euclid(den)) as f64 / den as f64
}

/// `s_n` of the modulation sum at an arbitrary (possibly negative) time index.
pub fn idaft_direct_at(n: usize, c1: Ratio<u64>, c2: f64, x: &[Complex64], t: i64) -> Complex64 {
    let t = t as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, xm) in x.iter().enumerate() {
        let m = m as i128;
        let cycles = frac_ratio_times(c1, t * t)
            + ((m * t).rem_euclid(n as i128)) as f64 / n as f64
            + (c2.rem_euclid(1.0) * (m * m) as f64).rem_euclid(1.0);
        acc += xm * cis_cycles(cycles);
    }
    acc / (n as f64).sqrt()
}

pub fn idaft_direct(n: usize, c1: Ratio<u64>, c2: f64, x: &[Complex64]) -> Vec<Complex64> {
    (0..n as i64).map(|t| idaft_direct_at(n, c1, c2, x, t)).collect()
}

pub fn daft_direct(n: usize, c1: Ratio<u64>, c2: f64, r: &[Complex64]) -> Vec<Complex64> {
    (0..n as i128)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, rt) in r.iter().enumerate() {
                let t = t as i128;
                let cycles = frac_ratio_times(c1, t * t)
                    + ((m * t).rem_euclid(n as i128)) as f64 / n as f64
                    + (c2.rem_euclid(1.0) * (m * m) as f64).rem_euclid(1.0);
                acc += rt * cis_cycles(-cycles);
            }
            acc / (n as f64).sqrt()
        })
        .collect()
}

/// Prefix samples `s_{N+k} exp(-j2pi c1 (N^2 + 2Nk))`, `k = -lcp..-1`, in float arithmetic.
pub fn cpp_direct(n: usize, c1: f64, s: &[Complex64], lcp: usize) -> Vec<Complex64> {
    let nf = n as f64;
    (-(lcp as i64)..0)
        .map(|k| s[(n as i64 + k) as usize] * cis_cycles(-c1 * (nf * nf + 2.0 * nf * k as f64)))
        .collect()
}

/// Dense DAFT matrix `A`, `A[m, t] = exp(-j2pi(c1 t^2 + m t / N + c2 m^2)) / sqrt(N)`.
pub fn daft_matrix(n: usize, c1: Ratio<u64>, c2: f64) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(n, n);
    for t in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[t] = Complex64::new(1.0, 0.0);
        let col = daft_direct(n, c1, c2, &e);
        for m in 0..n {
            a[(m, t)] = col[m];
        }
    }
    a
}

/// Dense time-domain channel `sum_i h_i Gamma_i Delta_i Pi^{L_i}`.
///
/// `paths` holds `(gain, delay, doppler)`.
pub fn channel_time_matrix(n: usize, c1: f64, paths: &[(Complex64, usize, i64)]) -> DMatrix<Complex64> {
    let nf = n as f64;
    let mut h = DMatrix::zeros(n, n);
    for &(gain, delay, doppler) in paths {
        // Pi^L: forward cyclic shift, (Pi^L s)_t = s_{t - L}.
        let mut shift = DMatrix::zeros(n, n);
        for t in 0..n {
            shift[(t, (t + n - delay % n) % n)] = Complex64::new(1.0, 0.0);
        }
        let mut diag = DMatrix::zeros(n, n);
        for t in 0..n {
            let doppler_phase = cis_cycles(-(doppler as f64) * t as f64 / nf);
            let gamma = if t < delay {
                cis_cycles(-c1 * (nf * nf - 2.0 * nf * (delay as f64 - t as f64)))
            } else {
                Complex64::new(1.0, 0.0)
            };
            diag[(t, t)] = gamma * doppler_phase;
        }
        h += (diag * shift) * gain;
    }
    h
}

/// `A H A^H` by explicit dense products.
pub fn effective_channel_dense(
    n: usize,
    c1: Ratio<u64>,
    c2: f64,
    paths: &[(Complex64, usize, i64)],
) -> DMatrix<Complex64> {
    let c1f = *c1.numer() as f64 / *c1.denom() as f64;
    let a = daft_matrix(n, c1, c2);
    let h = channel_time_matrix(n, c1f, paths);
    &a * h * a.adjoint()
}

/// `sum_{k=0}^{n-1} exp(-j 2pi shift k / n)` by direct accumulation.
pub fn geometric_sum_brute(n: usize, shift: f64) -> Complex64 {
    (0..n).map(|k| cis_cycles(-shift * k as f64 / n as f64)).sum()
}
