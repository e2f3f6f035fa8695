//! DAFT-domain effective channel `H_eff = A H A^H`.
//!
//! Each integer delay-Doppler path contributes one cyclic diagonal: output row
//! `p` couples to input column `q = (p + alpha + (2 alpha_c1 + 1) L) mod N` with
//! unit-modulus weight `exp(j 2pi/N (N c1 L^2 - q L + N c2 (q^2 - p^2)))`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::config::AfdmConfig;
use crate::transform::cis_cycles;

/// Sparse N x N matrix stored as cyclic diagonals.
///
/// Diagonal `offset` holds entries `(p, (p + offset) mod N)` for every row `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseChannelMatrix {
    n: usize,
    diagonals: BTreeMap<usize, Vec<Complex64>>,
}

impl SparseChannelMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseChannelMatrix { n, diagonals: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        m.add_diagonal(0, vec![Complex64::new(1.0, 0.0); n]);
        m
    }

    /// Builds a matrix from a main diagonal.
    pub fn from_diagonal(d: Vec<Complex64>) -> Self {
        let mut m = Self::zeros(d.len());
        m.add_diagonal(0, d);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `values` onto diagonal `offset`, summing with anything already there.
    pub fn add_diagonal(&mut self, offset: usize, values: Vec<Complex64>) {
        assert_eq!(values.len(), self.n, "diagonal length must equal N");
        let offset = offset % self.n;
        match self.diagonals.get_mut(&offset) {
            Some(existing) => existing.iter_mut().zip(values).for_each(|(a, b)| *a += b),
            None => {
                self.diagonals.insert(offset, values);
            }
        }
    }

    pub fn diagonals(&self) -> impl Iterator<Item = (usize, &[Complex64])> {
        self.diagonals.iter().map(|(o, v)| (*o, v.as_slice()))
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.diagonals.keys().copied().collect()
    }

    /// Count of entries that are not exactly zero.
    pub fn nnz(&self) -> usize {
        self.diagonals.values().flatten().filter(|v| **v != Complex64::new(0.0, 0.0)).count()
    }

    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        let offset = (q + self.n - p % self.n) % self.n;
        self.diagonals.get(&offset).map_or(Complex64::new(0.0, 0.0), |d| d[p])
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (&off, d) in &self.diagonals {
            for p in 0..n {
                y[p] += d[p] * x[(p + off) % n];
            }
        }
        y
    }

    pub fn adjoint_mul_vec(&self, y: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (&off, d) in &self.diagonals {
            for p in 0..n {
                x[(p + off) % n] += d[p].conj() * y[p];
            }
        }
        x
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for (&off, d) in &self.diagonals {
            for p in 0..n {
                m[(p, (p + off) % n)] += d[p];
            }
        }
        m
    }
}

/// Column offset `(alpha + (2 alpha_c1 + 1) L) mod N` of a path in `H_eff`.
pub fn column_offset(cfg: &AfdmConfig, delay: usize, doppler: i64) -> usize {
    let n = cfg.n() as i128;
    (doppler as i128 + cfg.delay_stride() as i128 * delay as i128).rem_euclid(n) as usize
}

/// Unit-modulus weight of entry `(p, q)` for a path of delay `delay`, in cycles.
pub(crate) fn entry_phase_cycles(cfg: &AfdmConfig, delay: usize, p: usize, q: usize) -> f64 {
    let n = cfg.n() as i128;
    let l = delay as i128;
    let k1 = (cfg.c1_numer() as i128 * ((l * l) % (2 * n))).rem_euclid(2 * n);
    let k2 = (q as i128 * l).rem_euclid(n);
    let exact = (k1 - 2 * k2).rem_euclid(2 * n) as f64 / (2 * n) as f64;
    exact + cfg.c2_cycles_sq(q as i64) - cfg.c2_cycles_sq(p as i64)
}

pub fn entry_phase(cfg: &AfdmConfig, delay: usize, p: usize, q: usize) -> Complex64 {
    cis_cycles(entry_phase_cycles(cfg, delay, p, q))
}

/// The cyclic diagonal contributed by a single path.
pub fn path_diagonal(cfg: &AfdmConfig, gain: Complex64, delay: usize, doppler: i64) -> (usize, Vec<Complex64>) {
    let n = cfg.n();
    let offset = column_offset(cfg, delay, doppler);
    let values = (0..n).map(|p| gain * entry_phase(cfg, delay, p, (p + offset) % n)).collect();
    (offset, values)
}

pub fn build_effective_channel(cfg: &AfdmConfig, chan: &ChannelRealization) -> SparseChannelMatrix {
    let mut m = SparseChannelMatrix::zeros(cfg.n());
    for path in chan.paths() {
        let (offset, values) = path_diagonal(cfg, path.gain, path.delay, path.doppler);
        m.add_diagonal(offset, values);
    }
    m
}

/// `sum_{k=0}^{n-1} exp(-j 2pi shift k / n)` via the geometric-series ratio.
pub fn geometric_sum_closed(n: usize, shift: f64) -> Complex64 {
    let turns = shift / n as f64;
    if turns == turns.round() {
        return Complex64::new(n as f64, 0.0);
    }
    (cis_cycles(-shift) - 1.0) / (cis_cycles(-turns) - 1.0)
}

/// The inner sum of the per-path input-output kernel for output `p`, input `q`.
///
/// Equals `n` when `q = p + alpha + (2 alpha_c1 + 1) delay (mod n)` and zero otherwise.
pub fn geometric_sum_kernel(n: usize, p: usize, q: usize, alpha: i64, delay: usize, alpha_c1: u64) -> Complex64 {
    let shift = p as i64 - q as i64 + alpha + (2 * alpha_c1 as i64 + 1) * delay as i64;
    geometric_sum_closed(n, shift as f64)
}

/// Whether `(p, q)` lies on the diagonal of a path with the given delay and Doppler.
pub fn separation_indicator(n: usize, p: usize, q: usize, alpha: i64, delay: usize, alpha_c1: u64) -> bool {
    let target = (p as i64 + alpha + (2 * alpha_c1 as i64 + 1) * delay as i64).rem_euclid(n as i64);
    target == q as i64
}
