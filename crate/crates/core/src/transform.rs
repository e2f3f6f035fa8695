//! DAFT / IDAFT and the chirp-periodic prefix.
//!
//! The transform is factored as chirp, FFT, chirp: `A^H = L1^H F^H L2^H` with
//! `L1 = diag(exp(-j2pi c1 n^2))` and `L2 = diag(exp(-j2pi c2 m^2))`. Both
//! directions carry the `1/sqrt(N)` factor so `A` is unitary.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::config::AfdmConfig;
use crate::error::{AfdmError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal {
    pub samples: Vec<Complex64>,
    pub has_prefix: bool,
    pub body_len: usize,
}

impl TimeSignal {
    pub fn new(samples: Vec<Complex64>) -> Self {
        let body_len = samples.len();
        TimeSignal { samples, has_prefix: false, body_len }
    }

    pub fn prefix_len(&self) -> usize {
        self.samples.len() - self.body_len
    }

    /// Samples after the prefix.
    pub fn body(&self) -> &[Complex64] {
        &self.samples[self.prefix_len()..]
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DaftSymbols {
    pub values: Vec<Complex64>,
}

impl DaftSymbols {
    pub fn new(values: Vec<Complex64>) -> Self {
        DaftSymbols { values }
    }

    pub fn zeros(n: usize) -> Self {
        DaftSymbols { values: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|s| s.norm_sqr()).sum()
    }
}

pub(crate) fn cis_cycles(cycles: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * cycles)
}

/// Precomputed chirps and FFT plans for one `(N, c1, c2)` triple.
///
/// Reuse one instance when transforming many frames with the same parameters.
pub struct Daft {
    n: usize,
    chirp1: Vec<Complex64>,
    chirp2: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl Daft {
    pub fn new(cfg: &AfdmConfig) -> Self {
        let n = cfg.n();
        let chirp1 = (0..n).map(|k| cis_cycles(cfg.c1_cycles_sq(k as i64))).collect();
        let chirp2 = (0..n).map(|k| cis_cycles(cfg.c2_cycles_sq(k as i64))).collect();
        let mut planner = FftPlanner::new();
        Daft {
            n,
            chirp1,
            chirp2,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            scale: 1.0 / (n as f64).sqrt(),
        }
    }

    /// `s = A^H x`.
    pub fn modulate(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x.len(), "DAFT symbols")?;
        let mut buf: Vec<Complex64> = x.iter().zip(&self.chirp2).map(|(v, c)| v * c).collect();
        self.inverse.process(&mut buf);
        for (v, c) in buf.iter_mut().zip(&self.chirp1) {
            *v *= c * self.scale;
        }
        Ok(buf)
    }

    /// `y = A r`.
    pub fn demodulate(&self, r: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(r.len(), "time samples")?;
        let mut buf: Vec<Complex64> = r.iter().zip(&self.chirp1).map(|(v, c)| v * c.conj()).collect();
        self.forward.process(&mut buf);
        for (v, c) in buf.iter_mut().zip(&self.chirp2) {
            *v *= c.conj() * self.scale;
        }
        Ok(buf)
    }

    fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.n {
            return Err(AfdmError::InputShape(format!("{what}: expected {} values, got {len}", self.n)));
        }
        Ok(())
    }
}

pub fn idaft_modulate(cfg: &AfdmConfig, x: &DaftSymbols) -> Result<TimeSignal> {
    Ok(TimeSignal::new(Daft::new(cfg).modulate(&x.values)?))
}

pub fn daft_demodulate(cfg: &AfdmConfig, r: &TimeSignal) -> Result<DaftSymbols> {
    if r.has_prefix {
        return Err(AfdmError::State("prefix must be removed before demodulation".into()));
    }
    Ok(DaftSymbols::new(Daft::new(cfg).demodulate(&r.samples)?))
}

/// Phase factor applied to prefix sample `n` (negative), `exp(-j2pi c1 (N^2 + 2 N n))`.
///
/// Evaluated exactly: `c1 (N^2 + 2Nn) = (2 alpha_c1 + 1)(N + 2n) / 2`, so the
/// factor is `+1` or `-1`, and always `+1` for even `N`.
pub fn cpp_phase(cfg: &AfdmConfig, n: i64) -> Complex64 {
    let k = cfg.c1_numer() as i128 * (cfg.n() as i128 + 2 * n as i128);
    if k.rem_euclid(2) == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(-1.0, 0.0)
    }
}

pub fn add_cpp(cfg: &AfdmConfig, s: &TimeSignal) -> Result<TimeSignal> {
    if s.has_prefix {
        return Err(AfdmError::State("signal already carries a prefix".into()));
    }
    let n = cfg.n();
    if s.samples.len() != n {
        return Err(AfdmError::InputShape(format!("expected {n} samples, got {}", s.samples.len())));
    }
    let lcp = cfg.cpp_len();
    if lcp > n {
        return Err(AfdmError::Config(format!("prefix of {lcp} samples exceeds frame length {n}")));
    }
    let mut samples = Vec::with_capacity(n + lcp);
    for k in -(lcp as i64)..0 {
        samples.push(s.samples[(n as i64 + k) as usize] * cpp_phase(cfg, k));
    }
    samples.extend_from_slice(&s.samples);
    Ok(TimeSignal { samples, has_prefix: true, body_len: n })
}

pub fn remove_cpp(cfg: &AfdmConfig, r: &TimeSignal) -> Result<TimeSignal> {
    if !r.has_prefix {
        return Err(AfdmError::State("signal has no prefix to remove".into()));
    }
    if r.prefix_len() != cfg.cpp_len() {
        return Err(AfdmError::InputShape(format!(
            "prefix has {} samples but configuration expects {}",
            r.prefix_len(),
            cfg.cpp_len()
        )));
    }
    Ok(TimeSignal::new(r.body().to_vec()))
}
