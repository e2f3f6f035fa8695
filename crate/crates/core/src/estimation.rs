//! Pilot-based path detection and effective-channel reconstruction.
//!
//! The receiver scans a `(l, alpha)` grid bounded by its own `l_max` and
//! `alpha_c1`. Each grid point maps to one output index through the same
//! offset map used by [`build_effective_channel`](crate::effective::build_effective_channel),
//! so a receiver whose window exceeds the guard reads data symbols as paths.

use num_complex::Complex64;

use crate::config::AfdmConfig;
use crate::effective::{entry_phase, path_diagonal, SparseChannelMatrix};
use crate::error::{AfdmError, Result};
use crate::frame::FrameLayout;
use crate::transform::DaftSymbols;

pub const DEFAULT_DETECTION_THRESHOLD: f64 = 0.05;

/// Absolute detection floor in units of `sqrt(n0) / pilot_amplitude`.
pub const NOISE_FLOOR_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverParams {
    pub alpha_c1_rx: u64,
    pub c2_rx: f64,
    pub l_max_rx: u64,
    /// Fraction of the strongest candidate a path must exceed.
    pub detection_threshold: f64,
}

impl ReceiverParams {
    pub fn new(alpha_c1_rx: u64, c2_rx: f64, l_max_rx: u64, detection_threshold: f64) -> Result<Self> {
        if !(detection_threshold > 0.0 && detection_threshold < 1.0) {
            return Err(AfdmError::Config(format!("detection threshold must lie in (0, 1), got {detection_threshold}")));
        }
        if !c2_rx.is_finite() {
            return Err(AfdmError::Config(format!("receiver c2 must be finite, got {c2_rx}")));
        }
        Ok(ReceiverParams { alpha_c1_rx, c2_rx, l_max_rx, detection_threshold })
    }

    /// A receiver sharing the transmitter's chirps with `l_max = L_max`.
    pub fn matched(tx: &AfdmConfig) -> Self {
        ReceiverParams {
            alpha_c1_rx: tx.alpha_c1(),
            c2_rx: tx.c2(),
            l_max_rx: tx.l_guard_max(),
            detection_threshold: DEFAULT_DETECTION_THRESHOLD,
        }
    }

    /// Binds these parameters to a frame geometry.
    pub fn bind(&self, frame: &AfdmConfig) -> RxConfig {
        RxConfig { cfg: frame.with_chirps(self.alpha_c1_rx, self.c2_rx), params: *self }
    }
}

/// Frame geometry seen through a particular receiver's chirps.
#[derive(Debug, Clone, PartialEq)]
pub struct RxConfig {
    pub cfg: AfdmConfig,
    pub params: ReceiverParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathEstimate {
    pub gain_hat: Complex64,
    pub delay_hat: usize,
    pub doppler_hat: i64,
}

/// Matched-filter scan of the pilot response.
///
/// For each candidate `(l, alpha)` the gain is read from the output index the
/// pilot would reach and de-rotated by the expected entry phase. Candidates
/// above `max(threshold * peak, 4 sqrt(n0) / pilot_amplitude)` are returned in
/// grid order (delay-major). An empty result means nothing was detected.
pub fn estimate_channel(rx: &RxConfig, layout: &FrameLayout, y: &DaftSymbols, n0: f64) -> Result<Vec<PathEstimate>> {
    let n = rx.cfg.n();
    if y.len() != n || layout.n != n {
        return Err(AfdmError::InputShape(format!(
            "frame of {} symbols and layout of {} do not match N={n}",
            y.len(),
            layout.n
        )));
    }
    let q0 = layout.pilot_index;
    let amp = layout.pilot_amplitude;
    let stride = rx.cfg.delay_stride() as i128;
    let a = rx.params.alpha_c1_rx as i64;

    let mut candidates = Vec::new();
    for l in 0..=rx.params.l_max_rx as usize {
        for alpha in -a..=a {
            let p = (q0 as i128 - alpha as i128 - stride * l as i128).rem_euclid(n as i128) as usize;
            let phase = entry_phase(&rx.cfg, l, p, q0);
            let gain = y.values[p] * phase.conj() / amp;
            candidates.push(PathEstimate { gain_hat: gain, delay_hat: l, doppler_hat: alpha });
        }
    }
    let peak = candidates.iter().map(|c| c.gain_hat.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(Vec::new());
    }
    let floor = NOISE_FLOOR_FACTOR * n0.sqrt() / amp;
    let threshold = (rx.params.detection_threshold * peak).max(floor);
    Ok(candidates.into_iter().filter(|c| c.gain_hat.norm() > threshold).collect())
}

/// Effective channel implied by a set of estimates under the receiver's chirps.
pub fn reconstruct_heff(rx: &RxConfig, estimates: &[PathEstimate]) -> SparseChannelMatrix {
    let mut m = SparseChannelMatrix::zeros(rx.cfg.n());
    for e in estimates {
        let (offset, values) = path_diagonal(&rx.cfg, e.gain_hat, e.delay_hat, e.doppler_hat);
        m.add_diagonal(offset, values);
    }
    m
}
