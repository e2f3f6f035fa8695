//! Embedded-pilot frame: one pilot, a null guard on both sides, data elsewhere.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::config::{guard_half_width, pilot_region_len, AfdmConfig};
use crate::error::{AfdmError, Result};
use crate::transform::DaftSymbols;

#[derive(Debug, Clone, PartialEq)]
pub struct FrameLayout {
    pub n: usize,
    pub pilot_index: usize,
    pub pilot_amplitude: f64,
    pub guard_indices: Vec<usize>,
    pub data_indices: Vec<usize>,
}

/// Pilot amplitude giving `pilot energy / n0 = 10^(pilot_snr_db / 10)`.
pub fn pilot_amplitude_for(pilot_snr_db: f64, n0: f64) -> f64 {
    (10f64.powf(pilot_snr_db / 10.0) * n0).sqrt()
}

/// Places the pilot at `G` with nulls on `[0, G)` and `(G, 2G]`, where
/// `G = (2 alpha_max + 1) L_max + 2 alpha_max`. Data fills `(2G, N)`.
///
/// The pilot amplitude defaults to one; see [`FrameLayout::with_pilot_amplitude`].
pub fn build_frame_layout(cfg: &AfdmConfig) -> Result<FrameLayout> {
    let n = cfg.n();
    let g = guard_half_width(cfg.alpha_max(), cfg.l_guard_max());
    let occupied = pilot_region_len(cfg.alpha_max(), cfg.l_guard_max());
    if occupied >= n {
        return Err(AfdmError::Config(format!("pilot region of {occupied} symbols leaves no data in a frame of {n}")));
    }
    let guard_indices = (0..g).chain(g + 1..=2 * g).collect();
    let data_indices = (occupied..n).collect();
    Ok(FrameLayout { n, pilot_index: g, pilot_amplitude: 1.0, guard_indices, data_indices })
}

impl FrameLayout {
    pub fn with_pilot_amplitude(mut self, amplitude: f64) -> Self {
        self.pilot_amplitude = amplitude;
        self
    }

    /// Assembles a DAFT frame from data symbols in layout order.
    pub fn compose(&self, data: &[Complex64]) -> Result<DaftSymbols> {
        if data.len() != self.data_indices.len() {
            return Err(AfdmError::InputShape(format!(
                "layout holds {} data symbols, got {}",
                self.data_indices.len(),
                data.len()
            )));
        }
        let mut x = DaftSymbols::zeros(self.n);
        x.values[self.pilot_index] = Complex64::new(self.pilot_amplitude, 0.0);
        for (&i, &d) in self.data_indices.iter().zip(data) {
            x.values[i] = d;
        }
        Ok(x)
    }

    /// Extracts data symbols in layout order.
    pub fn data_of(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.data_indices.iter().map(|&i| x[i]).collect()
    }

    /// Output indices a receiver scans for a pilot response: one per
    /// `(l, alpha)` with `l <= l_max_rx`, `|alpha| <= alpha_c1_rx`.
    pub fn estimation_window(&self, alpha_c1_rx: u64, l_max_rx: u64) -> BTreeSet<usize> {
        let n = self.n as i128;
        let stride = 2 * alpha_c1_rx as i128 + 1;
        let a = alpha_c1_rx as i128;
        let mut out = BTreeSet::new();
        for l in 0..=l_max_rx as i128 {
            for alpha in -a..=a {
                out.insert((self.pilot_index as i128 - alpha - stride * l).rem_euclid(n) as usize);
            }
        }
        out
    }

    /// Output indices that can receive energy from a data symbol under a
    /// channel bounded by `(max_delay, max_doppler)` and transmit `alpha_c1`.
    pub fn data_footprint(&self, alpha_c1_tx: u64, max_delay: u64, max_doppler: u64) -> BTreeSet<usize> {
        let n = self.n as i128;
        let stride = 2 * alpha_c1_tx as i128 + 1;
        let a = max_doppler as i128;
        let mut out = BTreeSet::new();
        for &q in &self.data_indices {
            for l in 0..=max_delay as i128 {
                for alpha in -a..=a {
                    out.insert((q as i128 - alpha - stride * l).rem_euclid(n) as usize);
                }
            }
        }
        out
    }

    /// Output indices reachable from the pilot under the same bounds.
    pub fn pilot_footprint(&self, alpha_c1_tx: u64, max_delay: u64, max_doppler: u64) -> BTreeSet<usize> {
        let n = self.n as i128;
        let stride = 2 * alpha_c1_tx as i128 + 1;
        let a = max_doppler as i128;
        let mut out = BTreeSet::new();
        for l in 0..=max_delay as i128 {
            for alpha in -a..=a {
                out.insert((self.pilot_index as i128 - alpha - stride * l).rem_euclid(n) as usize);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::generate_channel;
    use crate::config::make_config;
    use crate::effective::build_effective_channel;

    fn partition_ok(l: &FrameLayout) {
        let mut all: Vec<usize> = l.guard_indices.iter().chain(&l.data_indices).copied().collect();
        all.push(l.pilot_index);
        all.sort_unstable();
        assert_eq!(all, (0..l.n).collect::<Vec<_>>());
    }

    #[test]
    fn n512_frame_sizes() {
        let cfg = make_config(512, 7, 0.0, 7, 7).unwrap();
        let l = build_frame_layout(&cfg).unwrap();
        assert_eq!(l.guard_indices.len() + 1, 239);
        assert_eq!(l.data_indices.len(), 273);
        assert_eq!(l.pilot_index, 119);
        partition_ok(&l);
    }

    #[test]
    fn degenerate_guard() {
        let cfg = make_config(16, 0, 0.0, 0, 0).unwrap();
        let l = build_frame_layout(&cfg).unwrap();
        assert!(l.guard_indices.is_empty());
        assert_eq!(l.pilot_index, 0);
        assert_eq!(l.data_indices.len(), 15);
        partition_ok(&l);
    }

    #[test]
    fn guard_covers_worst_case_pilot_footprint() {
        for (am, lm) in [(0u64, 0u64), (1, 1), (3, 5), (7, 7), (2, 4)] {
            let cfg = make_config(512, am, 0.0, am, lm).unwrap();
            let l = build_frame_layout(&cfg).unwrap();
            let guard: BTreeSet<usize> = l.guard_indices.iter().copied().chain([l.pilot_index]).collect();
            for a in 0..=am {
                assert!(l.pilot_footprint(a, lm, am).is_subset(&guard));
                // In-bound windows never see data.
                let w = l.estimation_window(a, lm);
                assert!(w.is_disjoint(&l.data_footprint(a, lm, am)));
            }
        }
    }

    #[test]
    fn noiseless_pilot_energy_stays_in_guard() {
        let cfg = make_config(512, 5, 0.3, 7, 7).unwrap();
        let l = build_frame_layout(&cfg).unwrap().with_pilot_amplitude(3.0);
        let pilot_only = l.compose(&vec![Complex64::new(0.0, 0.0); l.data_indices.len()]).unwrap();
        for seed in 0..10 {
            let ch = generate_channel(seed, 6, 5, 3).unwrap();
            let y = build_effective_channel(&cfg, &ch).mul_vec(&pilot_only.values);
            assert!(l.data_indices.iter().all(|&i| y[i].norm() < 1e-12));
            let e: f64 = y.iter().map(|v| v.norm_sqr()).sum();
            assert!(e > 0.0);
        }
    }

    #[test]
    fn window_beyond_guard_sees_data() {
        let cfg = make_config(512, 3, 0.0, 3, 7).unwrap();
        let l = build_frame_layout(&cfg).unwrap();
        let data = l.data_footprint(3, 5, 3);
        assert!(l.estimation_window(3, 7).is_disjoint(&data));
        assert!(!l.estimation_window(3, 8).is_disjoint(&data));
        assert!(!l.estimation_window(4, 7).is_disjoint(&l.data_footprint(4, 5, 3)));
    }

    #[test]
    fn compose_and_extract() {
        let cfg = make_config(64, 1, 0.0, 1, 2).unwrap();
        let l = build_frame_layout(&cfg).unwrap().with_pilot_amplitude(2.0);
        let data: Vec<_> = (0..l.data_indices.len()).map(|k| Complex64::new(k as f64, 0.0)).collect();
        let x = l.compose(&data).unwrap();
        assert_eq!(x.values[l.pilot_index], Complex64::new(2.0, 0.0));
        assert!(l.guard_indices.iter().all(|&i| x.values[i] == Complex64::new(0.0, 0.0)));
        assert_eq!(l.data_of(&x.values), data);
        assert!(l.compose(&data[1..]).is_err());
    }

    #[test]
    fn pilot_amplitude_policy() {
        assert!((pilot_amplitude_for(40.0, 0.01) - 10.0).abs() < 1e-12);
        assert!((pilot_amplitude_for(40.0, 1.0) - 100.0).abs() < 1e-12);
    }
}
