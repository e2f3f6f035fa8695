//! Random integer delay-Doppler channels, their time-domain application and AWGN.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::AfdmConfig;
use crate::error::{AfdmError, Result};
use crate::transform::{cis_cycles, TimeSignal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPath {
    pub gain: Complex64,
    /// Delay in samples.
    pub delay: usize,
    /// Integer Doppler bin; the digital Doppler is `doppler / N`.
    pub doppler: i64,
}

impl ChannelPath {
    pub fn new(gain: Complex64, delay: usize, doppler: i64) -> Self {
        ChannelPath { gain, delay, doppler }
    }
}

/// A set of paths with pairwise distinct delays.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    paths: Vec<ChannelPath>,
    max_delay: usize,
    max_doppler: u64,
}

impl ChannelRealization {
    pub fn new(paths: Vec<ChannelPath>) -> Result<Self> {
        if paths.is_empty() {
            return Err(AfdmError::Config("a channel needs at least one path".into()));
        }
        let mut delays: Vec<usize> = paths.iter().map(|p| p.delay).collect();
        delays.sort_unstable();
        if delays.windows(2).any(|w| w[0] == w[1]) {
            return Err(AfdmError::Config("path delays must be distinct".into()));
        }
        let max_delay = *delays.last().unwrap();
        let max_doppler = paths.iter().map(|p| p.doppler.unsigned_abs()).max().unwrap();
        Ok(ChannelRealization { paths, max_delay, max_doppler })
    }

    pub fn paths(&self) -> &[ChannelPath] {
        &self.paths
    }

    pub fn max_delay(&self) -> usize {
        self.max_delay
    }

    pub fn max_doppler(&self) -> u64 {
        self.max_doppler
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Complex noise variance per sample.
    pub n0: f64,
}

impl NoiseSpec {
    pub fn new(n0: f64) -> Result<Self> {
        if !n0.is_finite() || n0 < 0.0 {
            return Err(AfdmError::Config(format!("noise variance must be finite and non-negative, got {n0}")));
        }
        Ok(NoiseSpec { n0 })
    }

    pub fn noiseless() -> Self {
        NoiseSpec { n0: 0.0 }
    }

    /// `n0 = 10^(-snr_db / 10)` for unit-energy symbols.
    pub fn from_snr_db(snr_db: f64) -> Self {
        NoiseSpec { n0: 10f64.powf(-snr_db / 10.0) }
    }
}

/// Draws a channel with distinct delays in `0..=max_delay`.
///
/// Delay `max_delay` is always present, delay 0 whenever there are at least two
/// paths, and one path is forced to `|doppler| = max_doppler`. Gains are
/// `CN(0, 1/num_paths)`, so the expected channel energy is one.
pub fn generate_channel(rng_seed: u64, num_paths: usize, max_delay: usize, max_doppler: u64) -> Result<ChannelRealization> {
    if num_paths == 0 {
        return Err(AfdmError::Config("num_paths must be positive".into()));
    }
    if num_paths > max_delay + 1 {
        return Err(AfdmError::Config(format!(
            "{num_paths} paths cannot have distinct delays within 0..={max_delay}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

    let mut delays = vec![max_delay];
    if num_paths >= 2 && max_delay > 0 {
        delays.push(0);
    }
    let mut interior: Vec<usize> = (1..max_delay).collect();
    interior.shuffle(&mut rng);
    delays.extend(interior.into_iter().take(num_paths - delays.len()));
    delays.shuffle(&mut rng);

    let md = max_doppler as i64;
    let mut dopplers: Vec<i64> = (0..num_paths).map(|_| rng.gen_range(-md..=md)).collect();
    let forced = rng.gen_range(0..num_paths);
    dopplers[forced] = if rng.gen() { md } else { -md };

    let sigma = (0.5 / num_paths as f64).sqrt();
    let paths = delays
        .into_iter()
        .zip(dopplers)
        .map(|(delay, doppler)| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            ChannelPath::new(Complex64::new(re * sigma, im * sigma), delay, doppler)
        })
        .collect();
    ChannelRealization::new(paths)
}

/// i.i.d. `CN(0, n0)` samples. The same seed gives the same draws scaled by `sqrt(n0)`.
pub fn awgn(len: usize, n0: f64, rng_seed: u64) -> Vec<Complex64> {
    if n0 == 0.0 {
        return vec![Complex64::new(0.0, 0.0); len];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let sigma = (n0 / 2.0).sqrt();
    (0..len)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * sigma, im * sigma)
        })
        .collect()
}

/// Applies `r_n = sum_i h_i exp(-j2pi alpha_i n / N) s_{n - L_i} + w_n` to a prefixed signal.
///
/// Time index 0 is the first body sample; prefix samples carry negative indices
/// and provide the history for delayed paths. Samples before the prefix are zero.
pub fn apply_channel(
    cfg: &AfdmConfig,
    chan: &ChannelRealization,
    s: &TimeSignal,
    noise: NoiseSpec,
    rng_seed: u64,
) -> Result<TimeSignal> {
    if !s.has_prefix {
        return Err(AfdmError::State("channel input must carry its prefix".into()));
    }
    let lcp = s.prefix_len();
    if lcp < chan.max_delay() {
        return Err(AfdmError::Config(format!(
            "prefix of {lcp} samples is shorter than the channel's maximum delay {}",
            chan.max_delay()
        )));
    }
    let n = cfg.n() as i64;
    let len = s.samples.len();
    let mut out = awgn(len, noise.n0, rng_seed);
    for path in chan.paths() {
        for (i, o) in out.iter_mut().enumerate().skip(path.delay) {
            let t = i as i64 - lcp as i64;
            let doppler = cis_cycles(-((path.doppler * t).rem_euclid(n) as f64) / n as f64);
            *o += path.gain * doppler * s.samples[i - path.delay];
        }
    }
    Ok(TimeSignal { samples: out, has_prefix: true, body_len: s.body_len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::make_config;
    use crate::transform::{add_cpp, idaft_modulate, DaftSymbols};

    #[test]
    fn six_path_delay_profile_is_a_permutation() {
        for seed in 0..20 {
            let ch = generate_channel(seed, 6, 5, 3).unwrap();
            let mut d: Vec<_> = ch.paths().iter().map(|p| p.delay).collect();
            d.sort_unstable();
            assert_eq!(d, vec![0, 1, 2, 3, 4, 5]);
            assert_eq!(ch.max_delay(), 5);
            assert_eq!(ch.max_doppler(), 3);
            assert!(ch.paths().iter().all(|p| p.doppler.abs() <= 3));
        }
    }

    #[test]
    fn partial_delay_profile_keeps_endpoints() {
        for seed in 0..20 {
            let ch = generate_channel(seed, 3, 7, 2).unwrap();
            let d: Vec<_> = ch.paths().iter().map(|p| p.delay).collect();
            assert!(d.contains(&0) && d.contains(&7));
            assert_eq!(ch.max_doppler(), 2);
        }
    }

    #[test]
    fn flat_channel() {
        let ch = generate_channel(9, 1, 0, 0).unwrap();
        assert_eq!(ch.paths().len(), 1);
        assert_eq!(ch.paths()[0].delay, 0);
        assert_eq!(ch.paths()[0].doppler, 0);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(generate_channel(42, 6, 5, 3).unwrap(), generate_channel(42, 6, 5, 3).unwrap());
        assert_ne!(generate_channel(42, 6, 5, 3).unwrap(), generate_channel(43, 6, 5, 3).unwrap());
    }

    #[test]
    fn too_many_paths() {
        assert!(matches!(generate_channel(0, 7, 5, 3), Err(AfdmError::Config(_))));
        assert!(matches!(generate_channel(0, 0, 5, 3), Err(AfdmError::Config(_))));
    }

    #[test]
    fn duplicate_delays_rejected() {
        let c = Complex64::new(1.0, 0.0);
        assert!(ChannelRealization::new(vec![ChannelPath::new(c, 1, 0), ChannelPath::new(c, 1, 2)]).is_err());
        assert!(ChannelRealization::new(vec![]).is_err());
    }

    fn prefixed(cfg: &AfdmConfig) -> TimeSignal {
        let x: Vec<_> = (0..cfg.n()).map(|k| Complex64::new((k % 3) as f64 - 1.0, (k % 5) as f64 * 0.2)).collect();
        add_cpp(cfg, &idaft_modulate(cfg, &DaftSymbols::new(x)).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_scalar_channels() {
        let cfg = make_config(32, 1, 0.2, 1, 2).unwrap();
        let s = prefixed(&cfg);
        let id = ChannelRealization::new(vec![ChannelPath::new(Complex64::new(1.0, 0.0), 0, 0)]).unwrap();
        let r = apply_channel(&cfg, &id, &s, NoiseSpec::noiseless(), 0).unwrap();
        assert_eq!(r, s);

        let half_j = Complex64::new(0.0, 0.5);
        let sc = ChannelRealization::new(vec![ChannelPath::new(half_j, 0, 0)]).unwrap();
        let r = apply_channel(&cfg, &sc, &s, NoiseSpec::noiseless(), 0).unwrap();
        for (a, b) in r.samples.iter().zip(&s.samples) {
            assert!((a - half_j * b).norm() < 1e-15);
        }
    }

    #[test]
    fn short_prefix_is_a_config_error() {
        let cfg = make_config(32, 1, 0.2, 1, 2).unwrap();
        let s = prefixed(&cfg);
        let ch = ChannelRealization::new(vec![ChannelPath::new(Complex64::new(1.0, 0.0), 3, 0)]).unwrap();
        assert!(matches!(apply_channel(&cfg, &ch, &s, NoiseSpec::noiseless(), 0), Err(AfdmError::Config(_))));
        let bare = TimeSignal::new(vec![Complex64::new(0.0, 0.0); 32]);
        assert!(matches!(apply_channel(&cfg, &ch, &bare, NoiseSpec::noiseless(), 0), Err(AfdmError::State(_))));
    }

    #[test]
    fn awgn_statistics() {
        assert!(awgn(100, 0.0, 1).iter().all(|v| v.norm() == 0.0));
        let w = awgn(100_000, 1.0, 7);
        let var = w.iter().map(|v| v.norm_sqr()).sum::<f64>() / w.len() as f64;
        assert!((var - 1.0).abs() < 0.02, "variance {var}");
        let mean: Complex64 = w.iter().sum::<Complex64>() / w.len() as f64;
        assert!(mean.norm() < 0.02);
        let a = awgn(16, 1.0, 3);
        let b = awgn(16, 4.0, 3);
        for (x, y) in a.iter().zip(&b) {
            assert!((2.0 * x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn noise_spec_validation() {
        assert!(NoiseSpec::new(-1.0).is_err());
        assert!(NoiseSpec::new(f64::NAN).is_err());
        assert!((NoiseSpec::from_snr_db(20.0).n0 - 0.01).abs() < 1e-15);
    }
}
