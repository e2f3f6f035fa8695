//! Frame configuration shared by every stage of the chain.
//!
//! The first chirp rate is never held as a float. It is kept as the integer
//! Doppler-separation capability `alpha_c1` together with the frame length, so
//! `2 N c1 = 2 alpha_c1 + 1` holds exactly and every `c1`-dependent phase can be
//! reduced modulo one with integer arithmetic.

use num_rational::Ratio;

use crate::error::{AfdmError, Result};

/// Number of null symbols the guard needs on each side of the pilot.
///
/// A pilot at input index `q0` lands on outputs `q0 - alpha - (2 alpha_c1 + 1) l`.
/// Data symbols spread by the same amount, so to keep them out of the
/// estimation window the guard must extend one full window plus one Doppler
/// margin on both sides.
pub fn guard_half_width(alpha_max: u64, l_guard_max: u64) -> usize {
    ((2 * alpha_max + 1) * l_guard_max + 2 * alpha_max) as usize
}

/// Pilot plus guard symbols occupied by the embedded-pilot region.
pub fn pilot_region_len(alpha_max: u64, l_guard_max: u64) -> usize {
    2 * guard_half_width(alpha_max, l_guard_max) + 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct AfdmConfig {
    n: usize,
    alpha_c1: u64,
    c2: f64,
    alpha_max: u64,
    l_guard_max: u64,
    cpp_len: usize,
}

/// Builds a configuration with `c1 = (2 alpha_c1 + 1) / (2 n)` and a prefix of
/// `l_guard_max` samples.
///
/// `c2` is stored verbatim; see [`crate::design::canonicalize_c2`].
pub fn make_config(n: usize, alpha_c1: u64, c2: f64, alpha_max: u64, l_guard_max: u64) -> Result<AfdmConfig> {
    if n < 2 {
        return Err(AfdmError::Config(format!("frame length must be at least 2, got {n}")));
    }
    if !c2.is_finite() {
        return Err(AfdmError::Config(format!("c2 must be finite, got {c2}")));
    }
    let occupied = pilot_region_len(alpha_max, l_guard_max);
    if n <= occupied {
        return Err(AfdmError::Config(format!(
            "frame of {n} symbols cannot hold pilot and guard for alpha_max={alpha_max}, L_max={l_guard_max} \
             ({occupied} symbols) plus at least one data symbol"
        )));
    }
    Ok(AfdmConfig { n, alpha_c1, c2, alpha_max, l_guard_max, cpp_len: l_guard_max as usize })
}

impl AfdmConfig {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha_c1(&self) -> u64 {
        self.alpha_c1
    }

    /// Exact `c1` as the unreduced fraction `(2 alpha_c1 + 1) / (2 n)`.
    pub fn c1(&self) -> Ratio<u64> {
        Ratio::new_raw(self.c1_numer(), 2 * self.n as u64)
    }

    /// `2 n c1`, always odd.
    pub fn c1_numer(&self) -> u64 {
        2 * self.alpha_c1 + 1
    }

    pub fn c1_f64(&self) -> f64 {
        self.c1_numer() as f64 / (2 * self.n) as f64
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn alpha_max(&self) -> u64 {
        self.alpha_max
    }

    pub fn l_guard_max(&self) -> u64 {
        self.l_guard_max
    }

    pub fn cpp_len(&self) -> usize {
        self.cpp_len
    }

    /// Column step between adjacent delay blocks, `2 alpha_c1 + 1`.
    pub fn delay_stride(&self) -> u64 {
        self.c1_numer()
    }

    /// Overrides the prefix length; it may not drop below `l_guard_max`.
    pub fn with_cpp_len(mut self, cpp_len: usize) -> Result<Self> {
        if cpp_len < self.l_guard_max as usize {
            return Err(AfdmError::Config(format!(
                "prefix of {cpp_len} samples is shorter than L_max={}",
                self.l_guard_max
            )));
        }
        self.cpp_len = cpp_len;
        Ok(self)
    }

    /// Same frame and guard, different chirp pair (a receiver's view).
    pub fn with_chirps(&self, alpha_c1: u64, c2: f64) -> Self {
        AfdmConfig { alpha_c1, c2, ..self.clone() }
    }

    /// Phase of `c1 * k^2` in cycles, reduced to `[0, 1)` exactly.
    pub(crate) fn c1_cycles_sq(&self, k: i64) -> f64 {
        let modulus = 2 * self.n as i128;
        let k = k as i128;
        let r = ((self.c1_numer() as i128 % modulus) * ((k * k) % modulus)).rem_euclid(modulus);
        r as f64 / modulus as f64
    }

    /// Fractional part of `c2 * k^2` in cycles.
    pub(crate) fn c2_cycles_sq(&self, k: i64) -> f64 {
        c2_cycles(self.c2, k)
    }
}

pub(crate) fn c2_cycles(c2: f64, k: i64) -> f64 {
    let frac = c2.rem_euclid(1.0);
    let k2 = (k as i128 * k as i128) as f64;
    (frac * k2).rem_euclid(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c1_of_n512_frame() {
        let cfg = make_config(512, 7, 0.3, 7, 7).unwrap();
        assert_eq!(cfg.c1(), Ratio::new(15, 1024));
        assert_eq!(*cfg.c1().numer(), 15);
        assert_eq!(cfg.cpp_len(), 7);
        assert_eq!(cfg.c2(), 0.3);

        let cfg = make_config(512, 3, 0.0, 7, 7).unwrap();
        assert_eq!(cfg.c1(), Ratio::new(7, 1024));
    }

    #[test]
    fn exact_odd_numerator() {
        for alpha in 0..20 {
            let cfg = make_config(512, alpha, 0.0, 7, 7).unwrap();
            assert_eq!(cfg.c1() * 1024, Ratio::from_integer(2 * alpha + 1));
        }
    }

    #[test]
    fn guard_exceeds_frame() {
        assert!(matches!(make_config(8, 7, 0.0, 7, 7), Err(AfdmError::Config(_))));
        assert!(matches!(make_config(1, 0, 0.0, 0, 0), Err(AfdmError::Config(_))));
        // 2*(15*7 + 14) + 1 = 239 occupied, so 239 leaves no data.
        assert!(make_config(239, 7, 0.0, 7, 7).is_err());
        assert!(make_config(240, 7, 0.0, 7, 7).is_ok());
    }

    #[test]
    fn prefix_cannot_shrink_below_guard() {
        let cfg = make_config(64, 1, 0.0, 1, 3).unwrap();
        assert!(cfg.clone().with_cpp_len(2).is_err());
        assert_eq!(cfg.with_cpp_len(5).unwrap().cpp_len(), 5);
    }

    #[test]
    fn c1_phase_reduction_is_exact() {
        let cfg = make_config(16, 1, 0.0, 1, 1).unwrap();
        // c1 = 3/32, k = 5: 75/32 -> 11/32
        assert_eq!(cfg.c1_cycles_sq(5), 11.0 / 32.0);
        assert_eq!(cfg.c1_cycles_sq(-5), 11.0 / 32.0);
    }
}
