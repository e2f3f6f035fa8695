//! Parameter-design rules for secure AFDM.
//!
//! * `c1` must be one of the discrete values `(2k + 1) / (2N)` with
//!   `k` between the channel's actual maximum Doppler and the preset guard.
//! * `c2` has period one, so only its fractional part matters.
//! * Any receiver depth `l_max` within `[L^C_max, L_max]` recovers every path,
//!   which makes that interval a security risk; it is empty of slack only when
//!   `L_max` equals the true maximum delay.

use std::fmt;

use num_rational::Ratio;

use crate::config::AfdmConfig;
use crate::error::{AfdmError, Result};
use crate::estimation::ReceiverParams;

/// Tolerance for deciding that two `c2` values coincide modulo one.
pub const C2_MATCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleC1Set {
    pub n: usize,
    pub alpha_lo: u64,
    pub alpha_hi: u64,
    pub values: Vec<Ratio<u64>>,
}

impl AdmissibleC1Set {
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Doppler-separation capabilities `alpha_c1` of the admissible values.
    pub fn alphas(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.iter().map(|v| (*v.numer() - 1) / 2)
    }

    pub fn contains_alpha(&self, alpha_c1: u64) -> bool {
        (self.alpha_lo..=self.alpha_hi).contains(&alpha_c1)
    }
}

/// Enumerates `c1 = (2k + 1) / (2n)` for `k` in `alpha_c_max..=alpha_max`.
///
/// `k = 0` is included when the channel is Doppler-free.
pub fn admissible_c1(n: usize, alpha_c_max: u64, alpha_max: u64) -> AdmissibleC1Set {
    let values = (alpha_c_max..=alpha_max).map(|k| Ratio::new_raw(2 * k + 1, 2 * n as u64)).collect();
    AdmissibleC1Set { n, alpha_lo: alpha_c_max, alpha_hi: alpha_max, values }
}

/// Reduces `c2` to `[0, 1)`.
pub fn canonicalize_c2(c2: f64) -> f64 {
    let r = c2 - c2.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Whether two `c2` values produce the same waveform, up to [`C2_MATCH_TOLERANCE`].
pub fn c2_equivalent(a: f64, b: f64) -> bool {
    let d = canonicalize_c2(a - b);
    d.min(1.0 - d) <= C2_MATCH_TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecurityRiskRange {
    pub lo: u64,
    pub hi: u64,
}

impl SecurityRiskRange {
    pub fn width(&self) -> u64 {
        self.hi - self.lo
    }

    /// True when `L_max` sits exactly on the channel's maximum delay.
    pub fn is_optimal(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, l_max: u64) -> bool {
        (self.lo..=self.hi).contains(&l_max)
    }
}

impl fmt::Display for SecurityRiskRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn security_risk_range(actual_max_delay: u64, preset_l_max: u64) -> Result<SecurityRiskRange> {
    if actual_max_delay > preset_l_max {
        return Err(AfdmError::Config(format!(
            "channel delay {actual_max_delay} exceeds the preset guard L_max={preset_l_max}"
        )));
    }
    Ok(SecurityRiskRange { lo: actual_max_delay, hi: preset_l_max })
}

/// Actual channel extent, `(alpha^C_max, L^C_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelBounds {
    pub max_doppler: u64,
    pub max_delay: u64,
}

/// What a receiver with given parameters can be expected to achieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    FullRecovery,
    /// `alpha_c1 < alpha^C_max`: Doppler shifts beyond the grid alias into neighbouring delay blocks.
    MissedDoppler,
    /// `l_max < L^C_max`: the deepest delays are never scanned.
    MissedDelay,
    /// `alpha_c1 > alpha_max` or `l_max > L_max`: the scan reaches past the guard into data.
    SpuriousPaths,
    /// Receiver `c1` differs from the transmitter's: the residual chirp spreads every symbol.
    C1Mismatch,
    C2Mismatch,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::FullRecovery => "FULL_RECOVERY",
            Classification::MissedDoppler => "MISSED_DOPPLER",
            Classification::MissedDelay => "MISSED_DELAY",
            Classification::SpuriousPaths => "SPURIOUS_PATHS",
            Classification::C1Mismatch => "C1_MISMATCH",
            Classification::C2Mismatch => "C2_MISMATCH",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Applies the case analysis in precedence order: missed Doppler, missed
/// delay, spurious paths, `c1` mismatch, `c2` mismatch.
pub fn classify_receiver(tx: &AfdmConfig, chan: ChannelBounds, rx: &ReceiverParams) -> Classification {
    if rx.alpha_c1_rx < chan.max_doppler {
        Classification::MissedDoppler
    } else if rx.l_max_rx < chan.max_delay {
        Classification::MissedDelay
    } else if rx.alpha_c1_rx > tx.alpha_max() || rx.l_max_rx > tx.l_guard_max() {
        Classification::SpuriousPaths
    } else if rx.alpha_c1_rx != tx.alpha_c1() {
        Classification::C1Mismatch
    } else if !c2_equivalent(rx.c2_rx, tx.c2()) {
        Classification::C2Mismatch
    } else {
        Classification::FullRecovery
    }
}
