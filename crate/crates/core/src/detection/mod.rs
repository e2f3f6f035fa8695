//! Constellation mapping, MMSE equalization and error accounting.

mod mmse;
mod qam;

pub use mmse::{mmse_equalize, mmse_equalize_data, mmse_equalize_paths, mmse_equalize_paths_with, Equalized, SINGULAR_EPSILON};
pub use qam::{count_errors, qam_demap, qam_map, BitBlock, QamOrder};

/// One Monte-Carlo measurement point.
#[derive(Debug, Clone, PartialEq)]
pub struct BerRecord {
    pub scenario_id: String,
    pub snr_db: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub bits_total: u64,
}

impl BerRecord {
    pub fn ber(&self) -> f64 {
        if self.bits_total == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits_total as f64
        }
    }

    /// Binomial standard error of [`BerRecord::ber`].
    pub fn std_error(&self) -> f64 {
        if self.bits_total == 0 {
            return 0.0;
        }
        let p = self.ber();
        (p * (1.0 - p) / self.bits_total as f64).sqrt()
    }
}
