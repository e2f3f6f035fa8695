//! Simulation of secure AFDM (affine frequency division multiplexing) links.
//!
//! The crate covers the whole chain from DAFT-domain symbols to bit errors:
//!
//! * [`config`] and [`transform`]: exact chirp parameters, DAFT/IDAFT, chirp-periodic prefix.
//! * [`channel`] and [`effective`]: integer delay-Doppler channels in the time
//!   domain and their sparse DAFT-domain effective matrix.
//! * [`frame`] and [`estimation`]: embedded pilot with null guard, grid-scan path
//!   detection for legitimate receivers and eavesdroppers.
//! * [`detection`]: QAM mapping, MMSE equalization, error counting.
//! * [`design`]: admissible `c1` values, `c2` periodicity, the `L_max` risk range.
//! * [`experiment`]: Monte-Carlo BER sweeps with CSV output.
//! * [`validate`]: self-checks against the literal formulas in [`reference`].

pub mod channel;
pub mod config;
pub mod design;
pub mod detection;
pub mod effective;
pub mod error;
pub mod estimation;
pub mod experiment;
pub mod frame;
pub mod reference;
pub mod transform;
pub mod validate;

pub use channel::{apply_channel, awgn, generate_channel, ChannelPath, ChannelRealization, NoiseSpec};
pub use config::{make_config, AfdmConfig};
pub use design::{
    admissible_c1, canonicalize_c2, classify_receiver, security_risk_range, AdmissibleC1Set, ChannelBounds,
    Classification, SecurityRiskRange,
};
pub use detection::{count_errors, mmse_equalize, qam_demap, qam_map, BerRecord, BitBlock, QamOrder};
pub use effective::{build_effective_channel, geometric_sum_kernel, SparseChannelMatrix};
pub use error::{AfdmError, Result};
pub use estimation::{estimate_channel, reconstruct_heff, PathEstimate, ReceiverParams, RxConfig};
pub use frame::{build_frame_layout, FrameLayout};
pub use transform::{add_cpp, daft_demodulate, idaft_modulate, remove_cpp, DaftSymbols, TimeSignal};
