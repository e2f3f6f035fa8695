//! Monte-Carlo execution of an [`ExperimentSpec`].
//!
//! Every random stream is keyed by `(master_seed, trial, stream)` only, so all
//! points of a sweep see the same channels, bits and unit-variance noise draws.
//! Results are integer error counts summed per point, which makes the output
//! independent of thread count and scheduling.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::spec::{ExperimentSpec, SweepAxis};
use crate::channel::{apply_channel, generate_channel, NoiseSpec};
use crate::config::AfdmConfig;
use crate::detection::{count_errors, mmse_equalize_data, mmse_equalize_paths_with, qam_demap, qam_map, BerRecord, BitBlock};
use crate::error::Result;
use crate::estimation::{estimate_channel, reconstruct_heff, ReceiverParams, RxConfig};
use crate::frame::{build_frame_layout, pilot_amplitude_for, FrameLayout};
use crate::transform::{add_cpp, remove_cpp, Daft, TimeSignal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Legitimate,
    Eavesdropper,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Legitimate => "legitimate",
            Role::Eavesdropper => "eavesdropper",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One `(sweep value, SNR)` combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub sweep_value: f64,
    pub snr_db: f64,
}

/// Aggregated result for one role at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub role: Role,
    pub sweep_param: &'static str,
    pub sweep_value: f64,
    pub record: BerRecord,
}

/// Bit errors for one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoleOutcome {
    pub role: Role,
    pub bit_errors: u64,
    pub bits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

#[derive(Clone, Copy)]
enum Stream {
    Channel = 1,
    Bits = 2,
    Noise = 3,
    Guess = 4,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn stream_seed(master: u64, trial: u64, stream: Stream) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ trial) ^ stream as u64)
}

/// Everything about a sweep point that does not depend on the trial.
struct PointContext {
    snr_db: f64,
    tx: AfdmConfig,
    tx_daft: Daft,
    layout: FrameLayout,
    noise: NoiseSpec,
    n0_rx: f64,
    receivers: Vec<(Role, RxConfig, Daft)>,
}

impl PointContext {
    fn new(spec: &ExperimentSpec, point: SweepPoint) -> Result<Self> {
        let b = &spec.base;
        let v = point.sweep_value;
        let tx_alpha = if spec.sweep == SweepAxis::AlphaC1 { v as u64 } else { b.alpha_c1 };
        let tx = spec.tx_config(tx_alpha)?;
        let n0 = NoiseSpec::from_snr_db(point.snr_db).n0;
        let noise = if spec.noiseless { NoiseSpec::noiseless() } else { NoiseSpec::new(n0)? };
        let layout = build_frame_layout(&tx)?.with_pilot_amplitude(pilot_amplitude_for(b.pilot_snr_db, n0));

        let mut receivers = Vec::new();
        let legit = ReceiverParams::new(tx_alpha, b.c2, b.legit_l_max, b.detection_threshold)?;
        receivers.push((Role::Legitimate, legit));
        if let Some(eve) = &spec.eavesdropper {
            let mut alpha = eve.alpha_c1.unwrap_or(tx_alpha);
            let mut c2 = b.c2 + eve.c2_offset;
            let mut l_max = eve.l_max.unwrap_or(b.legit_l_max);
            match spec.sweep {
                SweepAxis::AlphaC1Rx => alpha = v as u64,
                SweepAxis::C2Deviation => c2 = b.c2 + v,
                SweepAxis::LMaxRx => l_max = v as u64,
                SweepAxis::Snr | SweepAxis::AlphaC1 => {}
            }
            receivers.push((Role::Eavesdropper, ReceiverParams::new(alpha, c2, l_max, b.detection_threshold)?));
        }
        let receivers = receivers
            .into_iter()
            .map(|(role, p)| {
                let rx = p.bind(&tx);
                let daft = Daft::new(&rx.cfg);
                (role, rx, daft)
            })
            .collect();
        Ok(PointContext {
            snr_db: point.snr_db,
            tx_daft: Daft::new(&tx),
            tx,
            layout,
            noise,
            n0_rx: noise.n0,
            receivers,
        })
    }

    fn run(&self, spec: &ExperimentSpec, trial: u64) -> Result<Vec<RoleOutcome>> {
        let b = &spec.base;
        let seed = |s| stream_seed(spec.master_seed, trial, s);
        let channel = generate_channel(seed(Stream::Channel), b.num_paths, b.l_c_max as usize, b.alpha_c_max)?;
        let bps = b.qam_order.bits_per_symbol();
        let nbits = self.layout.data_indices.len() * bps;
        let bits = random_bits(nbits, bps, seed(Stream::Bits))?;
        let x = self.layout.compose(&qam_map(&bits, b.qam_order)?)?;
        let s = TimeSignal::new(self.tx_daft.modulate(&x.values)?);
        let s = add_cpp(&self.tx, &s)?;
        // Unit-variance draws scaled per point keep noise common across the sweep.
        let r = apply_channel(&self.tx, &channel, &s, self.noise, seed(Stream::Noise))?;

        let mut out = Vec::with_capacity(self.receivers.len());
        for (role, rx, daft) in &self.receivers {
            let body = remove_cpp(&rx.cfg, &r)?;
            let y = crate::transform::DaftSymbols::new(daft.demodulate(body.body())?);
            let estimates = estimate_channel(rx, &self.layout, &y, self.n0_rx)?;
            let bits_hat = if estimates.is_empty() {
                random_bits(nbits, bps, seed(Stream::Guess) ^ *role as u64)?
            } else {
                // Without noise the full-frame system can be singular; solve for data alone.
                let eq = if self.n0_rx == 0.0 {
                    mmse_equalize_data(&reconstruct_heff(rx, &estimates), &self.layout, &y, 0.0)?
                } else {
                    mmse_equalize_paths_with(daft, rx, &estimates, &y, self.n0_rx)?
                };
                qam_demap(&self.layout.data_of(&eq.symbols.values), b.qam_order)
            };
            out.push(RoleOutcome { role: *role, bit_errors: count_errors(&bits, &bits_hat)?, bits: nbits as u64 });
        }
        Ok(out)
    }
}

fn random_bits(len: usize, bps: usize, seed: u64) -> Result<BitBlock> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BitBlock::new((0..len).map(|_| rng.gen_range(0..=1u8)).collect(), bps)
}

/// All sweep points in output order: sweep value major, SNR minor.
pub fn sweep_points(spec: &ExperimentSpec) -> Vec<SweepPoint> {
    match spec.sweep {
        SweepAxis::Snr => spec.snr_db.iter().map(|&s| SweepPoint { sweep_value: s, snr_db: s }).collect(),
        _ => spec
            .sweep_values
            .iter()
            .flat_map(|&v| spec.snr_db.iter().map(move |&s| SweepPoint { sweep_value: v, snr_db: s }))
            .collect(),
    }
}

/// Runs a single trial at one sweep point.
pub fn run_trial(spec: &ExperimentSpec, point: SweepPoint, trial: u64) -> Result<Vec<RoleOutcome>> {
    PointContext::new(spec, point)?.run(spec, trial)
}

/// Runs every trial of every sweep point using all available threads.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    run_experiment_with(spec, Execution::Parallel)
}

pub fn run_experiment_with(spec: &ExperimentSpec, execution: Execution) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let points = sweep_points(spec);
    let contexts = points.iter().map(|&p| PointContext::new(spec, p)).collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, u64)> =
        (0..contexts.len()).flat_map(|p| (0..spec.trials).map(move |t| (p, t))).collect();
    let run = |&(p, t): &(usize, u64)| contexts[p].run(spec, t).map(|o| (p, o));
    let outcomes: Vec<(usize, Vec<RoleOutcome>)> = match execution {
        Execution::Sequential => jobs.iter().map(run).collect::<Result<_>>()?,
        Execution::Parallel => jobs.par_iter().map(run).collect::<Result<_>>()?,
    };

    let roles: Vec<Role> = contexts[0].receivers.iter().map(|(r, _, _)| *r).collect();
    let mut totals = vec![vec![(0u64, 0u64); roles.len()]; contexts.len()];
    for (p, outs) in outcomes {
        for (slot, o) in totals[p].iter_mut().zip(outs) {
            slot.0 += o.bit_errors;
            slot.1 += o.bits;
        }
    }
    let mut rows = Vec::new();
    for (ctx, (point, tot)) in contexts.iter().zip(points.iter().zip(&totals)) {
        for (&role, &(errors, bits)) in roles.iter().zip(tot) {
            rows.push(ResultRow {
                role,
                sweep_param: spec.sweep.name(),
                sweep_value: point.sweep_value,
                record: BerRecord {
                    scenario_id: spec.scenario_id.clone(),
                    snr_db: ctx.snr_db,
                    trials: spec.trials,
                    bit_errors: errors,
                    bits_total: bits,
                },
            });
        }
    }
    Ok(rows)
}

/// Looks up the row for a role at a sweep point.
pub fn find_row(rows: &[ResultRow], role: Role, sweep_value: f64, snr_db: f64) -> Option<&ResultRow> {
    rows.iter().find(|r| r.role == role && r.sweep_value == sweep_value && r.record.snr_db == snr_db)
}
