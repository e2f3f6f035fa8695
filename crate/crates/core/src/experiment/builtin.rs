//! Ready-made sweeps reproducing the secure-AFDM evaluation figures.
//!
//! All use `N = 512`, six paths with `L^C_max = 5`, QPSK, a 40 dB pilot and
//! `c2 = 0.3`. Each figure otherwise picks the preset guard its question needs.

use super::spec::{BaseConfig, EveOverrides, ExperimentSpec, SweepAxis};

pub const DEFAULT_TRIALS: u64 = 200;
const SNR_GRID: [f64; 5] = [0.0, 5.0, 10.0, 15.0, 20.0];

fn base() -> BaseConfig {
    BaseConfig { n: 512, num_paths: 6, l_c_max: 5, pilot_snr_db: 40.0, c2: 0.3, ..BaseConfig::default() }
}

fn spec(id: &str, base: BaseConfig, sweep: SweepAxis, values: Vec<f64>, seed: u64, trials: u64) -> ExperimentSpec {
    ExperimentSpec {
        scenario_id: id.into(),
        base,
        snr_db: SNR_GRID.to_vec(),
        sweep,
        sweep_values: values,
        trials,
        master_seed: seed,
        eavesdropper: None,
        noiseless: false,
    }
}

fn alphas() -> Vec<f64> {
    (2..=8).map(f64::from).collect()
}

/// Legitimate BER for `alpha_c1 = 2..8` with `alpha_max = 7`, `L_max = 5`, `alpha^C_max = 3`.
pub fn fig5a(seed: u64, trials: u64) -> ExperimentSpec {
    let b = BaseConfig { alpha_max: 7, l_max: 5, alpha_c_max: 3, alpha_c1: 7, legit_l_max: 5, ..base() };
    spec("fig5a", b, SweepAxis::AlphaC1, alphas(), seed, trials)
}

/// Transmitter at `alpha_c1 = 5`; eavesdropper tries `alpha_c1 = 2..8`.
pub fn fig5b(seed: u64, trials: u64) -> ExperimentSpec {
    let b = BaseConfig { alpha_max: 7, l_max: 5, alpha_c_max: 3, alpha_c1: 5, legit_l_max: 5, ..base() };
    ExperimentSpec {
        eavesdropper: Some(EveOverrides::default()),
        ..spec("fig5b", b, SweepAxis::AlphaC1Rx, alphas(), seed, trials)
    }
}

/// Eavesdropper `c2` deviations from `0` up to `10` with otherwise ideal parameters.
pub fn fig6(seed: u64, trials: u64) -> ExperimentSpec {
    let b = BaseConfig { alpha_max: 3, l_max: 5, alpha_c_max: 3, alpha_c1: 3, legit_l_max: 5, ..base() };
    let mut values = vec![0.0];
    for d in [1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1.0, 10.0] {
        values.push(d);
        values.push(-d);
    }
    ExperimentSpec {
        snr_db: vec![10.0, 20.0],
        eavesdropper: Some(EveOverrides::default()),
        ..spec("fig6", b, SweepAxis::C2Deviation, values, seed, trials)
    }
}

fn fig7_with(id: &str, l_max: u64, seed: u64, trials: u64) -> ExperimentSpec {
    let b = BaseConfig { alpha_max: 3, l_max, alpha_c_max: 3, alpha_c1: 3, legit_l_max: l_max, ..base() };
    let values = (4..=8).map(f64::from).collect();
    ExperimentSpec {
        eavesdropper: Some(EveOverrides::default()),
        ..spec(id, b, SweepAxis::LMaxRx, values, seed, trials)
    }
}

/// Eavesdropper `l_max = 4..8` against a preset `L_max = 7` exceeding `L^C_max = 5`.
pub fn fig7(seed: u64, trials: u64) -> ExperimentSpec {
    fig7_with("fig7", 7, seed, trials)
}

/// As [`fig7`] with the optimal preset `L_max = L^C_max = 5`.
pub fn fig7_optimal(seed: u64, trials: u64) -> ExperimentSpec {
    fig7_with("fig7_optimal", 5, seed, trials)
}

/// Looks a built-in up by scenario id.
pub fn builtin(name: &str, seed: u64, trials: u64) -> Option<ExperimentSpec> {
    Some(match name {
        "fig5a" => fig5a(seed, trials),
        "fig5b" => fig5b(seed, trials),
        "fig6" => fig6(seed, trials),
        "fig7" => fig7(seed, trials),
        "fig7_optimal" => fig7_optimal(seed, trials),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: [&str; 5] = ["fig5a", "fig5b", "fig6", "fig7", "fig7_optimal"];
