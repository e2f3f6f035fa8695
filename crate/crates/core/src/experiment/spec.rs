//! Experiment descriptions and their flat `key = value` file format.
//!
//! ```text
//! # comment
//! scenario_id   = fig6
//! n             = 512
//! alpha_max     = 3         # preset Doppler guard
//! l_max         = 5         # preset delay guard L_max
//! alpha_c_max   = 3         # actual channel Doppler bound
//! l_c_max       = 5         # actual channel delay bound
//! num_paths     = 6
//! qam_order     = 4
//! pilot_snr_db  = 40
//! alpha_c1      = 3         # transmitter
//! c2            = 0.3       # transmitter
//! legit_l_max   = 5
//! detection_threshold = 0.05
//! snr_db        = 10, 20
//! sweep         = c2_deviation   # snr_db | alpha_c1 | alpha_c1_rx | c2_deviation | l_max_rx
//! sweep_values  = 0, 1e-6, 1e-5
//! trials        = 200
//! master_seed   = 1
//! eavesdropper  = true
//! eve_alpha_c1  = 3         # optional, defaults to the transmitter's
//! eve_c2_offset = 0         # optional
//! eve_l_max     = 5         # optional, defaults to legit_l_max
//! noiseless     = false
//! ```
//!
//! Unknown or repeated keys are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::config::{make_config, AfdmConfig};
use crate::detection::QamOrder;
use crate::error::{AfdmError, Result};
use crate::estimation::DEFAULT_DETECTION_THRESHOLD;

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Only the SNR list is swept.
    Snr,
    /// Transmitter and legitimate receiver share `alpha_c1`.
    AlphaC1,
    /// Eavesdropper `alpha_c1`.
    AlphaC1Rx,
    /// Eavesdropper `c2` minus transmitter `c2`.
    C2Deviation,
    /// Eavesdropper estimation depth `l_max`.
    LMaxRx,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Snr => "snr_db",
            SweepAxis::AlphaC1 => "alpha_c1",
            SweepAxis::AlphaC1Rx => "alpha_c1_rx",
            SweepAxis::C2Deviation => "c2_deviation",
            SweepAxis::LMaxRx => "l_max_rx",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "snr_db" => SweepAxis::Snr,
            "alpha_c1" => SweepAxis::AlphaC1,
            "alpha_c1_rx" => SweepAxis::AlphaC1Rx,
            "c2_deviation" => SweepAxis::C2Deviation,
            "l_max_rx" => SweepAxis::LMaxRx,
            other => return Err(AfdmError::Config(format!("unknown sweep axis '{other}'"))),
        })
    }

    fn targets_eavesdropper(self) -> bool {
        matches!(self, SweepAxis::AlphaC1Rx | SweepAxis::C2Deviation | SweepAxis::LMaxRx)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseConfig {
    pub n: usize,
    pub alpha_max: u64,
    pub l_max: u64,
    pub alpha_c_max: u64,
    pub l_c_max: u64,
    pub num_paths: usize,
    pub qam_order: QamOrder,
    pub pilot_snr_db: f64,
    pub alpha_c1: u64,
    pub c2: f64,
    pub legit_l_max: u64,
    pub detection_threshold: f64,
}

impl Default for BaseConfig {
    fn default() -> Self {
        BaseConfig {
            n: 512,
            alpha_max: 7,
            l_max: 7,
            alpha_c_max: 3,
            l_c_max: 5,
            num_paths: 6,
            qam_order: QamOrder::Qpsk,
            pilot_snr_db: 40.0,
            alpha_c1: 7,
            c2: 0.3,
            legit_l_max: 7,
            detection_threshold: DEFAULT_DETECTION_THRESHOLD,
        }
    }
}

/// Eavesdropper parameters relative to the transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EveOverrides {
    pub alpha_c1: Option<u64>,
    pub c2_offset: f64,
    pub l_max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub scenario_id: String,
    pub base: BaseConfig,
    pub snr_db: Vec<f64>,
    pub sweep: SweepAxis,
    pub sweep_values: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    pub eavesdropper: Option<EveOverrides>,
    /// Skip the noise draw while keeping the SNR-derived pilot amplitude.
    pub noiseless: bool,
}

impl ExperimentSpec {
    /// Checks every bound the runner relies on, naming the violated one.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(AfdmError::Config("trials must be at least 1".into()));
        }
        if self.snr_db.is_empty() {
            return Err(AfdmError::Config("snr_db list is empty".into()));
        }
        if self.sweep != SweepAxis::Snr && self.sweep_values.is_empty() {
            return Err(AfdmError::Config(format!("sweep '{}' has no values", self.sweep.name())));
        }
        if self.sweep.targets_eavesdropper() && self.eavesdropper.is_none() {
            return Err(AfdmError::Config(format!("sweep '{}' needs eavesdropper = true", self.sweep.name())));
        }
        let b = &self.base;
        if b.l_c_max > b.l_max {
            return Err(AfdmError::Config(format!(
                "channel delay L^C_max={} exceeds the preset delay guard L_max={}",
                b.l_c_max, b.l_max
            )));
        }
        if b.alpha_c_max > b.alpha_max {
            return Err(AfdmError::Config(format!(
                "channel Doppler alpha^C_max={} exceeds the preset Doppler guard alpha_max={}",
                b.alpha_c_max, b.alpha_max
            )));
        }
        if !(b.detection_threshold > 0.0 && b.detection_threshold < 1.0) {
            return Err(AfdmError::Config("detection_threshold must lie in (0, 1)".into()));
        }
        for &v in &self.sweep_values {
            let integral = matches!(self.sweep, SweepAxis::AlphaC1 | SweepAxis::AlphaC1Rx | SweepAxis::LMaxRx);
            if !v.is_finite() || (integral && (v < 0.0 || v.fract() != 0.0)) {
                return Err(AfdmError::Config(format!("invalid value {v} for sweep '{}'", self.sweep.name())));
            }
        }
        crate::channel::generate_channel(0, b.num_paths, b.l_c_max as usize, b.alpha_c_max)?;
        self.tx_config(b.alpha_c1)?;
        Ok(())
    }

    pub fn tx_config(&self, alpha_c1: u64) -> Result<AfdmConfig> {
        make_config(self.base.n, alpha_c1, self.base.c2, self.base.alpha_max, self.base.l_max)
    }

    /// Values along the sweep axis; for an SNR-only sweep this is the SNR list.
    pub fn axis_values(&self) -> Vec<f64> {
        match self.sweep {
            SweepAxis::Snr => self.snr_db.clone(),
            _ => self.sweep_values.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| AfdmError::Config(format!("line {}: expected 'key = value'", lineno + 1)))?;
            let k = k.trim().to_string();
            if kv.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(AfdmError::Config(format!("line {}: duplicate key '{k}'", lineno + 1)));
            }
        }
        let mut fields = Fields(kv);
        let base_default = BaseConfig::default();
        let base = BaseConfig {
            n: fields.num("n")?.unwrap_or(base_default.n),
            alpha_max: fields.num("alpha_max")?.unwrap_or(base_default.alpha_max),
            l_max: fields.num("l_max")?.unwrap_or(base_default.l_max),
            alpha_c_max: fields.num("alpha_c_max")?.unwrap_or(base_default.alpha_c_max),
            l_c_max: fields.num("l_c_max")?.unwrap_or(base_default.l_c_max),
            num_paths: fields.num("num_paths")?.unwrap_or(base_default.num_paths),
            qam_order: match fields.num::<u32>("qam_order")? {
                Some(o) => QamOrder::from_order(o)?,
                None => base_default.qam_order,
            },
            pilot_snr_db: fields.num("pilot_snr_db")?.unwrap_or(base_default.pilot_snr_db),
            alpha_c1: fields.num("alpha_c1")?.unwrap_or(base_default.alpha_c1),
            c2: fields.num("c2")?.unwrap_or(base_default.c2),
            legit_l_max: 0,
            detection_threshold: fields.num("detection_threshold")?.unwrap_or(base_default.detection_threshold),
        };
        let base = BaseConfig { legit_l_max: fields.num("legit_l_max")?.unwrap_or(base.l_max), ..base };
        let sweep = SweepAxis::parse(&fields.required("sweep")?)?;
        let eve_alpha_c1 = fields.num("eve_alpha_c1")?;
        let eve_c2_offset = fields.num("eve_c2_offset")?;
        let eve_l_max = fields.num("eve_l_max")?;
        let eve_flag: Option<bool> = fields.num("eavesdropper")?;
        let any_eve_key = eve_alpha_c1.is_some() || eve_c2_offset.is_some() || eve_l_max.is_some();
        let eavesdropper = match eve_flag {
            Some(true) => true,
            Some(false) if any_eve_key => {
                return Err(AfdmError::Config("eve_* keys given but eavesdropper = false".into()));
            }
            Some(false) => false,
            None => any_eve_key || sweep.targets_eavesdropper(),
        };
        let spec = ExperimentSpec {
            scenario_id: fields.required("scenario_id")?,
            base,
            snr_db: fields.list("snr_db")?.ok_or_else(|| AfdmError::Config("missing key 'snr_db'".into()))?,
            sweep,
            sweep_values: fields.list("sweep_values")?.unwrap_or_default(),
            trials: fields.num("trials")?.ok_or_else(|| AfdmError::Config("missing key 'trials'".into()))?,
            master_seed: fields.num("master_seed")?.unwrap_or(0),
            eavesdropper: eavesdropper.then_some(EveOverrides {
                alpha_c1: eve_alpha_c1,
                c2_offset: eve_c2_offset.unwrap_or(0.0),
                l_max: eve_l_max,
            }),
            noiseless: fields.num("noiseless")?.unwrap_or(false),
        };
        if let Some(k) = fields.0.keys().next() {
            return Err(AfdmError::Config(format!("unknown key '{k}'")));
        }
        if spec.scenario_id.is_empty() || spec.scenario_id.contains([',', '/', '\\']) {
            return Err(AfdmError::Config(format!("scenario_id '{}' is not a plain name", spec.scenario_id)));
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Serializes to the format accepted by [`ExperimentSpec::parse`].
    pub fn to_text(&self) -> String {
        let b = &self.base;
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let _ = writeln!(out, "scenario_id = {}", self.scenario_id);
        let _ = writeln!(out, "n = {}", b.n);
        let _ = writeln!(out, "alpha_max = {}", b.alpha_max);
        let _ = writeln!(out, "l_max = {}", b.l_max);
        let _ = writeln!(out, "alpha_c_max = {}", b.alpha_c_max);
        let _ = writeln!(out, "l_c_max = {}", b.l_c_max);
        let _ = writeln!(out, "num_paths = {}", b.num_paths);
        let _ = writeln!(out, "qam_order = {}", b.qam_order.order());
        let _ = writeln!(out, "pilot_snr_db = {}", b.pilot_snr_db);
        let _ = writeln!(out, "alpha_c1 = {}", b.alpha_c1);
        let _ = writeln!(out, "c2 = {:e}", b.c2);
        let _ = writeln!(out, "legit_l_max = {}", b.legit_l_max);
        let _ = writeln!(out, "detection_threshold = {}", b.detection_threshold);
        let _ = writeln!(out, "snr_db = {}", list(&self.snr_db));
        let _ = writeln!(out, "sweep = {}", self.sweep.name());
        if !self.sweep_values.is_empty() {
            let _ = writeln!(out, "sweep_values = {}", list(&self.sweep_values));
        }
        let _ = writeln!(out, "trials = {}", self.trials);
        let _ = writeln!(out, "master_seed = {}", self.master_seed);
        let _ = writeln!(out, "eavesdropper = {}", self.eavesdropper.is_some());
        if let Some(e) = &self.eavesdropper {
            if let Some(a) = e.alpha_c1 {
                let _ = writeln!(out, "eve_alpha_c1 = {a}");
            }
            let _ = writeln!(out, "eve_c2_offset = {:e}", e.c2_offset);
            if let Some(l) = e.l_max {
                let _ = writeln!(out, "eve_l_max = {l}");
            }
        }
        let _ = writeln!(out, "noiseless = {}", self.noiseless);
        out
    }
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn required(&mut self, key: &str) -> Result<String> {
        self.0.remove(key).ok_or_else(|| AfdmError::Config(format!("missing key '{key}'")))
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| AfdmError::Config(format!("key '{key}': cannot parse '{v}'"))),
        }
    }

    fn list(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| AfdmError::Config(format!("key '{key}': cannot parse '{s}'"))))
                .collect::<Result<Vec<f64>>>()
                .map(Some),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG6: &str = "
        # c2 sensitivity
        scenario_id = fig6
        alpha_max = 3
        l_max = 5
        alpha_c1 = 3
        snr_db = 10, 20
        sweep = c2_deviation
        sweep_values = 0, 1e-6, -1e-6
        trials = 4
        master_seed = 9
    ";

    #[test]
    fn parses_with_defaults() {
        let s = ExperimentSpec::parse(FIG6).unwrap();
        assert_eq!(s.scenario_id, "fig6");
        assert_eq!(s.base.n, 512);
        assert_eq!(s.base.legit_l_max, 5);
        assert_eq!(s.sweep, SweepAxis::C2Deviation);
        assert_eq!(s.sweep_values, vec![0.0, 1e-6, -1e-6]);
        assert_eq!(s.eavesdropper, Some(EveOverrides::default()));
        assert_eq!(s.master_seed, 9);
    }

    #[test]
    fn text_round_trip() {
        let s = ExperimentSpec::parse(FIG6).unwrap();
        assert_eq!(ExperimentSpec::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let bad = format!("{FIG6}\ncolour = blue\n");
        assert!(ExperimentSpec::parse(&bad).unwrap_err().to_string().contains("colour"));
        let dup = format!("{FIG6}\ntrials = 5\n");
        assert!(ExperimentSpec::parse(&dup).unwrap_err().to_string().contains("duplicate"));
        assert!(ExperimentSpec::parse("scenario_id = x\nthis line is wrong").is_err());
    }

    #[test]
    fn rejects_guard_violations() {
        let over = FIG6.replace("l_max = 5", "l_max = 4");
        let err = ExperimentSpec::parse(&over).unwrap_err().to_string();
        assert!(err.contains("L_max"), "{err}");
        let tiny = format!("{FIG6}\nn = 32\n");
        assert!(ExperimentSpec::parse(&tiny).is_err());
        let zero = FIG6.replace("trials = 4", "trials = 0");
        assert!(ExperimentSpec::parse(&zero).is_err());
        let frac = "scenario_id = a\nsnr_db = 1\nsweep = l_max_rx\nsweep_values = 2.5\ntrials = 1\n";
        assert!(ExperimentSpec::parse(frac).is_err());
    }
}
