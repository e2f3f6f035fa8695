//! Parses an experiment spec, runs it and writes CSV, gnuplot script and the
//! normalized spec to an output directory.
//!
//! ```text
//! cargo run --release --example run_spec -- [spec-file] [out-dir]
//! ```

use std::path::PathBuf;

use afdm::experiment::{run_experiment, to_csv, write_outputs, ExperimentSpec};

const DEFAULT_SPEC: &str = "
scenario_id  = quick_l_max
n            = 256
alpha_max    = 2
l_max        = 4
alpha_c_max  = 2
l_c_max      = 3
num_paths    = 4
alpha_c1     = 2
snr_db       = 10, 20
sweep        = l_max_rx
sweep_values = 2, 3, 4, 6
trials       = 40
master_seed  = 5
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT_SPEC.to_string(),
    };
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("afdm_run_spec"));
    let spec = ExperimentSpec::parse(&text)?;
    let rows = run_experiment(&spec)?;
    print!("{}", to_csv(&rows));
    println!("wrote {}", write_outputs(&spec, &rows, &out)?.display());
    Ok(())
}
