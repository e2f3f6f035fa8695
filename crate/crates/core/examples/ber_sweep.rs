//! Runs one of the built-in figure sweeps and prints a BER table.
//!
//! ```text
//! cargo run --release --example ber_sweep -- fig6 50
//! ```

use std::time::Instant;

use afdm::experiment::{builtin, run_experiment, BUILTIN_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "fig5b".into());
    let trials: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    let spec = builtin(&name, 1, trials).ok_or_else(|| format!("unknown sweep {name}; try one of {BUILTIN_NAMES:?}"))?;

    let start = Instant::now();
    let rows = run_experiment(&spec)?;
    println!("{name}: {trials} trials per point in {:.1?}", start.elapsed());
    println!("{:<13} {:>12} {:>7} {:>12}", "role", spec.sweep.name(), "snr_db", "ber");
    for r in &rows {
        println!("{:<13} {:>12} {:>7} {:>12.3e}", r.role.name(), r.sweep_value, r.record.snr_db, r.record.ber());
    }
    Ok(())
}
