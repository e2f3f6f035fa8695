//! How far an eavesdropper's c2 may drift before detection collapses.

use afdm::experiment::{fig6, run_experiment, Role};

fn main() -> afdm::Result<()> {
    let mut spec = fig6(7, 30);
    spec.snr_db = vec![20.0];
    spec.sweep_values = vec![0.0, 1e-8, 1e-7, 3e-7, 1e-6, 3e-6, 1e-5, 0.5, 1.0, 10.0];
    let rows = run_experiment(&spec)?;
    println!("{:>10} {:>12}", "deviation", "eve BER");
    for r in rows.iter().filter(|r| r.role == Role::Eavesdropper) {
        println!("{:>10.0e} {:>12.3e}", r.sweep_value, r.record.ber());
    }
    Ok(())
}
