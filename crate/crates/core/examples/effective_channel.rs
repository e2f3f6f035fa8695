//! Sparse DAFT-domain channel: one cyclic diagonal per path, checked against
//! the time-domain simulation.

use afdm::effective::column_offset;
use afdm::{
    add_cpp, apply_channel, build_effective_channel, daft_demodulate, generate_channel, idaft_modulate, make_config,
    remove_cpp, DaftSymbols, NoiseSpec,
};
use num_complex::Complex64;

fn main() -> afdm::Result<()> {
    let cfg = make_config(512, 5, 0.3, 7, 5)?;
    let channel = generate_channel(11, 6, 5, 3)?;
    let h = build_effective_channel(&cfg, &channel);

    println!("{:>6} {:>8} {:>8} {:>10}", "delay", "doppler", "|gain|", "offset");
    for p in channel.paths() {
        println!("{:>6} {:>8} {:>8.3} {:>10}", p.delay, p.doppler, p.gain.norm(), column_offset(&cfg, p.delay, p.doppler));
    }
    println!("H_eff: {} diagonals, {} nonzeros out of {}", h.offsets().len(), h.nnz(), cfg.n() * cfg.n());

    let x = DaftSymbols::new((0..cfg.n()).map(|i| Complex64::from_polar(1.0, 0.37 * i as f64)).collect());
    let r = apply_channel(&cfg, &channel, &add_cpp(&cfg, &idaft_modulate(&cfg, &x)?)?, NoiseSpec::noiseless(), 0)?;
    let y = daft_demodulate(&cfg, &remove_cpp(&cfg, &r)?)?;
    let hx = h.mul_vec(&x.values);
    let err = y.values.iter().zip(&hx).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("time-domain pipeline vs H_eff x: max difference {err:.2e}");
    Ok(())
}
