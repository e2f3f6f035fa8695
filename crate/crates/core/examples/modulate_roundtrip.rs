//! QPSK frame through IDAFT, chirp-periodic prefix and back.

use afdm::transform::cpp_phase;
use afdm::{add_cpp, daft_demodulate, idaft_modulate, make_config, qam_map, remove_cpp, BitBlock, DaftSymbols, QamOrder};

fn main() -> afdm::Result<()> {
    let cfg = make_config(64, 2, 0.25, 2, 3)?;
    let bits: Vec<u8> = (0..2 * cfg.n()).map(|i| ((i * 7 + i / 3) % 2) as u8).collect();
    let x = DaftSymbols::new(qam_map(&BitBlock::new(bits, 2)?, QamOrder::Qpsk)?);

    let s = idaft_modulate(&cfg, &x)?;
    let framed = add_cpp(&cfg, &s)?;
    println!("N = {}, c1 = {}, c2 = {}, prefix {} samples", cfg.n(), cfg.c1(), cfg.c2(), framed.prefix_len());
    println!("energy: DAFT domain {:.6}, time domain {:.6}", x.energy(), s.energy());

    let phases: Vec<_> = (-(cfg.cpp_len() as i64)..0).map(|k| cpp_phase(&cfg, k).re).collect();
    println!("prefix phase factors (even N, so a plain cyclic prefix): {phases:?}");

    let back = daft_demodulate(&cfg, &remove_cpp(&cfg, &framed)?)?;
    let err = back.values.iter().zip(&x.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("max round-trip error {err:.2e}");

    let odd = make_config(63, 2, 0.25, 2, 3)?;
    let odd_phases: Vec<_> = (-3..0).map(|k| cpp_phase(&odd, k).re).collect();
    println!("odd N = 63 prefix factors: {odd_phases:?}");
    Ok(())
}
