//! Embedded-pilot estimation and MMSE detection for one frame at 20 dB.

use afdm::detection::mmse_equalize_paths;
use afdm::frame::pilot_amplitude_for;
use afdm::transform::TimeSignal;
use afdm::{
    add_cpp, apply_channel, build_frame_layout, count_errors, daft_demodulate, estimate_channel, generate_channel,
    idaft_modulate, make_config, qam_demap, qam_map, remove_cpp, BitBlock, NoiseSpec, QamOrder, ReceiverParams,
};

fn main() -> afdm::Result<()> {
    let snr_db = 20.0;
    let cfg = make_config(512, 3, 0.3, 3, 5)?;
    let noise = NoiseSpec::from_snr_db(snr_db);
    let layout = build_frame_layout(&cfg)?.with_pilot_amplitude(pilot_amplitude_for(40.0, noise.n0));
    println!(
        "pilot at {}, {} guard nulls, {} data symbols",
        layout.pilot_index,
        layout.guard_indices.len(),
        layout.data_indices.len()
    );

    let bits = BitBlock::new((0..2 * layout.data_indices.len()).map(|i| (i % 3 == 0) as u8).collect(), 2)?;
    let x = layout.compose(&qam_map(&bits, QamOrder::Qpsk)?)?;
    let channel = generate_channel(5, 6, 5, 3)?;
    let tx: TimeSignal = add_cpp(&cfg, &idaft_modulate(&cfg, &x)?)?;
    let r = apply_channel(&cfg, &channel, &tx, noise, 99)?;

    let rx = ReceiverParams::matched(&cfg).bind(&cfg);
    let y = daft_demodulate(&rx.cfg, &remove_cpp(&rx.cfg, &r)?)?;
    let mut estimates = estimate_channel(&rx, &layout, &y, noise.n0)?;
    estimates.sort_by_key(|e| e.delay_hat);
    let mut truth = channel.paths().to_vec();
    truth.sort_by_key(|p| p.delay);

    println!("{:>5} {:>8} {:>10} | {:>5} {:>8} {:>10}", "delay", "doppler", "gain", "l_hat", "a_hat", "gain_hat");
    for (t, e) in truth.iter().zip(&estimates) {
        println!(
            "{:>5} {:>8} {:>10.3} | {:>5} {:>8} {:>10.3}",
            t.delay, t.doppler, t.gain, e.delay_hat, e.doppler_hat, e.gain_hat
        );
    }
    println!("{} paths in channel, {} detected", truth.len(), estimates.len());

    let eq = mmse_equalize_paths(&rx, &estimates, &y, noise.n0)?;
    let bits_hat = qam_demap(&layout.data_of(&eq.symbols.values), QamOrder::Qpsk);
    println!("bit errors: {} of {}", count_errors(&bits, &bits_hat)?, bits.len());
    Ok(())
}
