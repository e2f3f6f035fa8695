use afdm::design::c2_equivalent;
use afdm::effective::column_offset;
use afdm::reference;
use afdm::transform::Daft;
use afdm::{
    add_cpp, apply_channel, build_effective_channel, canonicalize_c2, daft_demodulate, generate_channel, idaft_modulate,
    make_config, qam_demap, qam_map, remove_cpp, BitBlock, DaftSymbols, NoiseSpec, QamOrder,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn symbols(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im)), n)
}

fn sized_frame() -> impl Strategy<Value = (usize, Vec<Complex64>)> {
    prop::sample::select(vec![4usize, 7, 16, 63, 64, 128]).prop_flat_map(|n| (Just(n), symbols(n)))
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_and_energy((n, x) in sized_frame(), alpha in 0u64..40, c2 in -20.0f64..20.0) {
        let cfg = make_config(n, alpha, c2, 0, 0).unwrap();
        let d = Daft::new(&cfg);
        let s = d.modulate(&x).unwrap();
        prop_assert!(max_diff(&d.demodulate(&s).unwrap(), &x) < 1e-10);
        let ex: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        let es: f64 = s.iter().map(|v| v.norm_sqr()).sum();
        prop_assert!((ex - es).abs() <= 1e-10 * ex.max(1.0));
    }

    #[test]
    fn fast_transform_matches_direct_sum((n, x) in sized_frame(), alpha in 0u64..10, c2 in 0.0f64..1.0) {
        let cfg = make_config(n, alpha, c2, 0, 0).unwrap();
        let fast = Daft::new(&cfg).modulate(&x).unwrap();
        let direct = reference::idaft_direct(n, cfg.c1(), c2, &x);
        prop_assert!(max_diff(&fast, &direct) < 1e-9);
    }

    #[test]
    fn c2_has_period_one((n, x) in sized_frame(), alpha in 0u64..10, c2 in 0.0f64..1.0, k in -10i32..10) {
        let a = idaft_modulate(&make_config(n, alpha, c2, 0, 0).unwrap(), &DaftSymbols::new(x.clone())).unwrap();
        let b = idaft_modulate(&make_config(n, alpha, c2 + k as f64, 0, 0).unwrap(), &DaftSymbols::new(x)).unwrap();
        prop_assert!(max_diff(&a.samples, &b.samples) < 1e-9);
    }

    #[test]
    fn c1_has_period_one((n, x) in sized_frame(), alpha in 0u64..10, c2 in 0.0f64..1.0) {
        let x = DaftSymbols::new(x);
        let with_prefix = |a: u64| {
            let cfg = make_config(n, a, c2, 0, 0).unwrap().with_cpp_len(3.min(n)).unwrap();
            add_cpp(&cfg, &idaft_modulate(&cfg, &x).unwrap()).unwrap().samples
        };
        prop_assert!(max_diff(&with_prefix(alpha), &with_prefix(alpha + n as u64)) < 1e-9);
    }

    #[test]
    fn canonicalize_c2_is_idempotent_and_equivalent(c2 in -1e6f64..1e6) {
        let once = canonicalize_c2(c2);
        prop_assert!((0.0..1.0).contains(&once));
        prop_assert_eq!(canonicalize_c2(once), once);
        prop_assert!(c2_equivalent(once, c2));
    }

    #[test]
    fn qam_round_trip(bits in prop::collection::vec(0u8..=1, 0..64).prop_map(|mut v| { v.truncate(v.len() / 4 * 4); v }),
                      order in prop::sample::select(vec![QamOrder::Qpsk, QamOrder::Qam16])) {
        let block = BitBlock::new(bits, order.bits_per_symbol()).unwrap();
        let syms = qam_map(&block, order).unwrap();
        let energy: f64 = syms.iter().map(|s| s.norm_sqr()).sum::<f64>() / syms.len().max(1) as f64;
        prop_assert!(syms.is_empty() || energy < 1.8);
        prop_assert_eq!(qam_demap(&syms, order), block);
    }

    #[test]
    fn column_offset_is_a_cyclic_shift(alpha_c1 in 0u64..8, delay in 0usize..8, doppler in -8i64..8) {
        let cfg = make_config(128, alpha_c1, 0.1, 0, 0).unwrap();
        let off = column_offset(&cfg, delay, doppler) as i64;
        let expect = (doppler + (2 * alpha_c1 as i64 + 1) * delay as i64).rem_euclid(128);
        prop_assert_eq!(off, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Time-domain simulation equals the sparse effective channel for random channels.
    #[test]
    fn time_and_daft_domain_models_agree(
        n in prop::sample::select(vec![16usize, 64]),
        seed in any::<u64>(),
        alpha_c1 in 0u64..5,
        c2 in 0.0f64..1.0,
        paths in 1usize..5,
        max_doppler in 0u64..4,
        x_seed in 0u64..1000,
    ) {
        let max_delay = 4usize.max(paths - 1);
        let cfg = make_config(n, alpha_c1, c2, 0, 0).unwrap().with_cpp_len(max_delay).unwrap();
        let ch = generate_channel(seed, paths, max_delay, max_doppler).unwrap();
        let x: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(1.0, (x_seed as f64 + 1.3) * i as f64)).collect();
        let x = DaftSymbols::new(x);
        let r = apply_channel(&cfg, &ch, &add_cpp(&cfg, &idaft_modulate(&cfg, &x).unwrap()).unwrap(), NoiseSpec::noiseless(), 0).unwrap();
        let y = daft_demodulate(&cfg, &remove_cpp(&cfg, &r).unwrap()).unwrap();
        let hx = build_effective_channel(&cfg, &ch).mul_vec(&x.values);
        prop_assert!(max_diff(&y.values, &hx) < 1e-9);
    }
}
