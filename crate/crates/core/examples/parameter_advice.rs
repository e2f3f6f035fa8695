//! Design rules: admissible c1, c2 periodicity, the L_max risk range and how
//! various eavesdroppers are classified.

use afdm::{
    admissible_c1, canonicalize_c2, classify_receiver, make_config, security_risk_range, ChannelBounds, ReceiverParams,
};

fn main() -> afdm::Result<()> {
    let (n, alpha_c, alpha_max, l_c, l_max) = (512, 3, 7, 5, 7);
    let set = admissible_c1(n, alpha_c, alpha_max);
    let listed: Vec<String> = set.values.iter().map(|v| v.to_string()).collect();
    println!("admissible c1 for N={n}, alpha^C_max={alpha_c}, alpha_max={alpha_max}: {}", listed.join(", "));
    for c2 in [1.3, -0.25, 10.0] {
        println!("c2 = {c2} acts like {}", canonicalize_c2(c2));
    }
    let range = security_risk_range(l_c, l_max)?;
    println!("risk range {range}, optimal: {}", range.is_optimal());

    let tx = make_config(n, 5, 0.3, alpha_max, l_max)?;
    let bounds = ChannelBounds { max_doppler: alpha_c, max_delay: l_c };
    let receivers = [
        ("legitimate", 5, 0.3, 7),
        ("alpha_c1 below channel Doppler", 2, 0.3, 7),
        ("alpha_c1 beyond guard", 8, 0.3, 7),
        ("other admissible alpha_c1", 4, 0.3, 7),
        ("l_max too short", 5, 0.3, 4),
        ("l_max past guard", 5, 0.3, 8),
        ("l_max inside risk range", 5, 0.3, 5),
        ("c2 off by 1e-6", 5, 0.300001, 7),
        ("c2 off by 10", 5, 10.3, 7),
    ];
    for (label, a, c2, l) in receivers {
        let rx = ReceiverParams::new(a, c2, l, 0.05)?;
        println!("{label:<32} -> {}", classify_receiver(&tx, bounds, &rx));
    }
    Ok(())
}
