//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.
//!
//! Monte-Carlo comparisons use 2-standard-error bands. Standard errors are
//! binomial with the error count floored at one, so a zero-error point still
//! carries the uncertainty of a single event, and ratios against a zero-error
//! point use one error per `bits_total` as the denominator.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use afdm::experiment::{self, find_row, ExperimentSpec, ResultRow, Role};
use afdm::validate::{self, Check};
use afdm::{classify_receiver, ChannelBounds, Classification, ReceiverParams};

const SEED: u64 = 20_240_601;
const TRIALS: u64 = 200;
const SNRS: [f64; 5] = [0.0, 5.0, 10.0, 15.0, 20.0];
const Z: f64 = 2.0;
const RUNTIME_BUDGET: Duration = Duration::from_secs(15 * 60);

#[derive(Clone, Copy, Debug)]
struct Ber {
    errors: u64,
    bits: u64,
}

impl Ber {
    fn of(row: &ResultRow) -> Self {
        Ber { errors: row.record.bit_errors, bits: row.record.bits_total }
    }

    fn pooled(items: &[Ber]) -> Self {
        Ber { errors: items.iter().map(|b| b.errors).sum(), bits: items.iter().map(|b| b.bits).sum() }
    }

    fn p(&self) -> f64 {
        self.errors as f64 / self.bits as f64
    }

    fn floor(&self) -> f64 {
        1.0 / self.bits as f64
    }

    fn se(&self) -> f64 {
        let p = self.errors.max(1) as f64 / self.bits as f64;
        (p * (1.0 - p) / self.bits as f64).sqrt()
    }

    fn hi(&self) -> f64 {
        self.p() + Z * self.se()
    }

    fn lo(&self) -> f64 {
        (self.p() - Z * self.se()).max(0.0)
    }
}

impl std::fmt::Display for Ber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.2e}", self.p())
    }
}

/// `a` and `b` differ by at most a factor `k` in either direction.
fn within_factor(a: Ber, b: Ber, k: f64) -> bool {
    a.lo() <= k * b.hi().max(b.floor()) && b.lo() <= k * a.hi().max(a.floor())
}

/// `a` is at least `k` times `b`.
fn at_least(a: Ber, b: Ber, k: f64) -> bool {
    a.hi() >= k * b.lo().max(b.floor())
}

fn within_se(a: Ber, b: Ber) -> bool {
    (a.p() - b.p()).abs() <= Z * (a.se().powi(2) + b.se().powi(2)).sqrt()
}

/// Point-estimate ratio, for reporting.
fn ratio(a: Ber, b: Ber) -> f64 {
    a.p() / b.p().max(b.floor())
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, summary: String::new(), failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }
}

fn row(rows: &[ResultRow], role: Role, v: f64, snr: f64) -> Ber {
    Ber::of(find_row(rows, role, v, snr).unwrap_or_else(|| panic!("missing row {role} {v} {snr}")))
}

fn run(spec: &ExperimentSpec) -> Vec<ResultRow> {
    experiment::run_experiment(spec).expect("built-in sweep must run")
}

fn from_check(c: Check, budget: Option<(Duration, Duration)>) -> Outcome {
    let mut o = Outcome::new();
    o.summary = format!("{} measured={:.3e} tol={:.1e}; {}", c.name, c.measured, c.tolerance, c.detail);
    o.require(c.passed, || format!("{} out of tolerance", c.name));
    if let Some((took, limit)) = budget {
        o.summary.push_str(&format!("; {took:.2?}"));
        o.require(took <= limit, || format!("runtime {took:.2?} exceeds {limit:?}"));
    }
    o
}

fn timed(f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let c = f();
    (c, start.elapsed())
}

fn criterion_1() -> Outcome {
    let (c, t) = timed(|| validate::check_round_trip(100, SEED));
    from_check(c, Some((t, Duration::from_secs(5))))
}

fn criterion_2() -> Outcome {
    let (c, t) = timed(|| validate::check_oracle_equivalence(50, SEED));
    from_check(c, Some((t, Duration::from_secs(10))))
}

fn criterion_3() -> Outcome {
    let mut o = from_check(validate::check_geometric_sum(), None);
    let corrupt = validate::check_corrupted_c1_detected();
    o.summary.push_str(&format!("; corrupted c1 indicator error {:.2}", corrupt.measured));
    o.require(corrupt.passed, || "corrupted c1 not detected".into());
    o
}

fn criterion_4() -> Outcome {
    from_check(validate::check_periodicity(SEED), None)
}

fn criterion_5() -> Outcome {
    from_check(validate::check_cpp_degeneracy(), None)
}

fn criterion_6() -> Outcome {
    from_check(validate::check_noiseless_recovery(20, SEED), None)
}

fn criterion_7() -> Outcome {
    from_check(validate::check_parameter_algebra(), None)
}

fn criterion_8() -> Outcome {
    let rows = run(&experiment::fig5a(SEED, TRIALS));
    let mut o = Outcome::new();
    let admissible = [3.0, 4.0, 5.0, 6.0, 7.0];
    for &snr in &SNRS {
        for &a in &admissible {
            for &b in &admissible {
                let (x, y) = (row(&rows, Role::Legitimate, a, snr), row(&rows, Role::Legitimate, b, snr));
                o.require(within_factor(x, y, 3.0), || format!("alpha_c1 {a} vs {b} at {snr} dB: {x} vs {y}"));
            }
        }
    }
    for &a in &admissible {
        for w in SNRS.windows(2) {
            let (x, y) = (row(&rows, Role::Legitimate, a, w[0]), row(&rows, Role::Legitimate, a, w[1]));
            o.require(y.lo() <= x.hi(), || format!("alpha_c1 {a}: BER rises from {x} at {} dB to {y} at {} dB", w[0], w[1]));
        }
    }
    let matched = Ber::pooled(&admissible.map(|a| row(&rows, Role::Legitimate, a, 20.0)));
    let mut parts = vec![format!("admissible pooled BER at 20 dB {matched}")];
    for bad in [2.0, 8.0] {
        let x = row(&rows, Role::Legitimate, bad, 20.0);
        parts.push(format!("alpha_c1={bad}: {x} ({:.1}x)", ratio(x, matched)));
        o.require(at_least(x, matched, 10.0), || format!("alpha_c1 {bad} at 20 dB only {:.1}x matched", ratio(x, matched)));
    }
    let spread: Vec<String> = admissible.iter().map(|&a| row(&rows, Role::Legitimate, a, 20.0).to_string()).collect();
    parts.push(format!("alpha_c1 3..7 at 20 dB [{}]", spread.join(" ")));
    o.summary = parts.join("; ");
    o
}

fn criterion_9() -> Outcome {
    let rows = run(&experiment::fig5b(SEED, TRIALS));
    let mut o = Outcome::new();
    let mut min_mismatch = f64::INFINITY;
    for a in 2..=8 {
        let a = a as f64;
        for &snr in &SNRS {
            let eve = row(&rows, Role::Eavesdropper, a, snr);
            if a == 5.0 {
                let legit = row(&rows, Role::Legitimate, a, snr);
                o.require(within_se(eve, legit), || format!("matched eavesdropper at {snr} dB: {eve} vs {legit}"));
            } else {
                min_mismatch = min_mismatch.min(eve.p());
                o.require(eve.hi() >= 0.2, || format!("eavesdropper alpha_c1 {a} at {snr} dB: {eve} < 0.2"));
            }
        }
    }
    o.summary = format!(
        "lowest mismatched eavesdropper BER {min_mismatch:.3}; matched eavesdropper at 20 dB {} vs legitimate {}",
        row(&rows, Role::Eavesdropper, 5.0, 20.0),
        row(&rows, Role::Legitimate, 5.0, 20.0)
    );
    o
}

fn criterion_10() -> Outcome {
    let rows = run(&experiment::fig6(SEED, TRIALS));
    let mut o = Outcome::new();
    let eve = |d: f64| row(&rows, Role::Eavesdropper, d, 20.0);
    let base = eve(0.0);
    for d in [1e-8, -1e-8, 1e-7, -1e-7, 1.0, -1.0, 10.0, -10.0] {
        let x = eve(d);
        o.require(within_se(x, base), || format!("deviation {d:e}: {x} vs {base} beyond 2 SE"));
    }
    for d in [1e-6, -1e-6] {
        let x = eve(d);
        o.require(x.hi() >= 0.01 && x.lo() <= 0.45, || format!("deviation {d:e}: {x} outside [0.01, 0.45]"));
    }
    for d in [1e-5, -1e-5] {
        let x = eve(d);
        o.require(x.hi() > 0.3, || format!("deviation {d:e}: {x} not above 0.3"));
    }
    o.summary = format!(
        "at 20 dB: dev 0 {base}, 1e-7 {}, -1e-7 {}, 1e-6 {}, 1e-5 {}, +1 {}, +10 {}",
        eve(1e-7),
        eve(-1e-7),
        eve(1e-6),
        eve(1e-5),
        eve(1.0),
        eve(10.0)
    );
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    let rows = run(&experiment::fig7(SEED, TRIALS));
    let risk = [5.0, 6.0, 7.0];
    for &snr in &SNRS {
        for &a in &risk {
            for &b in &risk {
                let (x, y) = (row(&rows, Role::Eavesdropper, a, snr), row(&rows, Role::Eavesdropper, b, snr));
                o.require(within_factor(x, y, 3.0), || format!("l_max {a} vs {b} at {snr} dB: {x} vs {y}"));
            }
        }
    }
    let matched = Ber::pooled(&risk.map(|l| row(&rows, Role::Eavesdropper, l, 20.0)));
    let mut parts = vec![format!("L_max=7: l_max 5..7 pooled {matched}")];
    for l in [4.0, 8.0] {
        let x = row(&rows, Role::Eavesdropper, l, 20.0);
        parts.push(format!("l_max={l}: {x} ({:.1}x)", ratio(x, matched)));
        o.require(at_least(x, matched, 10.0), || format!("l_max {l} at 20 dB only {:.1}x", ratio(x, matched)));
    }

    let opt = experiment::fig7_optimal(SEED, TRIALS);
    let rows = run(&opt);
    let tx = opt.tx_config(opt.base.alpha_c1).unwrap();
    let bounds = ChannelBounds { max_doppler: opt.base.alpha_c_max, max_delay: opt.base.l_c_max };
    let reference = row(&rows, Role::Eavesdropper, 5.0, 20.0);
    parts.push(format!("L_max=5: l_max=5 {reference}"));
    for l in [6u64, 7] {
        let rx = ReceiverParams::new(opt.base.alpha_c1, opt.base.c2, l, opt.base.detection_threshold).unwrap();
        let class = classify_receiver(&tx, bounds, &rx);
        o.require(class == Classification::SpuriousPaths, || format!("l_max {l} classified {class}"));
        let x = row(&rows, Role::Eavesdropper, l as f64, 20.0);
        parts.push(format!("l_max={l}: {x} ({:.1}x, {class})", ratio(x, reference)));
        o.require(at_least(x, reference, 10.0), || format!("optimal L_max: l_max {l} only {:.1}x", ratio(x, reference)));
    }
    o.summary = parts.join("; ");
    o
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 11] = [
        ("round-trip unitarity", criterion_1),
        ("oracle equivalence", criterion_2),
        ("geometric-sum collapse", criterion_3),
        ("chirp periodicity", criterion_4),
        ("prefix degeneracy", criterion_5),
        ("noiseless recovery", criterion_6),
        ("parameter algebra", criterion_7),
        ("alpha_c1 sweep shape", criterion_8),
        ("eavesdropper alpha_c1", criterion_9),
        ("eavesdropper c2 deviation", criterion_10),
        ("eavesdropper l_max", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        println!(
            "criterion {:>2} {} {name} ({:.1?}): {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            t.elapsed(),
            o.summary
        );
        for why in &o.failures {
            println!("    {why}");
        }
        if !o.passed {
            failed += 1;
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} of {} criteria passed in {total:.1?}", criteria.len() - failed, criteria.len());
    if total > RUNTIME_BUDGET {
        println!("acceptance: runtime exceeded {RUNTIME_BUDGET:?}");
        failed += 1;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
