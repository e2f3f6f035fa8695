use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use afdm::config::pilot_region_len;
use afdm::experiment::{self, ExperimentSpec, DEFAULT_TRIALS};
use afdm::{admissible_c1, security_risk_range, AfdmError};

/// Secure AFDM link simulator.
#[derive(Parser)]
#[command(name = "afdm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in self-checks.
    Validate,
    /// Print parameter-design advice for a frame and channel.
    Advise {
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long)]
        alpha_c_max: u64,
        #[arg(long)]
        alpha_max: u64,
        #[arg(long)]
        l_c_max: u64,
        #[arg(long)]
        l_max: u64,
    },
    /// Run an experiment described by a spec file.
    Run {
        spec: PathBuf,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// BER versus SNR for several shared alpha_c1 values.
    #[command(name = "sweep-fig5a")]
    SweepFig5a(SweepArgs),
    /// Eavesdropper alpha_c1 mismatch.
    #[command(name = "sweep-fig5b")]
    SweepFig5b(SweepArgs),
    /// Eavesdropper c2 deviation.
    #[command(name = "sweep-fig6")]
    SweepFig6(SweepArgs),
    /// Eavesdropper l_max, with the preset L_max above and at the channel delay.
    #[command(name = "sweep-fig7")]
    SweepFig7(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

fn exit_code(e: &AfdmError) -> u8 {
    match e {
        AfdmError::Config(_) => 2,
        AfdmError::Io { .. } => 3,
        AfdmError::InputShape(_) | AfdmError::State(_) => 1,
    }
}

fn run_and_write(spec: &ExperimentSpec, out: &Path) -> afdm::Result<()> {
    let rows = experiment::run_experiment(spec)?;
    let csv = experiment::write_outputs(spec, &rows, out)?;
    println!("{}: {} rows -> {}", spec.scenario_id, rows.len(), csv.display());
    Ok(())
}

fn advise(n: usize, alpha_c_max: u64, alpha_max: u64, l_c_max: u64, l_max: u64) -> afdm::Result<()> {
    if alpha_c_max > alpha_max {
        return Err(AfdmError::Config(format!(
            "channel Doppler alpha^C_max={alpha_c_max} exceeds the preset guard alpha_max={alpha_max}"
        )));
    }
    let range = security_risk_range(l_c_max, l_max)?;
    afdm::make_config(n, alpha_max, 0.0, alpha_max, l_max)?;
    let set = admissible_c1(n, alpha_c_max, alpha_max);
    let values: Vec<String> = set.values.iter().map(|v| v.to_string()).collect();
    println!("admissible c1: {{{}}}", values.join(", "));
    println!("  alpha_c1 in {}..={} ({} choices)", set.alpha_lo, set.alpha_hi, set.values.len());
    println!("c2: period 1, choose from [0, 1)");
    println!("security-risk range for l_max: {range} (width {})", range.width());
    if range.is_optimal() {
        println!("  L_max equals the channel delay: no slack for eavesdroppers");
    } else {
        println!("  set L_max = {l_c_max} to close the range");
    }
    let occupied = pilot_region_len(alpha_max, l_max);
    println!("frame: {occupied} pilot and guard symbols, {} data symbols of {n}", n - occupied);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate => {
            let report = afdm::validate::validate();
            println!("{report}");
            if !report.all_passed() {
                return ExitCode::from(1);
            }
            Ok(())
        }
        Command::Advise { n, alpha_c_max, alpha_max, l_c_max, l_max } => advise(n, alpha_c_max, alpha_max, l_c_max, l_max),
        Command::Run { spec, out } => std::fs::read_to_string(&spec)
            .map_err(|e| AfdmError::Io { path: spec.display().to_string(), source: e })
            .and_then(|text| ExperimentSpec::parse(&text))
            .and_then(|s| run_and_write(&s, &out)),
        Command::SweepFig5a(a) => run_and_write(&experiment::fig5a(a.seed, a.trials), &a.out),
        Command::SweepFig5b(a) => run_and_write(&experiment::fig5b(a.seed, a.trials), &a.out),
        Command::SweepFig6(a) => run_and_write(&experiment::fig6(a.seed, a.trials), &a.out),
        Command::SweepFig7(a) => run_and_write(&experiment::fig7(a.seed, a.trials), &a.out)
            .and_then(|_| run_and_write(&experiment::fig7_optimal(a.seed, a.trials), &a.out)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
