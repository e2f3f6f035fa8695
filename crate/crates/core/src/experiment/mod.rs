//! Monte-Carlo BER experiments: spec files, the trial runner, built-in figure
//! sweeps and CSV/gnuplot output.

mod builtin;
mod output;
mod runner;
mod spec;

pub use builtin::{builtin, fig5a, fig5b, fig6, fig7, fig7_optimal, BUILTIN_NAMES, DEFAULT_TRIALS};
pub use output::{gnuplot_script, to_csv, write_outputs, CSV_HEADER};
pub use runner::{
    find_row, run_experiment, run_experiment_with, run_trial, sweep_points, Execution, ResultRow, Role, RoleOutcome,
    SweepPoint,
};
pub use spec::{BaseConfig, EveOverrides, ExperimentSpec, SweepAxis};
