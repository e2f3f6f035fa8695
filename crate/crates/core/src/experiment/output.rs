//! CSV and gnuplot output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::runner::{ResultRow, Role};
use super::spec::ExperimentSpec;
use crate::error::{AfdmError, Result};

pub const CSV_HEADER: &str = "scenario_id,role,sweep_param,sweep_value,snr_db,trials,bits_total,bit_errors,ber";

pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let rec = &r.record;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6e}",
            rec.scenario_id,
            r.role,
            r.sweep_param,
            r.sweep_value,
            rec.snr_db,
            rec.trials,
            rec.bits_total,
            rec.bit_errors,
            rec.ber()
        );
    }
    out
}

/// A gnuplot script drawing BER against SNR, one curve per role and sweep value.
pub fn gnuplot_script(spec: &ExperimentSpec, rows: &[ResultRow], csv_name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set logscale y");
    let _ = writeln!(s, "set format y '10^{{%L}}'");
    let _ = writeln!(s, "set xlabel 'SNR (dB)'");
    let _ = writeln!(s, "set ylabel 'BER'");
    let _ = writeln!(s, "set key outside right");
    let _ = writeln!(s, "set title '{}'", spec.scenario_id);
    let _ = writeln!(s, "set terminal pngcairo size 900,600");
    let _ = writeln!(s, "set output '{}.png'", spec.scenario_id);
    let mut curves: Vec<(Role, f64)> = Vec::new();
    for r in rows {
        if !curves.iter().any(|&(ro, v)| ro == r.role && v == r.sweep_value) {
            curves.push((r.role, r.sweep_value));
        }
    }
    // Zero-error points are drawn at one error so they stay on the log axis.
    let plots: Vec<String> = curves
        .iter()
        .map(|(role, v)| {
            format!(
                "'{csv_name}' using ($5):((strcol(2) eq '{role}' && $4 == {v:e}) ? ($8 > 0 ? $9 : 1.0/$7) : 1/0) \
                 with linespoints title '{role} {}={v}'",
                spec.sweep.name()
            )
        })
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}

/// Writes `<scenario_id>.csv`, `<scenario_id>.gp` and `<scenario_id>.spec`; returns the CSV path.
pub fn write_outputs(spec: &ExperimentSpec, rows: &[ResultRow], dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| AfdmError::io(dir, e))?;
    let csv = dir.join(format!("{}.csv", spec.scenario_id));
    let csv_name = csv.file_name().unwrap().to_string_lossy().into_owned();
    let write = |p: PathBuf, body: String| fs::write(&p, body).map_err(|e| AfdmError::io(&p, e));
    write(csv.clone(), to_csv(rows))?;
    write(dir.join(format!("{}.gp", spec.scenario_id)), gnuplot_script(spec, rows, &csv_name))?;
    write(dir.join(format!("{}.spec", spec.scenario_id)), spec.to_text())?;
    Ok(csv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::BerRecord;

    fn row(role: Role, v: f64, errors: u64) -> ResultRow {
        ResultRow {
            role,
            sweep_param: "alpha_c1",
            sweep_value: v,
            record: BerRecord { scenario_id: "t".into(), snr_db: 10.0, trials: 2, bit_errors: errors, bits_total: 1000 },
        }
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&[row(Role::Legitimate, 3.0, 5), row(Role::Eavesdropper, 1e-7, 0)]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "t,legitimate,alpha_c1,3,10,2,1000,5,5.000000e-3");
        assert_eq!(lines[2], "t,eavesdropper,alpha_c1,0.0000001,10,2,1000,0,0.000000e0");
        for l in &lines[1..] {
            assert_eq!(l.split(',').count(), 9);
        }
    }
}
