//! CSV and JSON artifacts.
//!
//! CSV files open with the run configuration as `# key = value` comment
//! lines, followed by a header row and 17-significant-digit reals. Nothing
//! time-dependent goes into a CSV, so identical runs give identical files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::format::sig17;

use super::config::ExperimentConfig;
use super::runner::{SpectrumRun, SweepOutcome, SweepRun, TunnelingRun};

pub const TUNNELING_CSV: &str = "tunneling.csv";
pub const TUNNELING_JSON: &str = "tunneling.json";
pub const SERIES_CSV: &str = "spectrum_series.csv";
pub const SPECTRUM_CSV: &str = "spectrum.csv";
pub const PEAKS_JSON: &str = "peaks.json";
pub const SPECTRUM_JSON: &str = "spectrum.json";
pub const SWEEP_CSV: &str = "sweep.csv";
pub const SWEEP_JSON: &str = "sweep.json";

pub fn config_json(cfg: &ExperimentConfig) -> Value {
    let map: Map<String, Value> = cfg
        .to_pairs()
        .into_iter()
        .map(|(k, v)| (k.to_string(), Value::String(v)))
        .collect();
    Value::Object(map)
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn record(cfg: &ExperimentConfig, results: Value) -> Value {
    json!({
        "config": config_json(cfg),
        "timestamp_unix": timestamp(),
        "seed": cfg.seed,
        "results": results,
    })
}

pub fn csv_text(cfg: &ExperimentConfig, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (k, v) in cfg.to_pairs() {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

fn write_json(dir: &Path, name: &str, value: &Value) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write(dir, name, &text)
}

pub fn write_tunneling(run: &TunnelingRun, dir: &Path) -> Result<Vec<PathBuf>> {
    let rows: Vec<Vec<String>> = run
        .series
        .times()
        .iter()
        .zip(run.series.values())
        .zip(&run.analytic)
        .map(|((&a, &v), &e)| vec![sig17(a), sig17(v), sig17(e)])
        .collect();
    let csv = csv_text(&run.config, &["alpha", "sz_mean", "sz_analytic"], &rows);
    let results = json!({
        "alpha": run.series.times(),
        "sz_mean": run.series.values(),
        "sz_analytic": run.analytic,
        "max_abs_deviation": run.max_deviation(),
    });
    Ok(vec![
        write(dir, TUNNELING_CSV, &csv)?,
        write_json(dir, TUNNELING_JSON, &record(&run.config, results))?,
    ])
}

pub fn peaks_json(run: &SpectrumRun) -> Value {
    json!({
        "config": config_json(&run.config),
        "peaks": run.extraction.peaks,
        "dc_peak": run.peak_set.dc,
        "energies": run.extraction.energies,
        "doublet": run.doublet,
        "splitting": run.splitting,
        "gamma_estimate": run.gamma_estimate(),
        "imag_noise_max": run.imag_noise,
        "warnings": run.extraction.warnings,
    })
}

pub fn write_spectrum(run: &SpectrumRun, dir: &Path) -> Result<Vec<PathBuf>> {
    let series_rows: Vec<Vec<String>> = run
        .series
        .times()
        .iter()
        .zip(run.series.values())
        .zip(&run.analytic)
        .map(|((&a, &v), &e)| vec![sig17(a), sig17(v), sig17(e)])
        .collect();
    let spectrum_rows: Vec<Vec<String>> = run
        .spectrum
        .omegas
        .iter()
        .zip(&run.spectrum.values)
        .map(|(&w, v)| vec![sig17(w), sig17(v.re), sig17(v.im)])
        .collect();
    let results = json!({
        "shift": run.shift,
        "alpha": run.series.times(),
        "sx_mean": run.series.values(),
        "sx_analytic": run.analytic,
        "peaks": peaks_json(run),
    });
    Ok(vec![
        write(
            dir,
            SERIES_CSV,
            &csv_text(
                &run.config,
                &["alpha", "sx_mean", "sx_analytic"],
                &series_rows,
            ),
        )?,
        write(
            dir,
            SPECTRUM_CSV,
            &csv_text(&run.config, &["omega", "re", "im"], &spectrum_rows),
        )?,
        write_json(dir, PEAKS_JSON, &peaks_json(run))?,
        write_json(dir, SPECTRUM_JSON, &record(&run.config, results))?,
    ])
}

/// Subdirectory holding the full artifacts of sweep entry `index`.
pub fn sweep_entry_dir(dir: &Path, index: usize, gamma: f64) -> PathBuf {
    dir.join(format!("gamma_{index:02}_{gamma}"))
}

pub fn write_sweep(run: &SweepRun, dir: &Path) -> Result<Vec<PathBuf>> {
    let nan = || "nan".to_string();
    let rows: Vec<Vec<String>> = run
        .rows
        .iter()
        .map(|r| match &r.outcome {
            SweepOutcome::Ok {
                e_minus,
                e_plus,
                splitting,
                expected_splitting,
                within_resolution,
            } => vec![
                sig17(r.gamma),
                sig17(*e_minus),
                sig17(*e_plus),
                sig17(*splitting),
                sig17(*expected_splitting),
                if *within_resolution { "ok" } else { "off" }.to_string(),
            ],
            SweepOutcome::Error { kind, .. } => vec![
                sig17(r.gamma),
                nan(),
                nan(),
                nan(),
                sig17(2.0 * r.gamma.abs()),
                format!("error:{kind}"),
            ],
        })
        .collect();
    let csv = csv_text(
        &run.config,
        &[
            "gamma",
            "e_minus",
            "e_plus",
            "splitting",
            "expected_splitting",
            "status",
        ],
        &rows,
    );
    let mut paths = vec![
        write(dir, SWEEP_CSV, &csv)?,
        write_json(
            dir,
            SWEEP_JSON,
            &record(&run.config, json!({ "rows": run.rows })),
        )?,
    ];
    for (i, (row, entry)) in run.rows.iter().zip(&run.runs).enumerate() {
        if let Some(entry) = entry {
            paths.extend(write_spectrum(entry, &sweep_entry_dir(dir, i, row.gamma))?);
        }
    }
    Ok(paths)
}
