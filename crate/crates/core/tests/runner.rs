use std::fs;

use spin1_core::experiment::{
    emit_plot_script, run_spectrum, run_sweep, run_tunneling, write_spectrum, write_sweep,
    write_tunneling, ExperimentConfig, Mode, PlotKind, PlotStyle,
};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn shot_tunneling_tracks_cosine() {
    let mut cfg = ExperimentConfig::tunneling();
    cfg.mode = Mode::Shots;
    let run = run_tunneling(&cfg).unwrap();
    assert!(run.max_deviation() < 0.05, "{}", run.max_deviation());
}

#[test]
fn exact_and_shot_modes_agree() {
    let exact = run_tunneling(&ExperimentConfig::tunneling()).unwrap();
    let mut cfg = ExperimentConfig::tunneling();
    cfg.mode = Mode::Shots;
    cfg.shots = 1 << 17;
    let shots = run_tunneling(&cfg).unwrap();
    for (a, b) in exact.series.values().iter().zip(shots.series.values()) {
        assert!((a - b).abs() < 0.02);
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let mut cfg = ExperimentConfig::spectrum();
    cfg.mode = Mode::Shots;
    let one = in_pool(1, || run_spectrum(&cfg).unwrap());
    let four = in_pool(4, || run_spectrum(&cfg).unwrap());
    assert_eq!(one.series, four.series);
    assert_eq!(one.spectrum, four.spectrum);

    let mut t = ExperimentConfig::tunneling();
    t.mode = Mode::Shots;
    let one = in_pool(1, || run_tunneling(&t).unwrap());
    let four = in_pool(4, || run_tunneling(&t).unwrap());
    assert_eq!(one.series, four.series);
}

#[test]
fn seed_changes_shot_results() {
    let mut cfg = ExperimentConfig::tunneling();
    cfg.mode = Mode::Shots;
    let a = run_tunneling(&cfg).unwrap();
    cfg.seed += 1;
    let b = run_tunneling(&cfg).unwrap();
    assert_ne!(a.series, b.series);
}

#[test]
fn peephole_does_not_change_results() {
    let plain = run_spectrum(&ExperimentConfig::spectrum()).unwrap();
    let mut cfg = ExperimentConfig::spectrum();
    cfg.peephole = true;
    let reduced = run_spectrum(&cfg).unwrap();
    for (a, b) in plain.series.values().iter().zip(reduced.series.values()) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn artifacts_and_plot_scripts_are_written() {
    let dir = tempfile::tempdir().unwrap();

    let t = dir.path().join("tunneling");
    write_tunneling(&run_tunneling(&ExperimentConfig::tunneling()).unwrap(), &t).unwrap();
    let s = dir.path().join("spectrum");
    write_spectrum(&run_spectrum(&ExperimentConfig::spectrum()).unwrap(), &s).unwrap();
    let w = dir.path().join("sweep");
    write_sweep(
        &run_sweep(&ExperimentConfig::spectrum(), &[0.25, 0.5]).unwrap(),
        &w,
    )
    .unwrap();

    for (kind, d) in [
        (PlotKind::Tunneling, &t),
        (PlotKind::Spectrum, &s),
        (PlotKind::Sweep, &w),
    ] {
        for style in [PlotStyle::Matplotlib, PlotStyle::Gnuplot] {
            let path = emit_plot_script(kind, d, style).unwrap();
            assert!(fs::metadata(path).unwrap().len() > 0);
        }
    }

    let csv = fs::read_to_string(t.join("tunneling.csv")).unwrap();
    let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 98);
    let peaks: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(s.join("peaks.json")).unwrap()).unwrap();
    assert_eq!(peaks["peaks"].as_array().unwrap().len(), 4);
    let record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(t.join("tunneling.json")).unwrap()).unwrap();
    assert_eq!(record["seed"], 2022);
    assert!(record["timestamp_unix"].as_u64().is_some());
}

#[test]
fn csv_output_is_reproducible() {
    let mut cfg = ExperimentConfig::spectrum();
    cfg.mode = Mode::Shots;
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    write_spectrum(&run_spectrum(&cfg).unwrap(), a.path()).unwrap();
    write_spectrum(&in_pool(3, || run_spectrum(&cfg).unwrap()), b.path()).unwrap();
    for name in ["spectrum.csv", "spectrum_series.csv"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap()
        );
    }
}
