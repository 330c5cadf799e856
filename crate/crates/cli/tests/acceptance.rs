//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin1_core::dense::{
    expm_hermitian, global_phase_distance, hermitian_eigenvalues, identity, max_abs, max_abs_diff,
    pauli_matrix, unitary_of,
};
use spin1_core::experiment::{
    run_spectrum, run_sweep, run_tunneling, write_spectrum, ExperimentConfig, Mode,
};
use spin1_core::model::{
    hamiltonian_total, hamiltonian_two_qubit, singlet, spin1_operators, symmetric_isometry,
};
use spin1_core::protocols::{build_three_qubit_evolution, build_two_qubit_evolution};
use spin1_core::{Pauli, SpinModelParams};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn spin1sim(args: &[&str]) -> std::process::Output {
    spin1sim_threads(args, None)
}

fn spin1sim_threads(args: &[&str], threads: Option<usize>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spin1sim"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("RAYON_NUM_THREADS", n.to_string());
    }
    cmd.output().expect("failed to launch spin1sim")
}

/// Data rows of a CSV artifact, split into fields.
fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn sorted_peak_omegas(run: &spin1_core::experiment::SpectrumRun) -> Vec<f64> {
    let mut w: Vec<f64> = run.peak_set.peaks.iter().map(|p| p.omega).collect();
    w.sort_by(f64::total_cmp);
    w
}

fn tunneling_curve() -> Check {
    let start = Instant::now();
    let exact = run_tunneling(&ExperimentConfig::tunneling()).map_err(|e| e.to_string())?;
    let mut cfg = ExperimentConfig::tunneling();
    cfg.mode = Mode::Shots;
    let shots = run_tunneling(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(exact.series.len() == 97, "grid is not 97 points")?;
    let exact_dev = exact
        .series
        .times()
        .iter()
        .zip(exact.series.values())
        .map(|(a, v)| (v - a.cos()).abs())
        .fold(0.0, f64::max);
    let shot_dev = shots.max_deviation();
    ensure(exact_dev < 1e-9, format!("exact deviation {exact_dev:e}"))?;
    ensure(shot_dev < 0.05, format!("shot deviation {shot_dev}"))?;
    ensure(elapsed < 1.0, format!("took {elapsed:.3} s"))?;
    Ok(format!(
        "exact dev {exact_dev:.1e}, 8192-shot dev {shot_dev:.3}, {elapsed:.3} s"
    ))
}

fn spectrum_values() -> Check {
    let table = [
        (0.25, [3.5, 4.5]),
        (0.5, [3.0, 5.0]),
        (0.75, [2.5, 5.5]),
        (1.0, [2.0, 6.0]),
        (1.25, [1.5, 6.5]),
    ];
    let gammas: Vec<f64> = table.iter().map(|(g, _)| *g).collect();
    let sweep = run_sweep(&ExperimentConfig::spectrum(), &gammas).map_err(|e| e.to_string())?;
    let mut worst_energy = 0.0f64;
    for ((gamma, pair), run) in table.iter().zip(&sweep.runs) {
        let run = run.as_ref().ok_or(format!("gamma={gamma} failed"))?;
        let found = sorted_peak_omegas(run);
        let expected = [-pair[1], -pair[0], pair[0], pair[1]];
        ensure(found.len() == 4, format!("gamma={gamma}: peaks {found:?}"))?;
        for (f, e) in found.iter().zip(&expected) {
            ensure(
                (f - e).abs() <= 0.125,
                format!("gamma={gamma}: peak {f} vs {e}"),
            )?;
        }
        let levels = [-2.0 - gamma, -2.0 + gamma];
        for (got, want) in run.doublet.iter().zip(&levels) {
            worst_energy = worst_energy.max((got - want).abs());
        }
    }
    ensure(
        worst_energy <= 1.0 / 16.0,
        format!("energy error {worst_energy}"),
    )?;
    Ok(format!(
        "5 peak pairs on the grid, max energy error {worst_energy:.2e}"
    ))
}

fn splitting_law() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let result = spin1sim(&["sweep", "--out-dir", out.to_str().unwrap()]);
    ensure(
        result.status.success(),
        String::from_utf8_lossy(&result.stderr).to_string(),
    )?;
    let rows = csv_rows(&out.join("sweep.csv"));
    ensure(rows.len() == 7, format!("{} sweep rows", rows.len()))?;
    let mut worst = 0.0f64;
    for row in &rows {
        let gamma: f64 = row[0].parse().unwrap();
        let split: f64 = row[3]
            .parse()
            .map_err(|_| format!("gamma={gamma}: {}", row[5]))?;
        worst = worst.max((split - 2.0 * gamma.abs()).abs());
    }
    ensure(worst <= 0.125, format!("splitting error {worst}"))?;
    ensure(out.join("plot_sweep.py").is_file(), "no sweep plot script")?;
    Ok(format!(
        "7 gammas, max splitting error {worst:.2e}, table and plot script written"
    ))
}

fn decomposition_identities() -> Check {
    let result = spin1sim(&["identities", "--samples", "100"]);
    let stdout = String::from_utf8_lossy(&result.stdout);
    let passed = stdout.lines().filter(|l| l.starts_with("PASS")).count();
    ensure(
        result.status.success(),
        format!("exit {:?}: {stdout}", result.status.code()),
    )?;
    ensure(passed == 6, format!("{passed} identities passed"))?;
    Ok(format!(
        "{passed} identities pass at 1e-10 over 100 angles each"
    ))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = SpinModelParams::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
            .with_shift(rng.random_range(-3.0..3.0));
        let a = rng.random_range(-4.0 * PI..4.0 * PI);
        let pairs = [
            (
                unitary_of(&build_two_qubit_evolution(p.d, p.gamma, a).unwrap()).unwrap(),
                expm_hermitian(&hamiltonian_two_qubit(&p), a).unwrap(),
            ),
            (
                unitary_of(&build_three_qubit_evolution(p.d, p.gamma, p.c, a).unwrap()).unwrap(),
                expm_hermitian(&hamiltonian_total(&p), a).unwrap(),
            ),
        ];
        for (u, v) in &pairs {
            let d = global_phase_distance(u, v)
                .unwrap()
                .unwrap_or(f64::INFINITY);
            worst = worst.max(d);
        }
    }
    ensure(worst < 1e-9, format!("max deviation {worst:e}"))?;
    Ok(format!("100 draws, max deviation {worst:.1e}"))
}

fn physics_invariants() -> Check {
    let ops = spin1_operators();
    let singlet = singlet();
    let annihilation = ops
        .iter()
        .map(|s| max_abs(&(s * &singlet)))
        .fold(0.0, f64::max);
    ensure(
        annihilation < 1e-12,
        format!("singlet residual {annihilation:e}"),
    )?;

    let v = symmetric_isometry();
    let s2 = ops
        .iter()
        .map(|s| s * s)
        .fold(identity(4) * Complex64::new(0.0, 0.0), |a, b| a + b);
    let casimir = max_abs_diff(
        &(v.adjoint() * s2 * &v),
        &(identity(3) * Complex64::new(2.0, 0.0)),
    );
    ensure(casimir < 1e-12, format!("S^2 deviation {casimir:e}"))?;

    let x0 = pauli_matrix(Pauli::X).kronecker(&identity(4));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut anti = 0.0f64;
    let mut spectral = 0.0f64;
    for _ in 0..1000 {
        let p = SpinModelParams::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))
            .with_shift(rng.random_range(-5.0..5.0));
        let ht = hamiltonian_total(&p);
        anti = anti.max(max_abs(&(&ht * &x0 + &x0 * &ht)));
        let h = v.adjoint() * hamiltonian_two_qubit(&p) * &v;
        let got = hermitian_eigenvalues(&h).unwrap();
        let mut want = [0.0, p.d - p.gamma.abs(), p.d + p.gamma.abs()];
        want.sort_by(f64::total_cmp);
        for (a, b) in got.iter().zip(&want) {
            spectral = spectral.max((a - b).abs());
        }
    }
    ensure(anti < 1e-12, format!("anticommutator {anti:e}"))?;
    ensure(spectral < 1e-10, format!("eigenvalue error {spectral:e}"))?;
    Ok(format!(
        "singlet {annihilation:.0e}, S^2 {casimir:.0e}, anticommutator {anti:.0e}, eigenvalues {spectral:.0e}"
    ))
}

fn shot_noise() -> Check {
    let mut cfg = ExperimentConfig::spectrum();
    cfg.mode = Mode::Shots;
    let run = run_spectrum(&cfg).map_err(|e| e.to_string())?;
    let found = sorted_peak_omegas(&run);
    let expected = [-4.5, -3.5, 3.5, 4.5];
    ensure(found.len() == 4, format!("peaks {found:?}"))?;
    for (f, e) in found.iter().zip(&expected) {
        ensure((f - e).abs() <= 0.125, format!("peak {f} vs {e}"))?;
    }
    let dir = tempfile::tempdir().unwrap();
    write_spectrum(&run, dir.path()).map_err(|e| e.to_string())?;
    let peaks: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("peaks.json")).unwrap()).unwrap();
    let noise = peaks["imag_noise_max"]
        .as_f64()
        .ok_or("imaginary-noise diagnostic missing")?;
    Ok(format!(
        "peaks {found:?} at 8192 shots, max |Im| {noise:.3e}"
    ))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, &[&str], &[&str]); 3] = [
        ("tunneling", &["--mode", "shots"], &["tunneling.csv"]),
        (
            "spectrum",
            &["--mode", "shots"],
            &["spectrum_series.csv", "spectrum.csv"],
        ),
        ("sweep", &["--gammas", "0.25,0.5"], &["sweep.csv"]),
    ];
    let mut compared = 0;
    for (cmd, extra, files) in runs {
        let out = dir.path().join(cmd);
        let mut args = vec![cmd, "--out-dir", out.to_str().unwrap(), "--plot", "none"];
        args.extend_from_slice(extra);
        let mut snapshots = Vec::new();
        for threads in [1, 4] {
            let result = spin1sim_threads(&args, Some(threads));
            ensure(result.status.success(), format!("{cmd} failed"))?;
            snapshots.push(
                files
                    .iter()
                    .map(|f| fs::read(out.join(f)).unwrap())
                    .collect::<Vec<_>>(),
            );
        }
        ensure(
            snapshots[0] == snapshots[1],
            format!("{cmd} CSVs differ between runs"),
        )?;
        compared += files.len();
    }
    Ok(format!(
        "{compared} CSV files byte-identical across runs on 1 and 4 threads"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("tunneling curve", tunneling_curve),
        ("spectrum values", spectrum_values),
        ("splitting law", splitting_law),
        ("decomposition identities", decomposition_identities),
        ("oracle equivalence", oracle_equivalence),
        ("physics invariants", physics_invariants),
        ("shot-noise peak set", shot_noise),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
