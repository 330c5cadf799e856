use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::model::{analytic_probe_mean, analytic_sz, validate_shift, ValidatedShift};
use crate::pauli::{Pauli, PauliObservable};
use crate::protocols::{build_spectrum_protocol, build_tunneling_protocol};
use crate::sampling::{estimate_expectation_from_shots, sample_z_measurements};
use crate::spectral::{
    detect_peaks, dft, peaks_to_energies, splitting_of, uniform_grid, EnergyExtraction, PeakSet,
    Spectrum, TimeSeries,
};
use crate::state::QuantumState;

use super::config::{ExperimentConfig, ExperimentKind, Mode};

/// Seed for grid point `index`: `seed + index`, wrapping.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

/// How an observable is read off a circuit's output.
struct Readout {
    /// Observable on the final state in exact mode.
    exact: PauliObservable,
    /// Observable estimated from Z-basis counts in shot mode.
    shots: PauliObservable,
    rotated: bool,
}

fn evaluate(
    circuit: &Circuit,
    readout: &Readout,
    cfg: &ExperimentConfig,
    index: usize,
) -> Result<f64> {
    let circuit = if cfg.peephole {
        circuit.cancel_adjacent_cnots()
    } else {
        circuit.clone()
    };
    let mut state = QuantumState::zero(circuit.num_qubits())?;
    state.apply_circuit(&circuit)?;
    match cfg.mode {
        Mode::Exact => state.expectation(&readout.exact),
        Mode::Shots => {
            let counts = sample_z_measurements(&state, cfg.shots, point_seed(cfg.seed, index))?;
            estimate_expectation_from_shots(&counts, &readout.shots, readout.rotated)
        }
    }
}

fn sweep_grid<F>(grid: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(usize, f64) -> Result<f64> + Sync,
{
    grid.par_iter()
        .enumerate()
        .map(|(i, &alpha)| f(i, alpha))
        .collect()
}

fn check_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.experiment != kind {
        return Err(Error::Config(format!(
            "configuration is for the {} experiment, not {kind}",
            cfg.experiment
        )));
    }
    cfg.validate()
}

#[derive(Debug, Clone, Serialize)]
pub struct TunnelingRun {
    pub config: ExperimentConfig,
    /// `⟨Sz(α)⟩` from the simulation.
    pub series: TimeSeries,
    /// `cos 2γα` on the same grid.
    pub analytic: Vec<f64>,
}

impl TunnelingRun {
    pub fn max_deviation(&self) -> f64 {
        self.series
            .values()
            .iter()
            .zip(&self.analytic)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn run_tunneling(cfg: &ExperimentConfig) -> Result<TunnelingRun> {
    check_kind(cfg, ExperimentKind::Tunneling)?;
    let p = cfg.params;
    let grid = uniform_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step)?;
    let sz = PauliObservable::spin_z(&[0, 1]);
    let readout = Readout {
        exact: sz.clone(),
        shots: sz,
        rotated: false,
    };
    let values = sweep_grid(&grid, |i, alpha| {
        evaluate(
            &build_tunneling_protocol(p.d, p.gamma, alpha)?,
            &readout,
            cfg,
            i,
        )
    })?;
    let analytic = grid.iter().map(|&a| analytic_sz(a, p.gamma)).collect();
    Ok(TunnelingRun {
        config: cfg.clone(),
        series: TimeSeries::new(grid, values)?,
        analytic,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRun {
    pub config: ExperimentConfig,
    pub shift: ValidatedShift,
    /// `⟨σx₀(α)⟩` from the simulation.
    pub series: TimeSeries,
    pub analytic: Vec<f64>,
    pub spectrum: Spectrum,
    pub peak_set: PeakSet,
    pub extraction: EnergyExtraction,
    /// The two tunneling-doublet levels, ascending.
    pub doublet: Vec<f64>,
    pub splitting: f64,
    /// Largest `|Im σ(ω)|` over the grid.
    pub imag_noise: f64,
}

impl SpectrumRun {
    pub fn gamma_estimate(&self) -> f64 {
        self.splitting / 2.0
    }

    pub fn grid_step(&self) -> f64 {
        self.spectrum.grid_step()
    }
}

/// Time series for the probe protocol without the spectral stage.
pub fn probe_series(
    cfg: &ExperimentConfig,
    shift: &ValidatedShift,
) -> Result<(TimeSeries, Vec<f64>)> {
    let p = cfg.params;
    let grid = uniform_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step)?;
    let readout = Readout {
        exact: PauliObservable::single(0, Pauli::Z),
        shots: PauliObservable::single(0, Pauli::X),
        rotated: true,
    };
    let values = sweep_grid(&grid, |i, alpha| {
        let circuit = build_spectrum_protocol(p.d, p.gamma, shift.c, p.phi, alpha)?;
        evaluate(&circuit, &readout, cfg, i)
    })?;
    let shifted = crate::model::SpinModelParams { c: shift.c, ..p };
    let analytic = grid
        .iter()
        .map(|&a| analytic_probe_mean(a, &shifted))
        .collect::<Result<Vec<_>>>()?;
    Ok((TimeSeries::new(grid, values)?, analytic))
}

/// Drops the `|0⟩` level (energy 0), which only shows up as a separate
/// line when the shift is nonzero; with `C = 0` it sits in the DC peak.
pub fn doublet_levels(energies: &[f64], c: f64, grid_step: f64) -> Vec<f64> {
    if c == 0.0 {
        return energies.to_vec();
    }
    let zero = energies
        .iter()
        .enumerate()
        .filter(|(_, e)| e.abs() <= grid_step / 2.0)
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i);
    energies
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != zero)
        .map(|(_, e)| *e)
        .collect()
}

pub fn run_spectrum(cfg: &ExperimentConfig) -> Result<SpectrumRun> {
    check_kind(cfg, ExperimentKind::Spectrum)?;
    let shift = validate_shift(&cfg.params, cfg.shift_mode())?;
    let (series, analytic) = probe_series(cfg, &shift)?;
    let spectrum = dft(&series, &series.natural_omega_grid())?;
    let peak_set = detect_peaks(&spectrum, cfg.threshold, cfg.min_separation)?;
    let step = spectrum.grid_step();
    let extraction = peaks_to_energies(&peak_set.peaks, shift.c, shift.sign, step);
    let doublet = doublet_levels(&extraction.energies, shift.c, step);
    let splitting = splitting_of(&doublet)?;
    let imag_noise = spectrum.max_imag();
    let mut config = cfg.clone();
    config.params.c = shift.c;
    Ok(SpectrumRun {
        config,
        shift,
        series,
        analytic,
        spectrum,
        peak_set,
        extraction,
        doublet,
        splitting,
        imag_noise,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SweepOutcome {
    Ok {
        e_minus: f64,
        e_plus: f64,
        splitting: f64,
        expected_splitting: f64,
        within_resolution: bool,
    },
    Error {
        kind: String,
        message: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub gamma: f64,
    #[serde(flatten)]
    pub outcome: SweepOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRun {
    pub config: ExperimentConfig,
    pub rows: Vec<SweepRow>,
    #[serde(skip)]
    pub runs: Vec<Option<SpectrumRun>>,
}

impl SweepRun {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| {
            matches!(
                r.outcome,
                SweepOutcome::Ok {
                    within_resolution: true,
                    ..
                }
            )
        })
    }
}

/// One spectrum run per `γ`; failures are recorded per row.
pub fn run_sweep(base: &ExperimentConfig, gammas: &[f64]) -> Result<SweepRun> {
    check_kind(base, ExperimentKind::Spectrum)?;
    let results: Vec<(SweepRow, Option<SpectrumRun>)> = gammas
        .par_iter()
        .map(|&gamma| {
            let mut cfg = base.clone();
            cfg.params.gamma = gamma;
            match run_spectrum(&cfg) {
                Ok(run) => {
                    let expected = 2.0 * gamma.abs();
                    let outcome = SweepOutcome::Ok {
                        e_minus: run.doublet[0],
                        e_plus: run.doublet[1],
                        splitting: run.splitting,
                        expected_splitting: expected,
                        within_resolution: (run.splitting - expected).abs() <= run.grid_step(),
                    };
                    (SweepRow { gamma, outcome }, Some(run))
                }
                Err(e) => (
                    SweepRow {
                        gamma,
                        outcome: SweepOutcome::Error {
                            kind: e.kind().to_string(),
                            message: e.to_string(),
                        },
                    },
                    None,
                ),
            }
        })
        .collect();
    let (rows, runs) = results.into_iter().unzip();
    let mut config = base.clone();
    config.gammas = gammas.to_vec();
    Ok(SweepRun { config, rows, runs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrong_kind_rejected() {
        let cfg = ExperimentConfig::spectrum();
        assert!(matches!(run_tunneling(&cfg), Err(Error::Config(_))));
        let cfg = ExperimentConfig::tunneling();
        assert!(run_spectrum(&cfg).is_err());
    }

    #[test]
    fn tunneling_exact_matches_cosine() {
        let run = run_tunneling(&ExperimentConfig::tunneling()).unwrap();
        assert_eq!(run.series.len(), 97);
        assert!(run.max_deviation() < 1e-9);
    }

    #[test]
    fn no_tunneling_stays_up() {
        let mut cfg = ExperimentConfig::tunneling();
        cfg.params.gamma = 0.0;
        let run = run_tunneling(&cfg).unwrap();
        assert!(run.series.values().iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn doublet_filter() {
        assert_eq!(doublet_levels(&[-2.0, -1.0], 0.0, 0.125), vec![-2.0, -1.0]);
        assert_eq!(
            doublet_levels(&[-2.0, -1.0, 0.01], -3.0, 0.125),
            vec![-2.0, -1.0]
        );
    }

    #[test]
    fn empty_sweep() {
        let run = run_sweep(&ExperimentConfig::spectrum(), &[]).unwrap();
        assert!(run.rows.is_empty());
    }

    #[test]
    fn seeds_are_offset_by_index() {
        assert_eq!(point_seed(10, 3), 13);
        assert_eq!(point_seed(u64::MAX, 1), 0);
    }
}
