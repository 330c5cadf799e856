//! Fourier spectroscopy of a sampled `⟨σx₀(t)⟩` series.
//!
//! The transform is the Riemann sum `(dt/2π) Σ_k v_k e^{iωt_k}` over a
//! rectangular window, so each spectral line becomes a Dirichlet-kernel
//! peak of width about `2π/T`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Spacing tolerance for a time grid to count as uniform.
pub const UNIFORM_TOL: f64 = 1e-12;

/// Default detection threshold on `Re σ(ω)`.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Default minimum distance between reported peaks.
pub const DEFAULT_MIN_SEPARATION: f64 = 0.2;

/// `min, min+step, …` up to and including `max` (within a small fraction of a step).
pub fn uniform_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) {
        return Err(Error::InvalidInput("grid bounds must be finite".into()));
    }
    if step <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if min >= max {
        return Err(Error::InvalidInput(format!(
            "grid minimum {min} must be below maximum {max}"
        )));
    }
    let intervals = ((max - min) / step + 1e-9).floor() as usize;
    Ok((0..=intervals).map(|k| min + k as f64 * step).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} times vs {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidInput(
                "time series needs at least two points".into(),
            ));
        }
        let dt = times[1] - times[0];
        if dt <= 0.0 {
            return Err(Error::NonUniformGrid("times must increase".into()));
        }
        for (k, w) in times.windows(2).enumerate() {
            if ((w[1] - w[0]) - dt).abs() > UNIFORM_TOL {
                return Err(Error::NonUniformGrid(format!(
                    "step {} at index {k} differs from {dt}",
                    w[1] - w[0]
                )));
            }
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dt(&self) -> f64 {
        (self.times[self.len() - 1] - self.times[0]) / (self.len() - 1) as f64
    }

    /// Window length `T = t_last − t_first`.
    pub fn window(&self) -> f64 {
        self.times[self.len() - 1] - self.times[0]
    }

    /// Alias-free band edge `π/dt`.
    pub fn band(&self) -> f64 {
        PI / self.dt()
    }

    /// Frequencies `jΔω` with `Δω = 2π/T`, strictly inside the band.
    pub fn natural_omega_grid(&self) -> Vec<f64> {
        let step = 2.0 * PI / self.window();
        let band = self.band();
        let mut m = (band / step).floor() as i64;
        if (m as f64) * step >= band * (1.0 - 1e-12) {
            m -= 1;
        }
        (-m..=m).map(|j| j as f64 * step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub omegas: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl Spectrum {
    /// Largest `|Im σ(ω)|`, reported as a noise diagnostic.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Smallest positive spacing of the frequency grid.
    pub fn grid_step(&self) -> f64 {
        self.omegas
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn dft(series: &TimeSeries, omegas: &[f64]) -> Result<Spectrum> {
    let band = series.band();
    if let Some(&bad) = omegas.iter().find(|w| w.abs() >= band * (1.0 - 1e-12)) {
        return Err(Error::Aliasing { omega: bad, band });
    }
    let scale = series.dt() / (2.0 * PI);
    let values = omegas
        .iter()
        .map(|&w| {
            let sum: Complex64 = series
                .times
                .iter()
                .zip(&series.values)
                .map(|(&t, &v)| Complex64::from_polar(v, w * t))
                .sum();
            sum * scale
        })
        .collect();
    Ok(Spectrum {
        omegas: omegas.to_vec(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub omega: f64,
    /// `Re σ(ω)` at the peak.
    pub height: f64,
    /// Level energy, filled in by [`peaks_to_energies`].
    pub energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakSet {
    /// The `ω = 0` line from the constant part of the signal.
    pub dc: Option<Peak>,
    /// Remaining peaks in ascending `ω`.
    pub peaks: Vec<Peak>,
}

/// Local maxima of `Re σ(ω)` above `threshold`, thinned greedily by height.
///
/// Candidates are visited by descending height (ties: smaller `|ω|`, then
/// smaller `ω`) and kept only if at least `min_separation` away from every
/// peak already kept. A kept peak within half a grid step of zero is the DC
/// line and is reported apart from the rest.
pub fn detect_peaks(spectrum: &Spectrum, threshold: f64, min_separation: f64) -> Result<PeakSet> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "peak threshold must be positive, got {threshold}"
        )));
    }
    let re: Vec<f64> = spectrum.values.iter().map(|v| v.re).collect();
    let n = re.len();
    let mut candidates: Vec<Peak> = (0..n)
        .filter(|&i| {
            re[i] > threshold
                && (i == 0 || re[i] >= re[i - 1])
                && (i + 1 == n || re[i] >= re[i + 1])
        })
        .map(|i| Peak {
            omega: spectrum.omegas[i],
            height: re[i],
            energy: None,
        })
        .collect();
    candidates.sort_by(|a, b| {
        b.height
            .total_cmp(&a.height)
            .then(a.omega.abs().total_cmp(&b.omega.abs()))
            .then(a.omega.total_cmp(&b.omega))
    });
    let mut kept: Vec<Peak> = Vec::new();
    for p in candidates {
        if kept
            .iter()
            .all(|k| (k.omega - p.omega).abs() >= min_separation)
        {
            kept.push(p);
        }
    }
    let half_step = spectrum.grid_step() / 2.0;
    let dc_index = kept.iter().position(|p| p.omega.abs() <= half_step);
    let dc = dc_index.map(|i| kept.remove(i));
    kept.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(PeakSet { dc, peaks: kept })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyExtraction {
    /// Distinct energies, ascending.
    pub energies: Vec<f64>,
    /// Input peaks with their energy filled in.
    pub peaks: Vec<Peak>,
    /// Mirror partners that were missing.
    pub warnings: Vec<String>,
}

/// Maps peaks at `±2(E + C)` back to energies `E = sign·|ω|/2 − C`.
///
/// Peaks whose `|ω|` agree within `grid_step` are treated as one level; a
/// level seen on only one side of `ω = 0` produces a warning.
pub fn peaks_to_energies(peaks: &[Peak], c: f64, sign: f64, grid_step: f64) -> EnergyExtraction {
    let to_energy = |w: f64| sign * w.abs() / 2.0 - c;
    let mut sorted: Vec<Peak> = peaks.to_vec();
    sorted.sort_by(|a, b| {
        a.omega
            .abs()
            .total_cmp(&b.omega.abs())
            .then(a.omega.total_cmp(&b.omega))
    });
    let mut clusters: Vec<Vec<Peak>> = Vec::new();
    for p in sorted {
        match clusters.last_mut() {
            Some(cl) if (p.omega.abs() - cl[0].omega.abs()).abs() <= grid_step => cl.push(p),
            _ => clusters.push(vec![p]),
        }
    }
    let mut energies = Vec::new();
    let mut warnings = Vec::new();
    for cl in &clusters {
        let mean_abs = cl.iter().map(|p| p.omega.abs()).sum::<f64>() / cl.len() as f64;
        energies.push(to_energy(mean_abs));
        let has_pos = cl.iter().any(|p| p.omega > 0.0);
        let has_neg = cl.iter().any(|p| p.omega < 0.0);
        if !(has_pos && has_neg) {
            warnings.push(format!(
                "peak at omega={} has no mirror partner",
                cl[0].omega
            ));
        }
    }
    energies.sort_by(f64::total_cmp);
    let peaks = peaks
        .iter()
        .map(|p| Peak {
            energy: Some(to_energy(p.omega)),
            ..*p
        })
        .collect();
    EnergyExtraction {
        energies,
        peaks,
        warnings,
    }
}

/// `max − min` of exactly two levels.
pub fn splitting_of(energies: &[f64]) -> Result<f64> {
    match energies {
        [a, b] => Ok((a - b).abs()),
        _ => Err(Error::PeakCount {
            count: energies.len(),
        }),
    }
}
