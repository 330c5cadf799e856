//! Spin-1 with axial anisotropy `D` and tunneling constant `γ`, realized on
//! two qubits via `S_α = ½(σ_α ⊗ 1 + 1 ⊗ σ_α)`.
//!
//! The spin-1 basis maps to `|1⟩ = |00⟩`, `|−1⟩ = |11⟩` and
//! `|0⟩ = (|01⟩ + |10⟩)/√2`; the singlet is annihilated by every `S_α`.
//! Units have `ħ = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::{embed, identity, pauli_matrix, CMatrix};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinModelParams {
    /// Axial anisotropy.
    pub d: f64,
    /// Tunneling constant.
    pub gamma: f64,
    /// Energy shift used by the probe-spin method.
    pub c: f64,
    /// Phase of the initial single-qubit state `(|0⟩ + e^{iφ}|1⟩)/√2`.
    pub phi: f64,
}

impl SpinModelParams {
    pub fn new(d: f64, gamma: f64) -> Self {
        Self {
            d,
            gamma,
            c: 0.0,
            phi: std::f64::consts::FRAC_PI_4,
        }
    }

    pub fn with_shift(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("D", self.d),
            ("gamma", self.gamma),
            ("C", self.c),
            ("phi", self.phi),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Unshifted levels `{0, D−|γ|, D+|γ|}`.
    pub fn levels(&self) -> [f64; 3] {
        [0.0, self.d - self.gamma.abs(), self.d + self.gamma.abs()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSpectrum {
    pub e_zero: f64,
    pub e_plus: f64,
    pub e_minus: f64,
    pub splitting: f64,
}

impl AnalyticSpectrum {
    pub fn of(params: &SpinModelParams) -> Self {
        let g = params.gamma.abs();
        Self {
            e_zero: 0.0,
            e_plus: params.d + g,
            e_minus: params.d - g,
            splitting: 2.0 * g,
        }
    }

    /// With `γ = 0` the doublet collapses and its two spectral peaks merge.
    pub fn is_degenerate(&self) -> bool {
        self.splitting == 0.0
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(Sx, Sy, Sz)` on the two-qubit space.
pub fn spin1_operators() -> [CMatrix; 3] {
    [Pauli::X, Pauli::Y, Pauli::Z]
        .map(|p| (embed(&[(0, pauli_matrix(p))], 2) + embed(&[(1, pauli_matrix(p))], 2)) * c(0.5))
}

/// Columns `|00⟩`, `(|01⟩+|10⟩)/√2`, `|11⟩`: the spin-1 states `|1⟩, |0⟩, |−1⟩`.
pub fn symmetric_isometry() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CMatrix::zeros(4, 3);
    v[(0, 0)] = c(1.0);
    v[(1, 1)] = c(s);
    v[(2, 1)] = c(s);
    v[(3, 2)] = c(1.0);
    v
}

pub fn singlet() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CMatrix::zeros(4, 1);
    v[(1, 0)] = c(s);
    v[(2, 0)] = c(-s);
    v
}

/// `H = D/2 (1 + σz σz) + γ/2 (σx σx − σy σy)` on the two-qubit space.
pub fn hamiltonian_two_qubit(params: &SpinModelParams) -> CMatrix {
    let pair = |p: Pauli| embed(&[(0, pauli_matrix(p)), (1, pauli_matrix(p))], 2);
    (identity(4) + pair(Pauli::Z)) * c(params.d / 2.0)
        + (pair(Pauli::X) - pair(Pauli::Y)) * c(params.gamma / 2.0)
}

/// `D Sz² + γ(Sx² − Sy²)` assembled from the spin-1 operators.
pub fn hamiltonian_from_spin_operators(params: &SpinModelParams) -> CMatrix {
    let [sx, sy, sz] = spin1_operators();
    &sz * &sz * c(params.d) + (&sx * &sx - &sy * &sy) * c(params.gamma)
}

/// `H_T = σz₀ ⊗ (H + C)` with the probe on qubit 0.
pub fn hamiltonian_total(params: &SpinModelParams) -> CMatrix {
    let shifted = hamiltonian_two_qubit(params) + identity(4) * c(params.c);
    pauli_matrix(Pauli::Z).kronecker(&shifted)
}

/// `⟨Sz(t)⟩ = cos 2γt` for the spin prepared in `|1⟩`.
pub fn analytic_sz(t: f64, gamma: f64) -> f64 {
    (2.0 * gamma * t).cos()
}

/// `⟨σx₀(t)⟩` for the probe protocol started from `|+⟩|χ,χ⟩`.
///
/// The symmetric doublet state (energy `D+γ`) carries weight `cos²φ`, the
/// antisymmetric one (`D−γ`) carries `sin²φ`, and the `|0⟩` level carries
/// `½`. Each oscillates at twice its shifted energy.
pub fn analytic_probe_mean(t: f64, params: &SpinModelParams) -> Result<f64> {
    validate_shift(params, ShiftMode::Explicit)?;
    let w_sym = params.d + params.gamma + params.c;
    let w_anti = params.d - params.gamma + params.c;
    let (cos2, sin2) = (params.phi.cos().powi(2), params.phi.sin().powi(2));
    Ok(0.5
        * (cos2 * (2.0 * w_sym * t).cos()
            + sin2 * (2.0 * w_anti * t).cos()
            + (2.0 * params.c * t).cos()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ShiftMode {
    /// Use `params.c` as given and reject it if the shifted levels mix signs.
    Explicit,
    /// Choose `C = −max(0, D+|γ|) − margin`; the default margin is `|γ| + 1`.
    Auto { margin: Option<f64> },
}

/// A shift for which every level of `H + C` has the same sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidatedShift {
    pub c: f64,
    /// `-1` when all shifted levels are ≤ 0, `+1` when all are ≥ 0.
    pub sign: f64,
    pub shifted_levels: [f64; 3],
}

pub fn validate_shift(params: &SpinModelParams, mode: ShiftMode) -> Result<ValidatedShift> {
    params.validate()?;
    let c = match mode {
        ShiftMode::Explicit => params.c,
        ShiftMode::Auto { margin } => {
            let margin = margin.unwrap_or(params.gamma.abs() + 1.0);
            if !(margin.is_finite() && margin > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "auto-shift margin must be positive, got {margin}"
                )));
            }
            -(params.d + params.gamma.abs()).max(0.0) - margin
        }
    };
    let shifted = params.levels().map(|e| e + c);
    if shifted.iter().all(|&e| e <= 0.0) {
        Ok(ValidatedShift {
            c,
            sign: -1.0,
            shifted_levels: shifted,
        })
    } else if shifted.iter().all(|&e| e >= 0.0) {
        Ok(ValidatedShift {
            c,
            sign: 1.0,
            shifted_levels: shifted,
        })
    } else {
        Err(Error::MixedSignLevels {
            c,
            levels: shifted.to_vec(),
        })
    }
}
