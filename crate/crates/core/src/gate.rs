//! Fixed gate set used by every protocol.
//!
//! Rotation conventions: `RX(θ) = e^{-iθX/2}`, `RY(θ) = e^{-iθY/2}`,
//! `RZ(θ) = e^{-iθZ/2} = diag(e^{-iθ/2}, e^{iθ/2})` and `P(φ) = diag(1, e^{iφ})`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major 2×2 complex matrix.
pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    P(usize, f64),
    RX(usize, f64),
    RY(usize, f64),
    RZ(usize, f64),
    CNOT { control: usize, target: usize },
    CZ(usize, usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::P(..) => "P",
            Gate::RX(..) => "RX",
            Gate::RY(..) => "RY",
            Gate::RZ(..) => "RZ",
            Gate::CNOT { .. } => "CNOT",
            Gate::CZ(..) => "CZ",
        }
    }

    /// Qubits the gate acts on; for CNOT the control comes first.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::P(q, _) | Gate::RX(q, _) | Gate::RY(q, _) | Gate::RZ(q, _) => vec![q],
            Gate::CNOT { control, target } => vec![control, target],
            Gate::CZ(a, b) => vec![a, b],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::P(_, a) | Gate::RX(_, a) | Gate::RY(_, a) | Gate::RZ(_, a) => Some(a),
            _ => None,
        }
    }

    /// Checks qubit indices and angle finiteness against a register size.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::RepeatedQubit(qubits[0]));
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{} angle must be finite, got {a}",
                    self.name()
                )));
            }
        }
        Ok(())
    }

    /// The 2×2 unitary of a single-qubit gate, `None` for two-qubit gates.
    pub fn single_qubit_matrix(&self) -> Option<Matrix2> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = match *self {
            Gate::H(_) => [
                [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
            ],
            Gate::X(_) => [[ZERO, ONE], [ONE, ZERO]],
            Gate::Y(_) => [[ZERO, -I], [I, ZERO]],
            Gate::Z(_) => [[ONE, ZERO], [ZERO, -ONE]],
            Gate::P(_, phi) => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, phi)]],
            Gate::RX(_, theta) => {
                let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                [
                    [Complex64::new(c, 0.0), Complex64::new(0.0, -sn)],
                    [Complex64::new(0.0, -sn), Complex64::new(c, 0.0)],
                ]
            }
            Gate::RY(_, theta) => {
                let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                [
                    [Complex64::new(c, 0.0), Complex64::new(-sn, 0.0)],
                    [Complex64::new(sn, 0.0), Complex64::new(c, 0.0)],
                ]
            }
            Gate::RZ(_, theta) => [
                [Complex64::from_polar(1.0, -theta / 2.0), ZERO],
                [ZERO, Complex64::from_polar(1.0, theta / 2.0)],
            ],
            Gate::CNOT { .. } | Gate::CZ(..) => return None,
        };
        Some(m)
    }
}

/// Plain-text form used by circuit dumps: name, qubits, then the angle in
/// radians with 17 significant digits.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        if let Some(a) = self.angle() {
            write!(f, " {}", crate::format::sig17(a))?;
        }
        Ok(())
    }
}
