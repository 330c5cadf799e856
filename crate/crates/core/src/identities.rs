//! Checks every gate-sequence factor against a dense matrix exponential of
//! the Pauli product it claims to implement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::dense::{
    embed, expm_hermitian, global_phase_distance, pauli_matrix, unitary_of, CMatrix,
};
use crate::error::Result;
use crate::gate::Gate;
use crate::pauli::Pauli;
use crate::protocols::{xx_factor, yy_factor, zxx_factor, zyy_factor, zz_factor, zzz_factor};

pub const IDENTITY_TOL: f64 = 1e-10;

/// Sign convention an identity depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// `P(φ) = diag(1, e^{iφ})`.
    PhaseGate,
    /// `RZ(θ) = e^{-iθσz/2}`.
    RzRotation,
    /// `RZ` together with `RY(θ) = e^{-iθσy/2}`.
    RzAndRy,
    /// `RZ` together with `RX(θ) = e^{-iθσx/2}`.
    RzAndRx,
}

impl Convention {
    pub fn describe(&self) -> &'static str {
        match self {
            Convention::PhaseGate => "P sign: P(phi) = diag(1, e^{i phi})",
            Convention::RzRotation => "RZ sign: RZ(theta) = exp(-i theta Z / 2)",
            Convention::RzAndRy => "RZ/RY sign: RY(theta) = exp(-i theta Y / 2)",
            Convention::RzAndRx => "RZ/RX sign: RX(theta) = exp(-i theta X / 2)",
        }
    }
}

pub struct Identity {
    pub name: &'static str,
    pub num_qubits: usize,
    pub convention: Convention,
    /// Gate sequence at angle θ.
    pub gates: fn(f64) -> Vec<Gate>,
    /// Pauli word `P` and sign `s` such that the sequence equals `e^{-i s θ P / 2}`.
    pub word: &'static [(usize, Pauli)],
    pub sign: f64,
}

impl Identity {
    pub fn circuit(&self, theta: f64) -> Result<Circuit> {
        let mut c = Circuit::new(self.num_qubits)?;
        c.extend((self.gates)(theta))?;
        Ok(c)
    }

    /// Dense `e^{-i s θ P / 2}` via the Hermitian propagator.
    pub fn target(&self, theta: f64) -> Result<CMatrix> {
        let ops: Vec<(usize, CMatrix)> = self
            .word
            .iter()
            .map(|&(q, p)| (q, pauli_matrix(p)))
            .collect();
        let p = embed(&ops, self.num_qubits);
        expm_hermitian(&p, self.sign * theta / 2.0)
    }
}

pub fn all_identities() -> Vec<Identity> {
    use Pauli::{X, Y, Z};
    vec![
        Identity {
            name: "xx: CNOT01 H0 P0(t) H0 CNOT01 = exp(-i t X0X1/2)",
            num_qubits: 2,
            convention: Convention::PhaseGate,
            gates: |t| xx_factor(0, 1, t),
            word: &[(0, X), (1, X)],
            sign: 1.0,
        },
        Identity {
            name: "yy: CNOT01 CZ01 H0 P0(t) H0 CZ01 CNOT01 = exp(+i t Y0Y1/2)",
            num_qubits: 2,
            convention: Convention::PhaseGate,
            gates: |t| yy_factor(0, 1, t),
            word: &[(0, Y), (1, Y)],
            sign: -1.0,
        },
        Identity {
            name: "zz: CNOT01 RZ1(t) CNOT01 = exp(-i t Z0Z1/2)",
            num_qubits: 2,
            convention: Convention::RzRotation,
            gates: |t| zz_factor(0, 1, t),
            word: &[(0, Z), (1, Z)],
            sign: 1.0,
        },
        Identity {
            name: "zzz: CNOT01 CNOT12 RZ2(t) CNOT12 CNOT01 = exp(-i t Z0Z1Z2/2)",
            num_qubits: 3,
            convention: Convention::RzRotation,
            gates: zzz_factor,
            word: &[(0, Z), (1, Z), (2, Z)],
            sign: 1.0,
        },
        Identity {
            name: "zxx: RY(pi/2)x2 [zzz(t)] RY(-pi/2)x2 = exp(-i t Z0X1X2/2)",
            num_qubits: 3,
            convention: Convention::RzAndRy,
            gates: zxx_factor,
            word: &[(0, Z), (1, X), (2, X)],
            sign: 1.0,
        },
        Identity {
            name: "zyy: RX(-pi/2)x2 [zzz(-t)] RX(pi/2)x2 = exp(+i t Z0Y1Y2/2)",
            num_qubits: 3,
            convention: Convention::RzAndRx,
            gates: zyy_factor,
            word: &[(0, Z), (1, Y), (2, Y)],
            sign: -1.0,
        },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    pub convention: Convention,
    pub samples: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Runs every identity at `samples` random angles in `[-4π, 4π]`.
pub fn run_identity_suite(samples: usize, seed: u64, tol: f64) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 4.0 * std::f64::consts::PI;
    let mut reports = Vec::new();
    for identity in all_identities() {
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let theta = rng.random_range(-bound..bound);
            let u = unitary_of(&identity.circuit(theta)?)?;
            let v = identity.target(theta)?;
            let d = global_phase_distance(&u, &v)?.unwrap_or(f64::INFINITY);
            worst = worst.max(d);
        }
        reports.push(IdentityReport {
            name: identity.name,
            convention: identity.convention,
            samples,
            max_deviation: worst,
            passed: worst < tol,
        });
    }
    Ok(reports)
}

/// Names the gate conventions implicated by failing identities.
pub fn diagnose(reports: &[IdentityReport]) -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for r in reports.iter().filter(|r| !r.passed) {
        let msg = r.convention.describe();
        if !out.contains(&msg) {
            out.push(msg);
        }
    }
    out
}
