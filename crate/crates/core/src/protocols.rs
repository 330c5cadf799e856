//! Gate sequences for the tunneling and probe-spin experiments.
//!
//! All evolution blocks are exact: the Pauli products in the Hamiltonians
//! commute, so `e^{-iHα}` factorizes into one block per product with no
//! Trotter error. Each factor below is exact up to a global phase.

use std::f64::consts::FRAC_PI_2;

use crate::circuit::Circuit;
use crate::error::Result;
use crate::gate::Gate;

fn cnot(control: usize, target: usize) -> Gate {
    Gate::CNOT { control, target }
}

/// `e^{-iθ σx_a σx_b / 2}` as `CNOT_ab · H_a · P_a(θ) · H_a · CNOT_ab`.
pub fn xx_factor(a: usize, b: usize, theta: f64) -> Vec<Gate> {
    vec![
        cnot(a, b),
        Gate::H(a),
        Gate::P(a, theta),
        Gate::H(a),
        cnot(a, b),
    ]
}

/// `e^{+iθ σy_a σy_b / 2}` as `CNOT_ab · CZ_ab · H_a · P_a(θ) · H_a · CZ_ab · CNOT_ab`.
pub fn yy_factor(a: usize, b: usize, theta: f64) -> Vec<Gate> {
    vec![
        cnot(a, b),
        Gate::CZ(a, b),
        Gate::H(a),
        Gate::P(a, theta),
        Gate::H(a),
        Gate::CZ(a, b),
        cnot(a, b),
    ]
}

/// `e^{-iθ σz_a σz_b / 2}` as `CNOT_ab · RZ_b(θ) · CNOT_ab`.
pub fn zz_factor(a: usize, b: usize, theta: f64) -> Vec<Gate> {
    vec![cnot(a, b), Gate::RZ(b, theta), cnot(a, b)]
}

/// `e^{-iθ σz_0 σz_1 σz_2 / 2}` as `CNOT_01 · CNOT_12 · RZ_2(θ) · CNOT_12 · CNOT_01`.
pub fn zzz_factor(theta: f64) -> Vec<Gate> {
    vec![
        cnot(0, 1),
        cnot(1, 2),
        Gate::RZ(2, theta),
        cnot(1, 2),
        cnot(0, 1),
    ]
}

/// `e^{-iθ σz_0 σx_1 σx_2 / 2}`: the zzz block conjugated by `RY(∓π/2)` on
/// qubits 1 and 2 (`RY(π/2) σz RY(−π/2) = σx`).
pub fn zxx_factor(theta: f64) -> Vec<Gate> {
    let mut gates = vec![Gate::RY(1, -FRAC_PI_2), Gate::RY(2, -FRAC_PI_2)];
    gates.extend(zzz_factor(theta));
    gates.extend([Gate::RY(1, FRAC_PI_2), Gate::RY(2, FRAC_PI_2)]);
    gates
}

/// `e^{+iθ σz_0 σy_1 σy_2 / 2}`: the zzz block at `−θ` conjugated by
/// `RX(±π/2)` on qubits 1 and 2 (`RX(−π/2) σz RX(π/2) = σy`).
pub fn zyy_factor(theta: f64) -> Vec<Gate> {
    let mut gates = vec![Gate::RX(1, FRAC_PI_2), Gate::RX(2, FRAC_PI_2)];
    gates.extend(zzz_factor(-theta));
    gates.extend([Gate::RX(1, -FRAC_PI_2), Gate::RX(2, -FRAC_PI_2)]);
    gates
}

/// `e^{-iHα}` for the two-qubit spin-1 Hamiltonian, up to the phase `e^{-iDα/2}`.
pub fn build_two_qubit_evolution(d: f64, gamma: f64, alpha: f64) -> Result<Circuit> {
    let mut circuit = Circuit::new(2)?;
    circuit
        .extend(zz_factor(0, 1, d * alpha))?
        .extend(xx_factor(0, 1, gamma * alpha))?
        .extend(yy_factor(0, 1, gamma * alpha))?;
    Ok(circuit)
}

/// Evolution of the spin prepared in `|1⟩ = |00⟩`; `⟨Sz⟩` is read in the Z basis.
pub fn build_tunneling_protocol(d: f64, gamma: f64, alpha: f64) -> Result<Circuit> {
    build_two_qubit_evolution(d, gamma, alpha)
}

/// `e^{-iH_Tα}` for `H_T = σz₀(H + C)`, probe on qubit 0.
///
/// `σz₀ H` contributes `σz₀ D/2`, which is not a global phase here and is
/// emitted as `RZ₀(Dα)`. A nonzero shift adds `RZ₀(2Cα)`.
pub fn build_three_qubit_evolution(d: f64, gamma: f64, c: f64, alpha: f64) -> Result<Circuit> {
    let mut circuit = Circuit::new(3)?;
    circuit.push(Gate::RZ(0, d * alpha))?;
    if c != 0.0 {
        circuit.push(Gate::RZ(0, 2.0 * c * alpha))?;
    }
    circuit
        .extend(zzz_factor(d * alpha))?
        .extend(zxx_factor(gamma * alpha))?
        .extend(zyy_factor(gamma * alpha))?;
    Ok(circuit)
}

/// Gates preparing `|+⟩|χ,χ⟩` from `|000⟩`, `|χ⟩ = (|0⟩ + e^{iφ}|1⟩)/√2`.
pub fn spectrum_preparation(phi: f64) -> Vec<Gate> {
    vec![
        Gate::H(0),
        Gate::H(1),
        Gate::H(2),
        Gate::P(1, phi),
        Gate::P(2, phi),
    ]
}

/// Full probe protocol; a Z measurement of qubit 0 afterwards reads `σx₀`.
pub fn build_spectrum_protocol(
    d: f64,
    gamma: f64,
    c: f64,
    phi: f64,
    alpha: f64,
) -> Result<Circuit> {
    let mut circuit = Circuit::new(3)?;
    circuit.extend(spectrum_preparation(phi))?;
    circuit.append(&build_three_qubit_evolution(d, gamma, c, alpha)?)?;
    circuit.push(Gate::RY(0, -FRAC_PI_2))?;
    Ok(circuit)
}
