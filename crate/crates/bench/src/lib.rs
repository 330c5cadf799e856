//! Fixtures shared by the criterion benches.

use spin1_core::{Circuit, Gate};

/// A layered circuit touching every qubit: RY/RZ on each qubit, then a CNOT ladder.
pub fn layered_circuit(num_qubits: usize, layers: usize) -> Circuit {
    let mut c = Circuit::new(num_qubits).expect("non-empty register");
    for layer in 0..layers {
        let angle = 0.1 + layer as f64 * 0.37;
        for q in 0..num_qubits {
            c.push(Gate::RY(q, angle)).unwrap();
            c.push(Gate::RZ(q, -angle)).unwrap();
        }
        for q in 0..num_qubits.saturating_sub(1) {
            c.push(Gate::CNOT {
                control: q,
                target: q + 1,
            })
            .unwrap();
        }
    }
    c
}
