//! Dense-matrix reference path.
//!
//! Nothing here touches the statevector kernels: gate matrices are built by
//! Kronecker products and multiplied out, so this module can serve as an
//! oracle for `state` and `protocols`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Matrix2};
use crate::pauli::{Pauli, PauliObservable};
use crate::state::QuantumState;

pub type CMatrix = DMatrix<Complex64>;

/// Largest register `unitary_of` will expand.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Hermiticity tolerance for `expm_hermitian`.
pub const HERMITIAN_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn from_matrix2(m: &Matrix2) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| m[i][j])
}

pub fn pauli_matrix(p: Pauli) -> CMatrix {
    let m = match p {
        Pauli::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        Pauli::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        Pauli::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
    };
    from_matrix2(&m)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// `factors[0] ⊗ factors[1] ⊗ …`, first factor on qubit 0.
pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors.iter().fold(identity(1), |acc, f| acc.kronecker(f))
}

/// Operator acting with `ops[q]` on each listed qubit and identity elsewhere.
pub fn embed(ops: &[(usize, CMatrix)], num_qubits: usize) -> CMatrix {
    let factors: Vec<CMatrix> = (0..num_qubits)
        .map(|q| {
            ops.iter()
                .find(|(k, _)| *k == q)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| identity(2))
        })
        .collect();
    kron_all(&factors)
}

fn projector(bit: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

pub fn gate_matrix(gate: &Gate, num_qubits: usize) -> Result<CMatrix> {
    gate.validate(num_qubits)?;
    Ok(match *gate {
        Gate::CNOT { control, target } => {
            embed(&[(control, projector(0))], num_qubits)
                + embed(
                    &[(control, projector(1)), (target, pauli_matrix(Pauli::X))],
                    num_qubits,
                )
        }
        Gate::CZ(a, b) => {
            embed(&[(a, projector(0))], num_qubits)
                + embed(
                    &[(a, projector(1)), (b, pauli_matrix(Pauli::Z))],
                    num_qubits,
                )
        }
        _ => {
            let m = gate.single_qubit_matrix().expect("single-qubit gate");
            embed(&[(gate.qubits()[0], from_matrix2(&m))], num_qubits)
        }
    })
}

/// Full unitary of a circuit, `U = G_last ⋯ G_first`.
pub fn unitary_of(circuit: &Circuit) -> Result<CMatrix> {
    let n = circuit.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::DenseGuard {
            num_qubits: n,
            max: MAX_DENSE_QUBITS,
        });
    }
    circuit
        .ops()
        .iter()
        .try_fold(identity(1 << n), |acc, g| Ok(gate_matrix(g, n)? * acc))
}

pub fn observable_matrix(obs: &PauliObservable, num_qubits: usize) -> Result<CMatrix> {
    obs.check_qubits(num_qubits)?;
    let dim = 1 << num_qubits;
    Ok(obs.terms().iter().fold(CMatrix::zeros(dim, dim), |acc, t| {
        let ops: Vec<(usize, CMatrix)> =
            t.word.iter().map(|(&q, &p)| (q, pauli_matrix(p))).collect();
        acc + embed(&ops, num_qubits) * c(t.coefficient, 0.0)
    }))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `max |U†U − I|`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn hermiticity_deviation(h: &CMatrix) -> f64 {
    max_abs_diff(h, &h.adjoint())
}

/// Smallest `max |U − cV|` over the phase `c` fixed by V's largest entry.
///
/// Returns `None` when U vanishes where V peaks, in which case no unit
/// phase can match the two.
pub fn global_phase_distance(u: &CMatrix, v: &CMatrix) -> Result<Option<f64>> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?}",
            u.shape(),
            v.shape()
        )));
    }
    let (idx, vmax) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, x)| (i, *x))
        .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
    let ratio = u.as_slice()[idx] / vmax;
    if ratio.norm() < f64::EPSILON {
        return Ok(None);
    }
    let phase = ratio / ratio.norm();
    Ok(Some(max_abs_diff(u, &(v * phase))))
}

pub fn equal_up_to_global_phase(u: &CMatrix, v: &CMatrix, tol: f64) -> Result<bool> {
    Ok(matches!(global_phase_distance(u, v)?, Some(d) if d < tol))
}

/// `e^{-i H t}` through the Hermitian eigendecomposition `H = V Λ V†`.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "propagator needs a square matrix, got {:?}",
            h.shape()
        )));
    }
    let deviation = hermiticity_deviation(h);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let phases = CMatrix::from_diagonal(&DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * t)),
    ));
    Ok(&eig.eigenvectors * phases * eig.eigenvectors.adjoint())
}

/// Sorted real eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    let deviation = hermiticity_deviation(h);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let mut vals: Vec<f64> = h
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Closed form `e^{-iθP/2} = cos(θ/2)·1 − i sin(θ/2)·P` for a Pauli word,
/// valid because `P² = 1`.
pub fn pauli_rotation(theta: f64, word: &[(usize, Pauli)], num_qubits: usize) -> CMatrix {
    let ops: Vec<(usize, CMatrix)> = word.iter().map(|&(q, p)| (q, pauli_matrix(p))).collect();
    let p = embed(&ops, num_qubits);
    identity(1 << num_qubits) * c((theta / 2.0).cos(), 0.0) + p * c(0.0, -(theta / 2.0).sin())
}

pub fn state_vector(state: &QuantumState) -> DVector<Complex64> {
    DVector::from_column_slice(state.amplitudes())
}
