//! In-place statevector kernels.
//!
//! Ordering: qubit 0 is the leftmost ket label, so bitstring `b` indexes
//! amplitude `Σ b_i 2^(n-1-i)`.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Matrix2};
use crate::pauli::{Pauli, PauliObservable};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 24;

/// Tolerance on the imaginary residue of an expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_register(num_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Computational basis state from a bitstring such as `"01"`.
    pub fn new_basis_state(num_qubits: usize, bits: &str) -> Result<Self> {
        if bits.len() != num_qubits {
            return Err(Error::InvalidInput(format!(
                "bitstring {bits:?} has length {}, expected {num_qubits}",
                bits.len()
            )));
        }
        let index = parse_bitstring(bits)?;
        let mut state = Self::zero(num_qubits)?;
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Wraps an amplitude vector, rescaling it to unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "amplitude vector length {len} is not a power of two"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_register(num_qubits.max(1))?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidInput("amplitudes have zero norm".into()));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match *gate {
            Gate::CNOT { control, target } => self.apply_cnot(control, target),
            Gate::CZ(a, b) => self.apply_cz(a, b),
            Gate::Z(q) => {
                self.apply_diagonal(q, Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))
            }
            Gate::P(q, phi) => {
                self.apply_diagonal(q, Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, phi))
            }
            Gate::RZ(q, theta) => self.apply_diagonal(
                q,
                Complex64::from_polar(1.0, -theta / 2.0),
                Complex64::from_polar(1.0, theta / 2.0),
            ),
            Gate::X(q) => self.apply_x(q),
            _ => {
                let m = gate
                    .single_qubit_matrix()
                    .expect("two-qubit gates handled above");
                self.apply_single(gate.qubits()[0], &m);
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "circuit on {} qubits applied to {}-qubit state",
                circuit.num_qubits(),
                self.num_qubits
            )));
        }
        for gate in circuit.ops() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    fn apply_single(&mut self, qubit: usize, m: &Matrix2) {
        let mask = self.mask(qubit);
        for i in 0..self.amplitudes.len() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a, b) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = m[0][0] * a + m[0][1] * b;
            self.amplitudes[j] = m[1][0] * a + m[1][1] * b;
        }
    }

    fn apply_diagonal(&mut self, qubit: usize, d0: Complex64, d1: Complex64) {
        let mask = self.mask(qubit);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            *a *= if i & mask == 0 { d0 } else { d1 };
        }
    }

    fn apply_x(&mut self, qubit: usize) {
        let mask = self.mask(qubit);
        for i in 0..self.amplitudes.len() {
            if i & mask == 0 {
                self.amplitudes.swap(i, i | mask);
            }
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cm, tm) = (self.mask(control), self.mask(target));
        for i in 0..self.amplitudes.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amplitudes.swap(i, i | tm);
            }
        }
    }

    fn apply_cz(&mut self, a: usize, b: usize) {
        let both = self.mask(a) | self.mask(b);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & both == both {
                *amp = -*amp;
            }
        }
    }

    /// `⟨ψ|O|ψ⟩` for a Pauli-sum observable.
    pub fn expectation(&self, obs: &PauliObservable) -> Result<f64> {
        obs.check_qubits(self.num_qubits)?;
        let mut total = Complex64::new(0.0, 0.0);
        for term in obs.terms() {
            let mut image = self.clone();
            for (&q, &p) in term.word.iter() {
                let gate = match p {
                    Pauli::X => Gate::X(q),
                    Pauli::Y => Gate::Y(q),
                    Pauli::Z => Gate::Z(q),
                };
                image.apply_gate(&gate)?;
            }
            total += self.inner(&image)? * term.coefficient;
        }
        if total.im.abs() > EXPECTATION_IMAG_TOL {
            return Err(Error::ImaginaryExpectation { imag: total.im });
        }
        Ok(total.re)
    }
}

fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::InvalidInput(format!(
            "qubit count must be in 1..={MAX_QUBITS}, got {num_qubits}"
        )));
    }
    Ok(())
}

/// Basis index of a bitstring, qubit 0 most significant.
pub fn parse_bitstring(bits: &str) -> Result<usize> {
    bits.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => Err(Error::InvalidInput(format!(
            "bitstring contains {other:?}, expected only 0 and 1"
        ))),
    })
}

/// Bitstring of a basis index, qubit 0 leftmost.
pub fn format_bitstring(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|q| {
            if index >> (num_qubits - 1 - q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}
