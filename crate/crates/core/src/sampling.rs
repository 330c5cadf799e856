//! Seeded finite-shot measurement in the computational basis.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliObservable;
use crate::state::{format_bitstring, parse_bitstring, QuantumState};

/// Generator behind every shot sample. ChaCha8 output is stable across
/// platforms and releases, so a seed fully determines the counts.
pub type ShotRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotResult {
    pub num_qubits: usize,
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl ShotResult {
    pub fn new(num_qubits: usize, counts: BTreeMap<String, u64>) -> Result<Self> {
        for bits in counts.keys() {
            if bits.len() != num_qubits {
                return Err(Error::InvalidInput(format!(
                    "bitstring {bits:?} does not have {num_qubits} bits"
                )));
            }
            parse_bitstring(bits)?;
        }
        let shots = counts.values().sum();
        if shots == 0 {
            return Err(Error::InvalidInput("shot result has no counts".into()));
        }
        Ok(Self {
            num_qubits,
            shots,
            counts,
        })
    }
}

pub fn sample_z_measurements(state: &QuantumState, shots: u64, seed: u64) -> Result<ShotResult> {
    let mut rng = ShotRng::seed_from_u64(seed);
    sample_with_rng(state, shots, &mut rng)
}

pub fn sample_with_rng<R: Rng>(
    state: &QuantumState,
    shots: u64,
    rng: &mut R,
) -> Result<ShotResult> {
    if shots == 0 {
        return Err(Error::InvalidInput("shots must be at least 1".into()));
    }
    let mut cumulative = Vec::with_capacity(state.amplitudes().len());
    let mut acc = 0.0;
    for p in state.probabilities() {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    let mut tally = vec![0u64; cumulative.len()];
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c <= u)
            .min(cumulative.len() - 1);
        tally[idx] += 1;
    }
    let n = state.num_qubits();
    let counts = tally
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (format_bitstring(i, n), c))
        .collect();
    Ok(ShotResult {
        num_qubits: n,
        shots,
        counts,
    })
}

/// Empirical mean of a Pauli-sum observable from computational-basis counts.
///
/// With `basis_rotations_applied` unset, every term must be a Z word. When
/// set, the caller asserts the circuit already rotated each measured qubit
/// so that its X or Y letter is read out as Z.
pub fn estimate_expectation_from_shots(
    result: &ShotResult,
    obs: &PauliObservable,
    basis_rotations_applied: bool,
) -> Result<f64> {
    obs.check_qubits(result.num_qubits)?;
    if !basis_rotations_applied {
        if let Some(term) = obs.terms().iter().find(|t| !t.is_diagonal()) {
            return Err(Error::NonDiagonalObservable {
                word: term.to_string(),
            });
        }
    }
    let mut sum = 0.0;
    for (bits, &count) in &result.counts {
        let bytes = bits.as_bytes();
        let value: f64 = obs
            .terms()
            .iter()
            .map(|term| {
                let parity = term.word.keys().filter(|&&q| bytes[q] == b'1').count();
                if parity % 2 == 0 {
                    term.coefficient
                } else {
                    -term.coefficient
                }
            })
            .sum();
        sum += value * count as f64;
    }
    Ok(sum / result.shots as f64)
}
