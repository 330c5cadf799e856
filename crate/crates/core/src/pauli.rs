use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// A real-weighted tensor product of Paulis; absent qubits carry identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub word: BTreeMap<usize, Pauli>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, letters: &[(usize, Pauli)]) -> Self {
        Self {
            coefficient,
            word: letters.iter().copied().collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.word.values().all(|&p| p == Pauli::Z)
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        if self.word.is_empty() {
            return write!(f, "·I");
        }
        for (q, p) in &self.word {
            write!(f, "·{p:?}{q}")?;
        }
        Ok(())
    }
}

/// Hermitian observable expressed as a sum of Pauli terms.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PauliObservable {
    terms: Vec<PauliTerm>,
}

impl PauliObservable {
    pub fn new(terms: Vec<PauliTerm>) -> Self {
        Self { terms }
    }

    pub fn single(qubit: usize, pauli: Pauli) -> Self {
        Self::new(vec![PauliTerm::new(1.0, &[(qubit, pauli)])])
    }

    /// Spin-1 `Sz = ½ Σ σz` over the qubits realizing the spin.
    pub fn spin_z(qubits: &[usize]) -> Self {
        Self::new(
            qubits
                .iter()
                .map(|&q| PauliTerm::new(0.5, &[(q, Pauli::Z)]))
                .collect(),
        )
    }

    pub fn with_term(mut self, term: PauliTerm) -> Self {
        self.terms.push(term);
        self
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|t| t.word.keys().next_back().copied())
            .max()
    }

    pub fn check_qubits(&self, num_qubits: usize) -> Result<()> {
        match self.max_qubit() {
            Some(q) if q >= num_qubits => Err(Error::QubitOutOfRange {
                index: q,
                num_qubits,
            }),
            _ => Ok(()),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(PauliTerm::is_diagonal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_check() {
        let obs = PauliObservable::spin_z(&[0, 3]);
        assert_eq!(obs.max_qubit(), Some(3));
        assert!(obs.check_qubits(4).is_ok());
        assert!(obs.check_qubits(3).is_err());
        assert!(PauliObservable::default().check_qubits(1).is_ok());
    }

    #[test]
    fn diagonality() {
        assert!(PauliObservable::spin_z(&[0, 1]).is_diagonal());
        assert!(!PauliObservable::single(0, Pauli::X).is_diagonal());
    }
}
