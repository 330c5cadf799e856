//! Statevector simulation of spin-1 tunneling on qubits.
//!
//! A spin-1 is encoded in two qubits. The crate builds exact gate
//! sequences for its time evolution, simulates them (exactly or with
//! seeded shot noise), and recovers the tunneling-split energy levels from
//! the Fourier spectrum of an ancilla probe qubit.
//!
//! Qubit 0 is the leftmost label in a ket; the basis index of bitstring
//! `b` is `Σ b_i 2^(n-1-i)`.

pub mod circuit;
pub mod dense;
pub mod error;
pub mod experiment;
pub mod format;
pub mod gate;
pub mod identities;
pub mod model;
pub mod pauli;
pub mod protocols;
pub mod sampling;
pub mod spectral;
pub mod state;

pub use circuit::Circuit;
pub use error::{Error, Result};
pub use gate::Gate;
pub use model::{AnalyticSpectrum, ShiftMode, SpinModelParams, ValidatedShift};
pub use pauli::{Pauli, PauliObservable, PauliTerm};
pub use sampling::{estimate_expectation_from_shots, sample_z_measurements, ShotResult};
pub use spectral::{Peak, PeakSet, Spectrum, TimeSeries};
pub use state::QuantumState;
