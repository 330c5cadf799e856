use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("qubit index {index} out of range for {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("two-qubit gate acts on qubit {0} twice")]
    RepeatedQubit(usize),

    #[error("observable is not diagonal in the measured basis ({word}); apply a basis rotation before measuring")]
    NonDiagonalObservable { word: String },

    #[error("expectation value has imaginary part {imag:e} above tolerance")]
    ImaginaryExpectation { imag: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dense representation limited to {max} qubits, got {num_qubits}")]
    DenseGuard { num_qubits: usize, max: usize },

    #[error("frequency {omega} outside alias-free band |omega| < {band}")]
    Aliasing { omega: f64, band: f64 },

    #[error("time grid is not uniform: {0}")]
    NonUniformGrid(String),

    #[error("shift C={c} leaves mixed-sign levels {levels:?}")]
    MixedSignLevels { c: f64, levels: Vec<f64> },

    #[error("expected exactly two tunneling levels, detected {count}")]
    PeakCount { count: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("missing artifact: {0}")]
    MissingArtifact(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable identifier for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::QubitOutOfRange { .. } => "qubit_out_of_range",
            Error::RepeatedQubit(_) => "repeated_qubit",
            Error::NonDiagonalObservable { .. } => "non_diagonal_observable",
            Error::ImaginaryExpectation { .. } => "imaginary_expectation",
            Error::NonHermitian { .. } => "non_hermitian",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::DenseGuard { .. } => "dense_guard",
            Error::Aliasing { .. } => "aliasing",
            Error::NonUniformGrid(_) => "non_uniform_grid",
            Error::MixedSignLevels { .. } => "shift_validation",
            Error::PeakCount { .. } => "peak_count",
            Error::Config(_) => "config",
            Error::MissingArtifact(_) => "missing_artifact",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
