use thiserror::Error;

/// Errors shared across the population-state calculus and the search tools.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for an {n_qubits}-qubit state")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("control and target must differ (both are {0})")]
    ControlEqualsTarget(usize),

    #[error("population vector has length {len}, expected 2^{n_qubits}")]
    BadStateLength { len: usize, n_qubits: usize },

    #[error("population entries must be finite")]
    NonFinitePopulation,

    #[error("initial state is already pseudo-pure; error metric is undefined")]
    DegenerateInitial,

    #[error("no transfer angle exists: arccos argument {arg} lies outside [-1, 1]")]
    Infeasible { arg: f64 },

    #[error("state has {state_qubits} qubits but the operation expects {expected}")]
    DimensionMismatch {
        state_qubits: usize,
        expected: usize,
    },

    #[error("unsupported search spec: {0}")]
    UnsupportedSpec(String),

    #[error("optimizer failed to converge on network {network_id}")]
    OptimizerFailure { network_id: usize },

    #[error("oracle input must be diagonal (max off-diagonal magnitude {max_offdiag:.3e})")]
    NonDiagonalInput { max_offdiag: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
