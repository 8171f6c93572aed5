//! Statevector simulation over a control and a target register.
//!
//! Controlled gates are applied block-wise: only the `M`-amplitude slices
//! whose control value is marked are touched. [`apply_full`] is the dense
//! reference path.

mod ancilla;
mod apply;
mod circuit;
mod circuit_file;
mod grover;
mod state;

use thiserror::Error;

use crate::angle::AngleError;
use crate::gates::GateError;
use crate::linalg::LinalgError;
use crate::predicate::PredicateError;

pub use ancilla::{simulate_oracle_ancilla, AncillaRun};
pub use apply::{
    apply_block_diagonal_in_place, apply_conditional_blockwise,
    apply_conditional_blockwise_in_place, apply_fcg_blockwise, apply_fcg_blockwise_in_place,
    apply_full, apply_full_in_place, apply_on_qubits_in_place, apply_phase_oracle_in_place,
    ApplyStats,
};
pub use circuit::{run_circuit, run_circuit_with_stats, Circuit, Step};
pub use circuit_file::{
    load_circuit, AngleFile, CircuitFile, StepFile, UnitaryFile, CIRCUIT_FILE_VERSION,
};
pub use grover::{grover_run, optimal_iterations, GroverRun, GROVER_MAX_WIDTH};
pub use state::{SimState, StateExport};

/// Allowed deviation of a state's norm from 1.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Predicate(#[from] PredicateError),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error("register widths must be at least 1")]
    ZeroWidth,
    #[error("{qubits} qubits exceed the cap of {cap}")]
    WidthCap { qubits: usize, cap: usize },
    #[error("state has dimension {actual}, expected {expected}")]
    DimMismatch { expected: usize, actual: usize },
    #[error("state norm squared is {0}, expected 1")]
    NotNormalized(f64),
    #[error("basis state |{x}>|{s}> out of range for n = {n}, m = {m}")]
    BasisOutOfRange { x: usize, s: usize, n: usize, m: usize },
    #[error("{what} has widths (n, m) = {actual:?}, expected {expected:?}")]
    WidthMismatch {
        what: &'static str,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("gate is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("gate acts on {expected} qubits but {actual} were given")]
    GateArity { expected: usize, actual: usize },
    #[error("qubit {qubit} out of range for {total} qubits")]
    QubitOutOfRange { qubit: usize, total: usize },
    #[error("qubit {0} listed twice")]
    DuplicateQubit(usize),
    #[error("no marked element")]
    EmptyMarkedSet,
    #[error("unsupported circuit file version {0}")]
    UnsupportedVersion(u32),
    #[error("step {index}: {source}")]
    Step { index: usize, source: Box<SimError> },
    #[error("malformed input: {0}")]
    Format(String),
}
