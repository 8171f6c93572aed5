//! Dense complex linear algebra: the numerical substrate for every gate
//! construction and for the dense reference simulation path.

mod matrix;
pub mod random;
mod state;

use thiserror::Error;

pub use matrix::{format_complex, ComplexMatrix};
pub use state::StateVector;

pub type Complex = num_complex::Complex64;

/// Upper bound on the number of entries of any dense matrix or vector.
pub const MAX_MATRIX_ENTRIES: usize = 1 << 24;

/// Comparison tolerance used for golden-matrix checks.
pub const GOLDEN_TOL: f64 = 1e-10;

/// Comparison tolerance used for compositions of random unitaries.
pub const COMPOSITION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Shape {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("{op} needs {requested} entries, above the cap of {cap}")]
    Capacity {
        op: &'static str,
        requested: u128,
        cap: usize,
    },
    #[error("expected {expected} entries, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error("matrix dimensions must be positive")]
    EmptyDims,
    #[error("non-finite entry at flat index {0}")]
    NonFinite(usize),
    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("cannot normalize the zero vector")]
    ZeroVector,
}
