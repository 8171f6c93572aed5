//! Matrix constructions for controlled gates.
//!
//! All constructions use the index split `i = x * M + s`: control value `x`
//! selects the `M x M` diagonal block, target value `s` the position within it.

mod block;
mod spec;
mod standard;

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::angle::unit_phase;
use crate::linalg::random::random_unitary;
use crate::linalg::{Complex, ComplexMatrix, LinalgError};
use crate::predicate::{PredicateError, TruthTable};

pub use block::{BlockDiagonalGate, BlockFile};
pub use spec::{BcgSpec, ConditionalSpec, FcgSpec};
pub use standard::{parse_unitary, StandardGate};

use standard::{identity, zero};

/// Tolerance for accepting a user-supplied unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Largest `n + m` for any gate.
pub const MAX_TOTAL_QUBITS: usize = 24;

/// Largest dimension `NM` that may be materialized densely.
pub const MAX_DENSE_DIM: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Predicate(#[from] PredicateError),
    #[error("{what} is not unitary (max |U†U - I| = {deviation:e})")]
    NotUnitary { what: &'static str, deviation: f64 },
    #[error("{what} must be square with dimension 2^m, m >= 1; got {shape:?}")]
    BadTargetShape {
        what: &'static str,
        shape: (usize, usize),
    },
    #[error("branch dimensions differ: then {then_dim}, else {else_dim}")]
    BranchMismatch { then_dim: usize, else_dim: usize },
    #[error("control value {y} out of range for n = {n}")]
    ControlOutOfRange { y: usize, n: usize },
    #[error("control value {0} appears more than once")]
    DuplicateControl(usize),
    #[error("control and target widths must be positive")]
    ZeroWidth,
    #[error("{qubits} qubits exceed the cap of {cap}")]
    WidthCap { qubits: usize, cap: usize },
    #[error("dense dimension {dim} exceeds the cap of {cap}")]
    DenseCap { dim: usize, cap: usize },
    #[error("product operands disagree: {0}")]
    ProductMismatch(String),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("malformed gate file: {0}")]
    Format(String),
}

/// `max |(U†U - I)_ij|`, or infinity for non-square input.
pub fn unitarity_deviation(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let d = u.rows();
    let mut worst = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let mut acc = zero();
            for k in 0..d {
                acc += u[(k, i)].conj() * u[(k, j)];
            }
            if i == j {
                acc -= Complex::new(1.0, 0.0);
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

/// Binary controlled gate: block `y` is `U`, every other block `I_M`.
pub fn bcg_matrix(spec: &BcgSpec) -> BlockDiagonalGate {
    let mut gate = BlockDiagonalGate::identity(spec.n(), spec.m()).expect("validated spec");
    gate.insert_unchecked(spec.y(), Arc::clone(spec.u()));
    gate
}

/// Function controlled gate: block `y` is `U` when `f(y) = 1`, else `I_M`.
pub fn fcg_matrix(spec: &FcgSpec) -> BlockDiagonalGate {
    let mut gate = BlockDiagonalGate::identity(spec.n(), spec.m()).expect("validated spec");
    if !spec.u().is_identity() {
        for y in spec.table().marked_set() {
            gate.insert_unchecked(y, Arc::clone(spec.u()));
        }
    }
    gate
}

/// If-then-else gate: block `y` is `u_then` when `f(y) = 1`, else `u_else`.
/// With `u_else = I_M` this is [`fcg_matrix`].
pub fn conditional_matrix(spec: &ConditionalSpec) -> BlockDiagonalGate {
    let mut gate = BlockDiagonalGate::identity(spec.n(), spec.m()).expect("validated spec");
    let else_is_identity = spec.u_else().is_identity();
    for (y, &marked) in spec.table().bits().iter().enumerate() {
        if marked {
            gate.insert_unchecked(y, Arc::clone(spec.u_then()));
        } else if !else_is_identity {
            gate.insert_unchecked(y, Arc::clone(spec.u_else()));
        }
    }
    gate
}

/// Tensor-sum form `F ⊗ U + (I_N - F) ⊗ I_M` with `F = diag(f)`, built from
/// dense Kronecker products.
pub fn qit_matrix(table: &TruthTable, u: &ComplexMatrix) -> Result<ComplexMatrix, GateError> {
    let deviation = unitarity_deviation(u);
    if deviation > UNITARY_TOL {
        return Err(GateError::NotUnitary {
            what: "u",
            deviation,
        });
    }
    let dim = table.len() * u.rows();
    if dim > MAX_DENSE_DIM {
        return Err(GateError::DenseCap {
            dim,
            cap: MAX_DENSE_DIM,
        });
    }
    let f_diag: Vec<Complex> = table
        .bits()
        .iter()
        .map(|&b| Complex::new(if b { 1.0 } else { 0.0 }, 0.0))
        .collect();
    let f = ComplexMatrix::diagonal(&f_diag)?;
    let not_f = identity(table.len()).sub(&f)?;
    let marked = f.kron(u)?;
    let unmarked = not_f.kron(&identity(u.rows()))?;
    Ok(marked.add(&unmarked)?)
}

/// Diagonal of the phase oracle: `e^{i phase}` at marked `y`, 1 elsewhere.
pub fn phase_oracle_diagonal(table: &TruthTable, phase: f64) -> Vec<Complex> {
    let factor = unit_phase(phase);
    table
        .bits()
        .iter()
        .map(|&b| if b { factor } else { Complex::new(1.0, 0.0) })
        .collect()
}

/// Dense `N x N` phase oracle on the control register. `phase = pi` gives
/// `(-1)^{f(y)}` exactly.
pub fn phase_oracle_matrix(table: &TruthTable, phase: f64) -> Result<ComplexMatrix, GateError> {
    if table.len() > MAX_DENSE_DIM {
        return Err(GateError::DenseCap {
            dim: table.len(),
            cap: MAX_DENSE_DIM,
        });
    }
    Ok(ComplexMatrix::diagonal(&phase_oracle_diagonal(table, phase))?)
}

/// Dense matrix of one binary controlled gate, entry by entry: the `U` entry
/// `(i - yM, j - yM)` inside block `y`, the Kronecker delta elsewhere.
fn bcg_dense(spec: &BcgSpec) -> Result<ComplexMatrix, GateError> {
    let bm = 1usize << spec.m();
    let dim = (1usize << spec.n()) * bm;
    let lo = spec.y() * bm;
    let inside = |k: usize| (lo..lo + bm).contains(&k);
    let mut data = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            data.push(if inside(i) && inside(j) {
                spec.u()[(i - lo, j - lo)]
            } else if i == j {
                Complex::new(1.0, 0.0)
            } else {
                zero()
            });
        }
    }
    Ok(ComplexMatrix::new(dim, dim, data)?)
}

/// Dense product `CU_{y1} · CU_{y2} · ...` of binary controlled gates, in the
/// given order. All specs must share `n`, `m` and `U`, with distinct `y`.
/// The empty product is `I_{NM}`.
pub fn bcg_product(n: usize, m: usize, specs: &[BcgSpec]) -> Result<ComplexMatrix, GateError> {
    if n == 0 || m == 0 {
        return Err(GateError::ZeroWidth);
    }
    let dim = 1usize
        .checked_shl((n + m) as u32)
        .filter(|&d| d <= MAX_DENSE_DIM)
        .ok_or(GateError::DenseCap {
            dim: if n + m < 64 { 1 << (n + m) } else { usize::MAX },
            cap: MAX_DENSE_DIM,
        })?;
    let mut seen = HashSet::new();
    for s in specs {
        if s.n() != n || s.m() != m {
            return Err(GateError::ProductMismatch(format!(
                "expected widths ({n}, {m}), got ({}, {})",
                s.n(),
                s.m()
            )));
        }
        if s.u() != specs[0].u() {
            return Err(GateError::ProductMismatch(
                "all factors must control the same unitary".into(),
            ));
        }
        if !seen.insert(s.y()) {
            return Err(GateError::DuplicateControl(s.y()));
        }
    }
    let mut product = identity(dim);
    for s in specs {
        product = product.matmul(&bcg_dense(s)?)?;
    }
    Ok(product)
}

/// Random FCG instance: uniform random truth table and random unitary.
pub fn random_fcg_spec<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> FcgSpec {
    let table = TruthTable::from_bits(n, (0..1usize << n).map(|_| rng.random_bool(0.5)).collect())
        .expect("valid width");
    FcgSpec::new(table, random_unitary(1 << m, rng)).expect("random unitary is unitary")
}
