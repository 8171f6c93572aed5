//! Function-controlled quantum gates.
//!
//! A function-controlled gate applies a unitary `U` to an `m`-qubit target
//! register whenever a boolean function `f` of the `n`-qubit control register
//! evaluates to 1. Its matrix is block diagonal: block `y` (global indices
//! `[yM..(y+1)M)`, with `M = 2^m`) is `U` when `f(y) = 1` and the identity
//! otherwise.
//!
//! Basis indices are always `i = x * M + s`: the control value `x` is the
//! high-order part, the target value `s` the low-order part.
//!
//! * [`linalg`]: dense complex matrices and state vectors.
//! * [`predicate`]: the predicate language for `f` and its truth tables.
//! * [`gates`]: matrix constructions (binary/function controlled gates,
//!   tensor-sum form, phase oracles, if-then-else gates).
//! * [`simulator`]: block-wise statevector simulation, the ancilla-oracle
//!   route, Grover search and circuits.
//! * [`verify`]: cross-checks between the independent formulations.

pub mod angle;
pub mod gates;
pub mod linalg;
pub mod predicate;
pub mod simulator;
pub mod verify;
