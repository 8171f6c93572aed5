use std::sync::Arc;

use crate::linalg::ComplexMatrix;
use crate::predicate::TruthTable;

use super::{unitarity_deviation, GateError, MAX_TOTAL_QUBITS, UNITARY_TOL};

/// Number of qubits `u` acts on; `u` must be square with a power-of-two
/// dimension of at least 2.
fn target_width(what: &'static str, u: &ComplexMatrix) -> Result<usize, GateError> {
    if !u.is_square() || !u.rows().is_power_of_two() || u.rows() < 2 {
        return Err(GateError::BadTargetShape {
            what,
            shape: u.shape(),
        });
    }
    Ok(u.rows().trailing_zeros() as usize)
}

fn require_unitary(what: &'static str, u: &ComplexMatrix) -> Result<(), GateError> {
    let deviation = unitarity_deviation(u);
    if deviation > UNITARY_TOL {
        return Err(GateError::NotUnitary { what, deviation });
    }
    Ok(())
}

fn check_widths(n: usize, m: usize) -> Result<(), GateError> {
    if n == 0 {
        return Err(GateError::ZeroWidth);
    }
    if n + m > MAX_TOTAL_QUBITS {
        return Err(GateError::WidthCap {
            qubits: n + m,
            cap: MAX_TOTAL_QUBITS,
        });
    }
    Ok(())
}

/// Binary controlled gate `CU_y`: applies `u` to the target iff the control
/// register holds exactly `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct BcgSpec {
    n: usize,
    m: usize,
    y: usize,
    u: Arc<ComplexMatrix>,
}

impl BcgSpec {
    pub fn new(n: usize, y: usize, u: impl Into<Arc<ComplexMatrix>>) -> Result<Self, GateError> {
        let u = u.into();
        let m = target_width("u", &u)?;
        check_widths(n, m)?;
        if y >= 1 << n {
            return Err(GateError::ControlOutOfRange { y, n });
        }
        require_unitary("u", &u)?;
        Ok(Self { n, m, y, u })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn u(&self) -> &Arc<ComplexMatrix> {
        &self.u
    }
}

/// Function controlled gate `CU_f`: applies `u` iff `f(x) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FcgSpec {
    table: TruthTable,
    m: usize,
    u: Arc<ComplexMatrix>,
}

impl FcgSpec {
    pub fn new(table: TruthTable, u: impl Into<Arc<ComplexMatrix>>) -> Result<Self, GateError> {
        let u = u.into();
        let m = target_width("u", &u)?;
        check_widths(table.n(), m)?;
        require_unitary("u", &u)?;
        Ok(Self { table, m, u })
    }

    /// Control width.
    pub fn n(&self) -> usize {
        self.table.n()
    }

    /// Target width.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn u(&self) -> &Arc<ComplexMatrix> {
        &self.u
    }

    /// Total dimension `N * M`.
    pub fn dim(&self) -> usize {
        1 << (self.n() + self.m)
    }

    /// One binary controlled gate per marked control value, ascending.
    pub fn marked_bcgs(&self) -> Vec<BcgSpec> {
        self.table
            .marked_set()
            .into_iter()
            .map(|y| BcgSpec {
                n: self.n(),
                m: self.m,
                y,
                u: Arc::clone(&self.u),
            })
            .collect()
    }
}

/// If-then-else gate: block `y` is `u_then` when `f(y) = 1`, else `u_else`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalSpec {
    table: TruthTable,
    m: usize,
    u_then: Arc<ComplexMatrix>,
    u_else: Arc<ComplexMatrix>,
}

impl ConditionalSpec {
    pub fn new(
        table: TruthTable,
        u_then: impl Into<Arc<ComplexMatrix>>,
        u_else: impl Into<Arc<ComplexMatrix>>,
    ) -> Result<Self, GateError> {
        let (u_then, u_else) = (u_then.into(), u_else.into());
        let m = target_width("u_then", &u_then)?;
        let m_else = target_width("u_else", &u_else)?;
        if m != m_else {
            return Err(GateError::BranchMismatch {
                then_dim: u_then.rows(),
                else_dim: u_else.rows(),
            });
        }
        check_widths(table.n(), m)?;
        require_unitary("u_then", &u_then)?;
        require_unitary("u_else", &u_else)?;
        Ok(Self {
            table,
            m,
            u_then,
            u_else,
        })
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn u_then(&self) -> &Arc<ComplexMatrix> {
        &self.u_then
    }

    pub fn u_else(&self) -> &Arc<ComplexMatrix> {
        &self.u_else
    }

    pub fn dim(&self) -> usize {
        1 << (self.n() + self.m)
    }
}
