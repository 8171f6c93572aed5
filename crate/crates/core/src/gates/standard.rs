use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::linalg::{Complex, ComplexMatrix};

use super::GateError;

/// Fixed gates with literal matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardGate {
    I,
    X,
    H,
    CX,
    CCX,
}

impl StandardGate {
    pub const ALL: [StandardGate; 5] = [
        StandardGate::I,
        StandardGate::X,
        StandardGate::H,
        StandardGate::CX,
        StandardGate::CCX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StandardGate::I => "I",
            StandardGate::X => "X",
            StandardGate::H => "H",
            StandardGate::CX => "CX",
            StandardGate::CCX => "CCX",
        }
    }

    pub fn num_qubits(self) -> usize {
        match self {
            StandardGate::I | StandardGate::X | StandardGate::H => 1,
            StandardGate::CX => 2,
            StandardGate::CCX => 3,
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            StandardGate::I => ComplexMatrix::identity(2).expect("2x2"),
            StandardGate::X => ComplexMatrix::from_real(2, 2, &[0., 1., 1., 0.]).expect("2x2"),
            StandardGate::H => {
                let h = FRAC_1_SQRT_2;
                ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).expect("2x2")
            }
            StandardGate::CX => {
                #[rustfmt::skip]
                let v = [
                    1., 0., 0., 0.,
                    0., 1., 0., 0.,
                    0., 0., 0., 1.,
                    0., 0., 1., 0.,
                ];
                ComplexMatrix::from_real(4, 4, &v).expect("4x4")
            }
            StandardGate::CCX => {
                #[rustfmt::skip]
                let v = [
                    1., 0., 0., 0., 0., 0., 0., 0.,
                    0., 1., 0., 0., 0., 0., 0., 0.,
                    0., 0., 1., 0., 0., 0., 0., 0.,
                    0., 0., 0., 1., 0., 0., 0., 0.,
                    0., 0., 0., 0., 1., 0., 0., 0.,
                    0., 0., 0., 0., 0., 1., 0., 0.,
                    0., 0., 0., 0., 0., 0., 0., 1.,
                    0., 0., 0., 0., 0., 0., 1., 0.,
                ];
                ComplexMatrix::from_real(8, 8, &v).expect("8x8")
            }
        }
    }
}

impl fmt::Display for StandardGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardGate {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "I" | "ID" => Ok(StandardGate::I),
            "X" | "NOT" => Ok(StandardGate::X),
            "H" => Ok(StandardGate::H),
            "CX" | "CNOT" => Ok(StandardGate::CX),
            "CCX" | "TOFFOLI" => Ok(StandardGate::CCX),
            _ => Err(GateError::UnknownGate(s.to_string())),
        }
    }
}

/// Resolves a unitary written as a tensor product of standard gate names,
/// e.g. `X`, `H*H` or `H⊗I⊗X`. The leftmost factor is the most significant.
pub fn parse_unitary(spec: &str) -> Result<ComplexMatrix, GateError> {
    let mut factors = spec.split(['*', '⊗']).map(str::trim);
    let first: StandardGate = factors
        .next()
        .filter(|f| !f.is_empty())
        .ok_or_else(|| GateError::UnknownGate(spec.to_string()))?
        .parse()?;
    let mut acc = first.matrix();
    for f in factors {
        let g: StandardGate = f.parse()?;
        acc = acc.kron(&g.matrix())?;
    }
    Ok(acc)
}

pub(crate) fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim).expect("identity within cap")
}

pub(crate) fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}
