use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::gates::MAX_TOTAL_QUBITS;
use crate::linalg::{Complex, StateVector};

use super::{SimError, NORM_TOL};

/// State of an `n`-qubit control register followed by an `m`-qubit target
/// register. Amplitude `x * M + s` belongs to control value `x`, target `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimState {
    n: usize,
    m: usize,
    vector: StateVector,
}

fn check_widths(n: usize, m: usize) -> Result<(), SimError> {
    if n == 0 || m == 0 {
        return Err(SimError::ZeroWidth);
    }
    if n + m > MAX_TOTAL_QUBITS {
        return Err(SimError::WidthCap {
            qubits: n + m,
            cap: MAX_TOTAL_QUBITS,
        });
    }
    Ok(())
}

impl SimState {
    /// Wraps a unit vector of dimension `2^(n+m)`.
    pub fn new(n: usize, m: usize, vector: StateVector) -> Result<Self, SimError> {
        check_widths(n, m)?;
        if vector.dim() != 1 << (n + m) {
            return Err(SimError::DimMismatch {
                expected: 1 << (n + m),
                actual: vector.dim(),
            });
        }
        let norm = vector.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(Self { n, m, vector })
    }

    pub(crate) fn from_parts_unchecked(n: usize, m: usize, vector: StateVector) -> Self {
        Self { n, m, vector }
    }

    /// `|x>|s>`.
    pub fn basis(n: usize, m: usize, x: usize, s: usize) -> Result<Self, SimError> {
        check_widths(n, m)?;
        if x >= 1 << n || s >= 1 << m {
            return Err(SimError::BasisOutOfRange { x, s, n, m });
        }
        Self::new(n, m, StateVector::basis(1 << (n + m), (x << m) | s)?)
    }

    /// `|control> ⊗ |target>`.
    pub fn product(control: &StateVector, target: &StateVector) -> Result<Self, SimError> {
        Self::new(
            control.num_qubits(),
            target.num_qubits(),
            control.kron(target)?,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn into_vector(self) -> StateVector {
        self.vector
    }

    pub fn amplitudes(&self) -> &[Complex] {
        self.vector.as_slice()
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex] {
        self.vector.as_mut_slice()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.vector.probabilities()
    }

    /// Basis index as a bitstring: control bits then target bits, most
    /// significant first.
    pub fn bitstring(&self, index: usize) -> String {
        let width = self.n + self.m;
        format!("{index:0width$b}")
    }

    /// Exported form with probabilities keyed by bitstring and by integer.
    /// Probabilities at or below `1e-14` are left out of the two views.
    pub fn export(&self) -> StateExport {
        let mut by_bits = BTreeMap::new();
        let mut by_index = BTreeMap::new();
        for (i, p) in self.probabilities().into_iter().enumerate() {
            if p > PROBABILITY_DISPLAY_CUTOFF {
                by_bits.insert(self.bitstring(i), p);
                by_index.insert(i, p);
            }
        }
        StateExport {
            n: self.n,
            m: self.m,
            amplitudes: self.vector.clone(),
            probabilities: by_bits,
            probabilities_by_index: by_index,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("state serialization is infallible")
    }

    /// Reads `{n, m, amplitudes}`; extra fields such as the probability views
    /// are ignored so exported states can be fed back in.
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            m: usize,
            amplitudes: StateVector,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| SimError::Format(e.to_string()))?;
        Self::new(raw.n, raw.m, raw.amplitudes)
    }
}

const PROBABILITY_DISPLAY_CUTOFF: f64 = 1e-14;

/// JSON form of a [`SimState`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateExport {
    pub n: usize,
    pub m: usize,
    pub amplitudes: StateVector,
    pub probabilities: BTreeMap<String, f64>,
    pub probabilities_by_index: BTreeMap<usize, f64>,
}
