use serde::{Deserialize, Serialize};

use super::{Complex, LinalgError, MAX_MATRIX_ENTRIES};

/// Amplitudes of a pure state over `dim` basis states, `dim` a power of two.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct StateVector {
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// Wraps raw amplitudes without normalizing them.
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self, LinalgError> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(LinalgError::NotPowerOfTwo(dim));
        }
        if dim > MAX_MATRIX_ENTRIES {
            return Err(LinalgError::Capacity {
                op: "state",
                requested: dim as u128,
                cap: MAX_MATRIX_ENTRIES,
            });
        }
        if let Some(pos) = amplitudes.iter().position(|z| !z.is_finite()) {
            return Err(LinalgError::NonFinite(pos));
        }
        Ok(Self { amplitudes })
    }

    /// Like [`StateVector::new`] but rescales to unit norm.
    pub fn normalized(amplitudes: Vec<Complex>) -> Result<Self, LinalgError> {
        let mut v = Self::new(amplitudes)?;
        let norm = v.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(LinalgError::ZeroVector);
        }
        v.amplitudes.iter_mut().for_each(|z| *z /= norm);
        Ok(v)
    }

    /// The computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self, LinalgError> {
        if index >= dim {
            return Err(LinalgError::Shape {
                op: "basis",
                lhs: (dim, 1),
                rhs: (index, 1),
            });
        }
        let mut amplitudes = vec![Complex::new(0.0, 0.0); dim];
        amplitudes[index] = Complex::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    /// Equal superposition over all basis states.
    pub fn uniform(dim: usize) -> Result<Self, LinalgError> {
        let a = Complex::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self::new(vec![a; dim])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Number of qubits, `log2(dim)`.
    pub fn num_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex] {
        &mut self.amplitudes
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// `|amplitude|^2` per basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Tensor product `self ⊗ other`; `self` is the high-order register.
    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        let dim = self.dim() as u128 * other.dim() as u128;
        if dim > MAX_MATRIX_ENTRIES as u128 {
            return Err(LinalgError::Capacity {
                op: "kron",
                requested: dim,
                cap: MAX_MATRIX_ENTRIES,
            });
        }
        let mut amplitudes = Vec::with_capacity(dim as usize);
        for &a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|&b| a * b));
        }
        Ok(Self { amplitudes })
    }

    /// Largest amplitude-wise modulus difference and where it occurs.
    pub fn max_abs_diff(&self, other: &Self) -> Result<(f64, usize), LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::Shape {
                op: "compare",
                lhs: (self.dim(), 1),
                rhs: (other.dim(), 1),
            });
        }
        let mut best = (0.0_f64, 0usize);
        for (k, (a, b)) in self.amplitudes.iter().zip(&other.amplitudes).enumerate() {
            let d = (a - b).norm();
            if d > best.0 {
                best = (d, k);
            }
        }
        Ok(best)
    }

    pub fn approx_equal(&self, other: &Self, tol: f64) -> Result<bool, LinalgError> {
        Ok(self.max_abs_diff(other)?.0 <= tol)
    }
}

impl TryFrom<Vec<[f64; 2]>> for StateVector {
    type Error = LinalgError;

    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self, Self::Error> {
        StateVector::new(pairs.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }
}

impl From<StateVector> for Vec<[f64; 2]> {
    fn from(v: StateVector) -> Self {
        v.amplitudes.into_iter().map(|z| [z.re, z.im]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_and_kron() {
        let zero = StateVector::basis(2, 0).unwrap();
        let one = StateVector::basis(2, 1).unwrap();
        assert_eq!(zero.kron(&one).unwrap(), StateVector::basis(4, 1).unwrap());
        assert_eq!(one.kron(&zero).unwrap(), StateVector::basis(4, 2).unwrap());
    }

    #[test]
    fn normalized_construction_has_unit_norm() {
        let v = StateVector::normalized(vec![
            Complex::new(3.0, 0.0),
            Complex::new(0.0, 4.0),
        ])
        .unwrap();
        assert!(v.is_normalized(1e-9));
        assert!((v.as_slice()[1] - Complex::new(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_lengths_and_zero() {
        assert_eq!(
            StateVector::new(vec![Complex::new(1.0, 0.0); 3]),
            Err(LinalgError::NotPowerOfTwo(3))
        );
        assert_eq!(
            StateVector::normalized(vec![Complex::new(0.0, 0.0); 2]),
            Err(LinalgError::ZeroVector)
        );
        assert!(StateVector::basis(4, 4).is_err());
    }

    #[test]
    fn uniform_probabilities() {
        let v = StateVector::uniform(8).unwrap();
        for p in v.probabilities() {
            assert!((p - 0.125).abs() < 1e-15);
        }
        assert_eq!(v.num_qubits(), 3);
    }
}
