//! Seeded random matrices and states for property tests and batch verification.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Complex, ComplexMatrix, StateVector};

fn normal_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with independent standard-normal complex entries.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| normal_complex(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("random matrix dims are valid")
}

/// Random unitary of size `dim`, obtained by Gram-Schmidt orthonormalization
/// of the columns of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        // columns stored contiguously while orthonormalizing
        let mut cols: Vec<Vec<Complex>> = (0..dim)
            .map(|_| (0..dim).map(|_| normal_complex(rng)).collect())
            .collect();
        let mut degenerate = false;
        for k in 0..dim {
            // two passes of modified Gram-Schmidt keep the basis orthogonal to
            // machine precision
            for _ in 0..2 {
                for p in 0..k {
                    let (done, rest) = cols.split_at_mut(k);
                    let q = &done[p];
                    let v = &mut rest[0];
                    let proj: Complex = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= proj * qi;
                    }
                }
            }
            let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            cols[k].iter_mut().for_each(|z| *z /= norm);
        }
        if degenerate {
            continue;
        }
        let mut data = vec![Complex::new(0.0, 0.0); dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                data[i * dim + j] = z;
            }
        }
        return ComplexMatrix::new(dim, dim, data).expect("unitary dims are valid");
    }
}

/// Haar-like random pure state of dimension `dim`.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    loop {
        let v: Vec<Complex> = (0..dim).map(|_| normal_complex(rng)).collect();
        if let Ok(s) = StateVector::normalized(v) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [1, 2, 4, 8, 16] {
            let u = random_unitary(dim, &mut rng);
            let prod = u.adjoint().matmul(&u).unwrap();
            let id = ComplexMatrix::identity(dim).unwrap();
            assert!(prod.approx_equal(&id, 1e-12).unwrap(), "dim {dim}");
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_unitary(4, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_unitary(4, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }

    #[test]
    fn random_state_is_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_state(32, &mut rng).is_normalized(1e-12));
    }
}
