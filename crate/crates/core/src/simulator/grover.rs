use std::f64::consts::{FRAC_PI_4, PI};

use serde::Serialize;

use crate::gates::phase_oracle_diagonal;
use crate::linalg::{Complex, StateVector};
use crate::predicate::TruthTable;

use super::SimError;

/// Largest search-register width accepted by [`grover_run`].
pub const GROVER_MAX_WIDTH: usize = 12;

/// Outcome of a Grover search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroverRun {
    pub n: usize,
    pub marked: Vec<usize>,
    pub iterations: usize,
    /// Total probability on the marked set before the first and after each
    /// iteration (`iterations + 1` entries).
    pub marked_probability: Vec<f64>,
    /// Final `|amplitude|^2` per basis state.
    pub probabilities: Vec<f64>,
}

/// `floor(pi/4 * sqrt(N / |marked|))`.
pub fn optimal_iterations(n: usize, marked: usize) -> usize {
    if marked == 0 {
        return 0;
    }
    (FRAC_PI_4 * ((1usize << n) as f64 / marked as f64).sqrt()).floor() as usize
}

/// Runs Grover's search from the uniform superposition, alternating the phase
/// oracle (`phase = pi`) and the diffusion `2|s><s| - I`.
pub fn grover_run(table: &TruthTable, iterations: usize) -> Result<GroverRun, SimError> {
    if table.n() > GROVER_MAX_WIDTH {
        return Err(SimError::WidthCap {
            qubits: table.n(),
            cap: GROVER_MAX_WIDTH,
        });
    }
    let marked = table.marked_set();
    if marked.is_empty() {
        return Err(SimError::EmptyMarkedSet);
    }
    let oracle = phase_oracle_diagonal(table, PI);
    let mut state = StateVector::uniform(table.len())?;
    let marked_mass = |v: &StateVector| marked.iter().map(|&y| v.as_slice()[y].norm_sqr()).sum();
    let mut marked_probability = vec![marked_mass(&state)];
    let scale = 1.0 / table.len() as f64;
    for _ in 0..iterations {
        let amps = state.as_mut_slice();
        for (z, f) in amps.iter_mut().zip(&oracle) {
            *z *= f;
        }
        let mean: Complex = amps.iter().sum::<Complex>() * scale;
        for z in amps.iter_mut() {
            *z = 2.0 * mean - *z;
        }
        marked_probability.push(marked_mass(&state));
    }
    Ok(GroverRun {
        n: table.n(),
        marked,
        iterations,
        marked_probability,
        probabilities: state.probabilities(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iterations_is_uniform() {
        let t = TruthTable::from_marked(3, &[2]).unwrap();
        let run = grover_run(&t, 0).unwrap();
        for p in run.probabilities {
            assert!((p - 0.125).abs() < 1e-15);
        }
        assert_eq!(run.marked_probability.len(), 1);
    }

    #[test]
    fn empty_marked_set_is_an_error() {
        assert!(matches!(
            grover_run(&TruthTable::zeros(3).unwrap(), 1),
            Err(SimError::EmptyMarkedSet)
        ));
    }

    #[test]
    fn width_cap() {
        let t = TruthTable::from_marked(13, &[1]).unwrap();
        assert!(matches!(grover_run(&t, 1), Err(SimError::WidthCap { .. })));
    }

    #[test]
    fn optimal_counts() {
        assert_eq!(optimal_iterations(2, 1), 1);
        assert_eq!(optimal_iterations(3, 1), 2);
        assert_eq!(optimal_iterations(3, 2), 1);
        assert_eq!(optimal_iterations(10, 1), 25);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let t = TruthTable::from_marked(6, &[3, 17, 40]).unwrap();
        for iters in 0..10 {
            let run = grover_run(&t, iters).unwrap();
            assert!((run.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }
}
