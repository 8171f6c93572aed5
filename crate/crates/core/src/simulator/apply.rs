//! Gate application: the dense reference path and the block-wise fast paths.

use crate::gates::{unitarity_deviation, BlockDiagonalGate, ConditionalSpec, FcgSpec};
use crate::linalg::{Complex, ComplexMatrix, COMPOSITION_TOL};
use crate::predicate::TruthTable;

use super::{SimError, SimState};

/// Work done by one gate application.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ApplyStats {
    /// Complex multiply-adds performed on state amplitudes.
    pub mul_adds: u64,
    /// Number of `M`-amplitude slices that were transformed.
    pub blocks: usize,
}

impl std::ops::AddAssign for ApplyStats {
    fn add_assign(&mut self, rhs: Self) {
        self.mul_adds += rhs.mul_adds;
        self.blocks += rhs.blocks;
    }
}

/// `slice <- u * slice`, returning the number of multiply-adds.
fn transform_slice(u: &ComplexMatrix, slice: &mut [Complex], scratch: &mut [Complex]) -> u64 {
    let mut count = 0u64;
    for (r, out) in scratch.iter_mut().enumerate() {
        let mut acc = Complex::new(0.0, 0.0);
        for (&a, &b) in u.row(r).iter().zip(slice.iter()) {
            acc += a * b;
            count += 1;
        }
        *out = acc;
    }
    slice.copy_from_slice(scratch);
    count
}

fn check_widths(
    what: &'static str,
    gate: (usize, usize),
    state: &SimState,
) -> Result<(), SimError> {
    if gate != (state.n(), state.m()) {
        return Err(SimError::WidthMismatch {
            what,
            expected: (state.n(), state.m()),
            actual: gate,
        });
    }
    Ok(())
}

/// Transforms slice `y` by `pick(y)` wherever it returns a matrix.
fn apply_blocks<'a>(
    state: &mut SimState,
    pick: impl Fn(usize) -> Option<&'a ComplexMatrix>,
) -> ApplyStats {
    let bm = 1usize << state.m();
    let mut scratch = vec![Complex::new(0.0, 0.0); bm];
    let mut stats = ApplyStats::default();
    for (y, slice) in state.amplitudes_mut().chunks_exact_mut(bm).enumerate() {
        if let Some(u) = pick(y) {
            stats.mul_adds += transform_slice(u, slice, &mut scratch);
            stats.blocks += 1;
        }
    }
    stats
}

/// Dense reference path: `state <- g * state`. `g` must be unitary within
/// `1e-9`.
pub fn apply_full(g: &ComplexMatrix, state: &SimState) -> Result<SimState, SimError> {
    let mut out = state.clone();
    apply_full_in_place(g, &mut out)?;
    Ok(out)
}

pub fn apply_full_in_place(g: &ComplexMatrix, state: &mut SimState) -> Result<ApplyStats, SimError> {
    if g.shape() != (state.dim(), state.dim()) {
        return Err(SimError::DimMismatch {
            expected: state.dim(),
            actual: g.rows(),
        });
    }
    let deviation = unitarity_deviation(g);
    if deviation > COMPOSITION_TOL {
        return Err(SimError::NotUnitary(deviation));
    }
    let next = g.matvec(state.amplitudes())?;
    state.amplitudes_mut().copy_from_slice(&next);
    Ok(ApplyStats {
        mul_adds: (g.rows() * g.cols()) as u64,
        blocks: 1,
    })
}

/// Applies a function controlled gate by transforming only the slices
/// `[yM..(y+1)M)` with `f(y) = 1`. Costs exactly `k * M^2` multiply-adds for
/// `k` marked values.
pub fn apply_fcg_blockwise(spec: &FcgSpec, state: &SimState) -> Result<SimState, SimError> {
    let mut out = state.clone();
    apply_fcg_blockwise_in_place(spec, &mut out)?;
    Ok(out)
}

pub fn apply_fcg_blockwise_in_place(
    spec: &FcgSpec,
    state: &mut SimState,
) -> Result<ApplyStats, SimError> {
    check_widths("function controlled gate", (spec.n(), spec.m()), state)?;
    let bits = spec.table().bits();
    let u = spec.u().as_ref();
    Ok(apply_blocks(state, |y| bits[y].then_some(u)))
}

/// Applies an if-then-else gate slice by slice.
pub fn apply_conditional_blockwise(
    spec: &ConditionalSpec,
    state: &SimState,
) -> Result<SimState, SimError> {
    let mut out = state.clone();
    apply_conditional_blockwise_in_place(spec, &mut out)?;
    Ok(out)
}

pub fn apply_conditional_blockwise_in_place(
    spec: &ConditionalSpec,
    state: &mut SimState,
) -> Result<ApplyStats, SimError> {
    check_widths("conditional gate", (spec.n(), spec.m()), state)?;
    let bits = spec.table().bits();
    let (then_u, else_u) = (spec.u_then().as_ref(), spec.u_else().as_ref());
    let skip_else = else_u.is_identity();
    Ok(apply_blocks(state, |y| {
        if bits[y] {
            Some(then_u)
        } else if skip_else {
            None
        } else {
            Some(else_u)
        }
    }))
}

/// Applies any block-diagonal gate, touching only its non-identity blocks.
pub fn apply_block_diagonal_in_place(
    gate: &BlockDiagonalGate,
    state: &mut SimState,
) -> Result<ApplyStats, SimError> {
    check_widths("block-diagonal gate", (gate.n(), gate.m()), state)?;
    Ok(apply_blocks(state, |y| gate.block(y)))
}

/// Multiplies every amplitude with marked control value by `e^{i phase}`.
pub fn apply_phase_oracle_in_place(
    table: &TruthTable,
    phase: f64,
    state: &mut SimState,
) -> Result<ApplyStats, SimError> {
    if table.n() != state.n() {
        return Err(SimError::WidthMismatch {
            what: "phase oracle",
            expected: (state.n(), state.m()),
            actual: (table.n(), state.m()),
        });
    }
    let factor = crate::angle::unit_phase(phase);
    let bm = 1usize << state.m();
    let mut stats = ApplyStats::default();
    for (y, slice) in state.amplitudes_mut().chunks_exact_mut(bm).enumerate() {
        if table.is_marked(y) {
            slice.iter_mut().for_each(|z| *z *= factor);
            stats.mul_adds += bm as u64;
            stats.blocks += 1;
        }
    }
    Ok(stats)
}

/// Applies a `2^k x 2^k` matrix to the listed qubits. Qubit 0 is the most
/// significant bit of the full index (the first control qubit); the first
/// listed qubit is the most significant bit of the gate's local index.
pub fn apply_on_qubits_in_place(
    matrix: &ComplexMatrix,
    qubits: &[usize],
    state: &mut SimState,
) -> Result<ApplyStats, SimError> {
    let total = state.n() + state.m();
    let k = qubits.len();
    if matrix.shape() != (1 << k, 1 << k) {
        return Err(SimError::GateArity {
            expected: matrix.rows().trailing_zeros() as usize,
            actual: k,
        });
    }
    let mut mask = 0usize;
    for &q in qubits {
        if q >= total {
            return Err(SimError::QubitOutOfRange { qubit: q, total });
        }
        let bit = 1usize << (total - 1 - q);
        if mask & bit != 0 {
            return Err(SimError::DuplicateQubit(q));
        }
        mask |= bit;
    }
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|local| {
            qubits
                .iter()
                .enumerate()
                .filter(|&(t, _)| local >> (k - 1 - t) & 1 == 1)
                .map(|(_, &q)| 1usize << (total - 1 - q))
                .sum()
        })
        .collect();
    let mut gathered = vec![Complex::new(0.0, 0.0); 1 << k];
    let mut scratch = gathered.clone();
    let mut stats = ApplyStats::default();
    let amps = state.amplitudes_mut();
    for base in 0..amps.len() {
        if base & mask != 0 {
            continue;
        }
        for (g, &off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base | off];
        }
        stats.mul_adds += transform_slice(matrix, &mut gathered, &mut scratch);
        stats.blocks += 1;
        for (g, &off) in gathered.iter().zip(&offsets) {
            amps[base | off] = *g;
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{fcg_matrix, parse_unitary, StandardGate};
    use crate::linalg::random::{random_state, random_unitary};
    use crate::linalg::StateVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn state(n: usize, m: usize, amps: &[Complex]) -> SimState {
        SimState::new(n, m, StateVector::new(amps.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn identity_leaves_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = SimState::new(1, 1, random_state(4, &mut rng)).unwrap();
        let out = apply_full(&ComplexMatrix::identity(4).unwrap(), &s).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn cx_entangles() {
        let (a, b) = (0.6, 0.8);
        let s = state(1, 1, &[c(a, 0.), c(0., 0.), c(b, 0.), c(0., 0.)]);
        let out = apply_full(&StandardGate::CX.matrix(), &s).unwrap();
        assert_eq!(out.amplitudes(), &[c(a, 0.), c(0., 0.), c(0., 0.), c(b, 0.)]);
    }

    #[test]
    fn x_on_control_flips_high_bit() {
        let s = SimState::basis(1, 1, 0, 0).unwrap();
        let g = parse_unitary("X*I").unwrap();
        let out = apply_full(&g, &s).unwrap();
        assert_eq!(out, SimState::basis(1, 1, 1, 0).unwrap());
    }

    #[test]
    fn apply_full_validates() {
        let s = SimState::basis(1, 1, 0, 0).unwrap();
        assert!(matches!(
            apply_full(&StandardGate::X.matrix(), &s),
            Err(SimError::DimMismatch { .. })
        ));
        let shear = ComplexMatrix::from_real(
            4,
            4,
            &[1., 1., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.],
        )
        .unwrap();
        assert!(matches!(apply_full(&shear, &s), Err(SimError::NotUnitary(_))));
    }

    #[test]
    fn fcg_blockwise_cases() {
        let s = state(1, 1, &[c(0.6, 0.), c(0., 0.), c(0.8, 0.), c(0., 0.)]);
        let zero = FcgSpec::new(TruthTable::zeros(1).unwrap(), StandardGate::X.matrix()).unwrap();
        assert_eq!(apply_fcg_blockwise(&zero, &s).unwrap(), s);
        let cnot = FcgSpec::new(TruthTable::from_marked(1, &[1]).unwrap(), StandardGate::X.matrix()).unwrap();
        let out = apply_fcg_blockwise(&cnot, &s).unwrap();
        assert_eq!(out.amplitudes(), &[c(0.6, 0.), c(0., 0.), c(0., 0.), c(0.8, 0.)]);
    }

    #[test]
    fn fcg_blockwise_counts_k_m_squared() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = TruthTable::from_marked(3, &[0, 5, 6]).unwrap();
        let spec = FcgSpec::new(t, random_unitary(4, &mut rng)).unwrap();
        let mut s = SimState::new(3, 2, random_state(32, &mut rng)).unwrap();
        let stats = apply_fcg_blockwise_in_place(&spec, &mut s).unwrap();
        assert_eq!(stats, ApplyStats { mul_adds: 3 * 16, blocks: 3 });
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let spec = FcgSpec::new(TruthTable::ones(2).unwrap(), StandardGate::X.matrix()).unwrap();
        let s = SimState::basis(1, 1, 0, 0).unwrap();
        assert!(matches!(
            apply_fcg_blockwise(&spec, &s),
            Err(SimError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn conditional_with_identity_else_equals_fcg() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = TruthTable::from_marked(2, &[1, 2]).unwrap();
        let u = random_unitary(2, &mut rng);
        let s = SimState::new(2, 1, random_state(8, &mut rng)).unwrap();
        let cond = ConditionalSpec::new(t.clone(), u.clone(), ComplexMatrix::identity(2).unwrap()).unwrap();
        let fcg = FcgSpec::new(t, u).unwrap();
        assert_eq!(
            apply_conditional_blockwise(&cond, &s).unwrap(),
            apply_fcg_blockwise(&fcg, &s).unwrap()
        );
    }

    #[test]
    fn conditional_silq_on_zero() {
        let spec = ConditionalSpec::new(
            TruthTable::from_marked(3, &[0]).unwrap(),
            parse_unitary("H*H").unwrap(),
            parse_unitary("X*X").unwrap(),
        )
        .unwrap();
        let out = apply_conditional_blockwise(&spec, &SimState::basis(3, 2, 0, 0).unwrap()).unwrap();
        // H⊗H|00> is the uniform state, amplitude 1/2 each
        for (i, z) in out.amplitudes().iter().enumerate() {
            let expected = if i < 4 { 0.5 } else { 0.0 };
            assert!((z - c(expected, 0.)).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn conditional_all_ones_applies_then_everywhere() {
        let hh = parse_unitary("H*H").unwrap();
        let spec = ConditionalSpec::new(TruthTable::ones(2).unwrap(), hh.clone(), parse_unitary("X*X").unwrap()).unwrap();
        for x in 0..4 {
            for s0 in 0..4 {
                let out = apply_conditional_blockwise(&spec, &SimState::basis(2, 2, x, s0).unwrap()).unwrap();
                for (i, z) in out.amplitudes().iter().enumerate() {
                    let expected = if i >> 2 == x { hh[(i & 3, s0)] } else { c(0., 0.) };
                    assert!((z - expected).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn block_diagonal_application_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let spec = crate::gates::random_fcg_spec(3, 2, &mut rng);
        let gate = fcg_matrix(&spec);
        let s = SimState::new(3, 2, random_state(32, &mut rng)).unwrap();
        let mut fast = s.clone();
        apply_block_diagonal_in_place(&gate, &mut fast).unwrap();
        let dense = apply_full(&gate.to_dense().unwrap(), &s).unwrap();
        assert!(fast.vector().approx_equal(dense.vector(), 1e-12).unwrap());
    }

    #[test]
    fn phase_oracle_in_place() {
        let h = 0.5;
        let mut s = state(2, 1, &[c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.)]);
        let t = TruthTable::from_marked(2, &[1, 3]).unwrap();
        let stats = apply_phase_oracle_in_place(&t, std::f64::consts::PI, &mut s).unwrap();
        assert_eq!(stats.mul_adds, 4);
        assert_eq!(s.amplitudes()[2], c(-h, 0.));
        assert_eq!(s.amplitudes()[6], c(-h, 0.));
        assert_eq!(s.amplitudes()[4], c(h, 0.));
    }

    #[test]
    fn gates_on_named_qubits() {
        // CX with control on the first qubit and target on the third
        let mut s = SimState::basis(2, 1, 2, 0).unwrap(); // |100>
        apply_on_qubits_in_place(&StandardGate::CX.matrix(), &[0, 2], &mut s).unwrap();
        assert_eq!(s, SimState::basis(2, 1, 2, 1).unwrap()); // |101>
        // reversed qubit order: control on third, target on first
        let mut s = SimState::basis(2, 1, 0, 1).unwrap(); // |001>
        apply_on_qubits_in_place(&StandardGate::CX.matrix(), &[2, 0], &mut s).unwrap();
        assert_eq!(s, SimState::basis(2, 1, 2, 1).unwrap()); // |101>
        // H on the first qubit
        let mut s = SimState::basis(1, 1, 0, 0).unwrap();
        apply_on_qubits_in_place(&StandardGate::H.matrix(), &[0], &mut s).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_eq!(s.amplitudes(), &[c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.)]);
    }

    #[test]
    fn qubit_validation() {
        let mut s = SimState::basis(1, 1, 0, 0).unwrap();
        let cx = StandardGate::CX.matrix();
        assert!(matches!(
            apply_on_qubits_in_place(&cx, &[0, 2], &mut s),
            Err(SimError::QubitOutOfRange { qubit: 2, total: 2 })
        ));
        assert!(matches!(
            apply_on_qubits_in_place(&cx, &[1, 1], &mut s),
            Err(SimError::DuplicateQubit(1))
        ));
        assert!(matches!(
            apply_on_qubits_in_place(&cx, &[1], &mut s),
            Err(SimError::GateArity { expected: 2, actual: 1 })
        ));
    }
}
