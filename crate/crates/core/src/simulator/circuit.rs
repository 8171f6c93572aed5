use crate::gates::{ConditionalSpec, FcgSpec, StandardGate};
use crate::predicate::TruthTable;

use super::apply::{
    apply_conditional_blockwise_in_place, apply_fcg_blockwise_in_place,
    apply_on_qubits_in_place, apply_phase_oracle_in_place, ApplyStats,
};
use super::{SimError, SimState};

/// One step of a [`Circuit`].
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// Standard gate on the listed qubits (qubit 0 is the first control
    /// qubit, `n + m - 1` the last target qubit).
    Gate {
        gate: StandardGate,
        qubits: Vec<usize>,
    },
    Fcg(FcgSpec),
    Conditional(ConditionalSpec),
    /// Phase `e^{i phase}` on every marked control value.
    PhaseOracle { table: TruthTable, phase: f64 },
}

/// Ordered gate list over an `n`-qubit control and `m`-qubit target register.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    pub n: usize,
    pub m: usize,
    pub steps: Vec<Step>,
}

impl Circuit {
    pub fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: Step) -> &mut Self {
        self.steps.push(step);
        self
    }

    fn check_step(&self, step: &Step) -> Result<(), SimError> {
        let total = self.n + self.m;
        let widths = |what, actual| {
            if actual == (self.n, self.m) {
                Ok(())
            } else {
                Err(SimError::WidthMismatch {
                    what,
                    expected: (self.n, self.m),
                    actual,
                })
            }
        };
        match step {
            Step::Gate { gate, qubits } => {
                if qubits.len() != gate.num_qubits() {
                    return Err(SimError::GateArity {
                        expected: gate.num_qubits(),
                        actual: qubits.len(),
                    });
                }
                for (k, &q) in qubits.iter().enumerate() {
                    if q >= total {
                        return Err(SimError::QubitOutOfRange { qubit: q, total });
                    }
                    if qubits[..k].contains(&q) {
                        return Err(SimError::DuplicateQubit(q));
                    }
                }
                Ok(())
            }
            Step::Fcg(spec) => widths("function controlled gate", (spec.n(), spec.m())),
            Step::Conditional(spec) => widths("conditional gate", (spec.n(), spec.m())),
            Step::PhaseOracle { table, .. } => widths("phase oracle", (table.n(), self.m)),
        }
    }

    /// Checks every step against the declared registers, reporting the first
    /// inconsistent one.
    pub fn validate(&self) -> Result<(), SimError> {
        for (index, step) in self.steps.iter().enumerate() {
            self.check_step(step).map_err(|e| SimError::Step {
                index,
                source: Box::new(e),
            })?;
        }
        Ok(())
    }
}

fn apply_step(step: &Step, state: &mut SimState) -> Result<ApplyStats, SimError> {
    match step {
        Step::Gate { gate, qubits } => apply_on_qubits_in_place(&gate.matrix(), qubits, state),
        Step::Fcg(spec) => apply_fcg_blockwise_in_place(spec, state),
        Step::Conditional(spec) => apply_conditional_blockwise_in_place(spec, state),
        Step::PhaseOracle { table, phase } => apply_phase_oracle_in_place(table, *phase, state),
    }
}

/// Runs the steps left to right, using the block-wise paths for controlled
/// gates.
pub fn run_circuit(circuit: &Circuit, initial: &SimState) -> Result<SimState, SimError> {
    run_circuit_with_stats(circuit, initial).map(|(s, _)| s)
}

pub fn run_circuit_with_stats(
    circuit: &Circuit,
    initial: &SimState,
) -> Result<(SimState, ApplyStats), SimError> {
    if (initial.n(), initial.m()) != (circuit.n, circuit.m) {
        return Err(SimError::WidthMismatch {
            what: "initial state",
            expected: (circuit.n, circuit.m),
            actual: (initial.n(), initial.m()),
        });
    }
    circuit.validate()?;
    let mut state = initial.clone();
    let mut total = ApplyStats::default();
    for (index, step) in circuit.steps.iter().enumerate() {
        total += apply_step(step, &mut state).map_err(|e| SimError::Step {
            index,
            source: Box::new(e),
        })?;
    }
    Ok((state, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Complex, StateVector};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn empty_circuit_is_identity() {
        let s = SimState::basis(2, 1, 1, 1).unwrap();
        assert_eq!(run_circuit(&Circuit::new(2, 1), &s).unwrap(), s);
    }

    #[test]
    fn single_cnot_entangles() {
        let h = FRAC_1_SQRT_2;
        let s = SimState::new(1, 1, StateVector::new(vec![c(h), c(0.), c(h), c(0.)]).unwrap()).unwrap();
        let mut circ = Circuit::new(1, 1);
        circ.push(Step::Gate {
            gate: StandardGate::CX,
            qubits: vec![0, 1],
        });
        let out = run_circuit(&circ, &s).unwrap();
        assert_eq!(out.amplitudes(), &[c(h), c(0.), c(0.), c(h)]);
    }

    #[test]
    fn or_gate_sequence_computes_disjunction() {
        let mut circ = Circuit::new(2, 1);
        circ.push(Step::Gate {
            gate: StandardGate::CX,
            qubits: vec![0, 2],
        })
        .push(Step::Gate {
            gate: StandardGate::CX,
            qubits: vec![1, 2],
        })
        .push(Step::Gate {
            gate: StandardGate::CCX,
            qubits: vec![0, 1, 2],
        });
        for x in 0..4 {
            let out = run_circuit(&circ, &SimState::basis(2, 1, x, 0).unwrap()).unwrap();
            let or = usize::from(x != 0);
            assert_eq!(out, SimState::basis(2, 1, x, or).unwrap(), "x = {x}");
        }
    }

    #[test]
    fn first_bad_step_is_reported() {
        let mut circ = Circuit::new(2, 1);
        circ.push(Step::Gate {
            gate: StandardGate::X,
            qubits: vec![0],
        })
        .push(Step::Gate {
            gate: StandardGate::CX,
            qubits: vec![0, 3],
        })
        .push(Step::PhaseOracle {
            table: TruthTable::ones(3).unwrap(),
            phase: 1.0,
        });
        let err = run_circuit(&circ, &SimState::basis(2, 1, 0, 0).unwrap()).unwrap_err();
        match err {
            SimError::Step { index, source } => {
                assert_eq!(index, 1);
                assert!(matches!(*source, SimError::QubitOutOfRange { qubit: 3, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn initial_state_must_match() {
        let circ = Circuit::new(2, 1);
        assert!(matches!(
            run_circuit(&circ, &SimState::basis(1, 1, 0, 0).unwrap()),
            Err(SimError::WidthMismatch { what: "initial state", .. })
        ));
    }
}
