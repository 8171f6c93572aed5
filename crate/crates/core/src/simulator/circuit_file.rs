//! Versioned JSON circuit files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 2,
//!   "m": 1,
//!   "steps": [
//!     {"op": "gate", "name": "CX", "qubits": [0, 2]},
//!     {"op": "fcg", "pred": "x != 0", "u": "X"},
//!     {"op": "conditional", "table_hex": "1", "then": "X", "else": "H"},
//!     {"op": "phase_oracle", "table": {"n": 2, "bits": [0, 0, 0, 1]}, "phase": "pi"}
//!   ]
//! }
//! ```
//!
//! The control function of a step is given by exactly one of `pred`
//! (predicate source), `table` (`{n, bits}`) or `table_hex`. Unitaries are
//! either a tensor product of standard gate names or a dense matrix object.
//! `phase` is an angle literal or a number of radians and defaults to `pi`.
//! Unknown fields are rejected.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::angle::parse_angle;
use crate::gates::{parse_unitary, ConditionalSpec, FcgSpec, StandardGate};
use crate::linalg::ComplexMatrix;
use crate::predicate::{compile_source, TruthTable};

use super::{Circuit, SimError, Step};

pub const CIRCUIT_FILE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub version: u32,
    pub n: usize,
    pub m: usize,
    pub steps: Vec<StepFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepFile {
    Gate {
        name: String,
        qubits: Vec<usize>,
    },
    Fcg {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pred: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<TruthTable>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table_hex: Option<String>,
        u: UnitaryFile,
    },
    Conditional {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pred: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<TruthTable>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table_hex: Option<String>,
        then: UnitaryFile,
        #[serde(rename = "else")]
        otherwise: UnitaryFile,
    },
    PhaseOracle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pred: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<TruthTable>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table_hex: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phase: Option<AngleFile>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitaryFile {
    Name(String),
    Matrix(ComplexMatrix),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleFile {
    Radians(f64),
    Text(String),
}

fn resolve_control(
    n: usize,
    pred: &Option<String>,
    table: &Option<TruthTable>,
    table_hex: &Option<String>,
) -> Result<TruthTable, SimError> {
    let given = [pred.is_some(), table.is_some(), table_hex.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(SimError::Format(
            "exactly one of `pred`, `table`, `table_hex` is required".into(),
        ));
    }
    let resolved = if let Some(src) = pred {
        compile_source(src, n)?
    } else if let Some(hex) = table_hex {
        TruthTable::from_hex(n, hex)?
    } else {
        table.clone().expect("checked above")
    };
    if resolved.n() != n {
        return Err(SimError::WidthMismatch {
            what: "truth table",
            expected: (n, 0),
            actual: (resolved.n(), 0),
        });
    }
    Ok(resolved)
}

impl UnitaryFile {
    fn resolve(&self) -> Result<ComplexMatrix, SimError> {
        match self {
            UnitaryFile::Name(name) => Ok(parse_unitary(name)?),
            UnitaryFile::Matrix(m) => Ok(m.clone()),
        }
    }
}

impl AngleFile {
    fn resolve(&self) -> Result<f64, SimError> {
        match self {
            AngleFile::Radians(r) => Ok(*r),
            AngleFile::Text(t) => Ok(parse_angle(t)?),
        }
    }
}

impl CircuitFile {
    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| SimError::Format(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serialization is infallible")
    }

    fn resolve_step(&self, step: &StepFile) -> Result<Step, SimError> {
        Ok(match step {
            StepFile::Gate { name, qubits } => Step::Gate {
                gate: name.parse::<StandardGate>()?,
                qubits: qubits.clone(),
            },
            StepFile::Fcg {
                pred,
                table,
                table_hex,
                u,
            } => Step::Fcg(FcgSpec::new(
                resolve_control(self.n, pred, table, table_hex)?,
                Arc::new(u.resolve()?),
            )?),
            StepFile::Conditional {
                pred,
                table,
                table_hex,
                then,
                otherwise,
            } => Step::Conditional(ConditionalSpec::new(
                resolve_control(self.n, pred, table, table_hex)?,
                then.resolve()?,
                otherwise.resolve()?,
            )?),
            StepFile::PhaseOracle {
                pred,
                table,
                table_hex,
                phase,
            } => Step::PhaseOracle {
                table: resolve_control(self.n, pred, table, table_hex)?,
                phase: phase.as_ref().map_or(Ok(PI), AngleFile::resolve)?,
            },
        })
    }

    /// Resolves predicates, tables and unitaries into a validated [`Circuit`].
    pub fn into_circuit(&self) -> Result<Circuit, SimError> {
        if self.version != CIRCUIT_FILE_VERSION {
            return Err(SimError::UnsupportedVersion(self.version));
        }
        let mut circuit = Circuit::new(self.n, self.m);
        for (index, step) in self.steps.iter().enumerate() {
            let resolved = self.resolve_step(step).map_err(|e| SimError::Step {
                index,
                source: Box::new(e),
            })?;
            circuit.push(resolved);
        }
        circuit.validate()?;
        Ok(circuit)
    }
}

/// Parses and resolves a circuit file in one step.
pub fn load_circuit(text: &str) -> Result<Circuit, SimError> {
    CircuitFile::from_json(text)?.into_circuit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{run_circuit, SimState};

    #[test]
    fn parses_every_step_kind() {
        let text = r#"{
            "version": 1, "n": 2, "m": 1,
            "steps": [
                {"op": "gate", "name": "CX", "qubits": [0, 2]},
                {"op": "fcg", "pred": "x != 0", "u": "X"},
                {"op": "fcg", "table": {"n": 2, "bits": [0, 0, 0, 1]},
                 "u": {"rows": 2, "cols": 2, "entries": [[0,0],[1,0],[1,0],[0,0]]}},
                {"op": "conditional", "table_hex": "1", "then": "H", "else": "X"},
                {"op": "phase_oracle", "pred": "x == 3", "phase": "pi/2"},
                {"op": "phase_oracle", "pred": "x == 3", "phase": 0.5},
                {"op": "phase_oracle", "pred": "x == 3"}
            ]
        }"#;
        let circ = load_circuit(text).unwrap();
        assert_eq!(circ.steps.len(), 7);
        assert!(matches!(&circ.steps[4], Step::PhaseOracle { phase, .. } if *phase == std::f64::consts::FRAC_PI_2));
        assert!(matches!(&circ.steps[5], Step::PhaseOracle { phase, .. } if *phase == 0.5));
        assert!(matches!(&circ.steps[6], Step::PhaseOracle { phase, .. } if *phase == PI));
    }

    #[test]
    fn fcg_step_runs() {
        let text = r#"{"version": 1, "n": 2, "m": 1,
            "steps": [{"op": "fcg", "pred": "x != 0", "u": "X"}]}"#;
        let circ = load_circuit(text).unwrap();
        let out = run_circuit(&circ, &SimState::basis(2, 1, 2, 0).unwrap()).unwrap();
        assert_eq!(out, SimState::basis(2, 1, 2, 1).unwrap());
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(
            load_circuit(r#"{"version": 2, "n": 1, "m": 1, "steps": []}"#),
            Err(SimError::UnsupportedVersion(2))
        ));
        assert!(matches!(
            load_circuit(r#"{"version": 1, "n": 1, "m": 1, "steps": [{"op": "measure"}]}"#),
            Err(SimError::Format(_))
        ));
        assert!(matches!(
            load_circuit(r#"{"version": 1, "n": 1, "m": 1, "extra": 0, "steps": []}"#),
            Err(SimError::Format(_))
        ));
        assert!(matches!(
            load_circuit(
                r#"{"version": 1, "n": 1, "m": 1, "steps": [{"op": "fcg", "pred": "true", "u": "X", "typo": 1}]}"#
            ),
            Err(SimError::Format(_))
        ));
        let both = r#"{"version": 1, "n": 1, "m": 1, "steps": [
            {"op": "fcg", "pred": "true", "table_hex": "3", "u": "X"}]}"#;
        assert!(matches!(
            load_circuit(both),
            Err(SimError::Step { index: 0, .. })
        ));
    }

    #[test]
    fn errors_inside_steps_are_indexed() {
        let bad_pred = r#"{"version": 1, "n": 2, "m": 1, "steps": [
            {"op": "gate", "name": "X", "qubits": [0]},
            {"op": "fcg", "pred": "x ==", "u": "X"}]}"#;
        match load_circuit(bad_pred) {
            Err(SimError::Step { index: 1, source }) => {
                assert!(matches!(*source, SimError::Predicate(_)))
            }
            other => panic!("unexpected {other:?}"),
        }
        let wrong_dims = r#"{"version": 1, "n": 2, "m": 1, "steps": [
            {"op": "fcg", "pred": "x == 1", "u": "H*H"}]}"#;
        assert!(matches!(
            load_circuit(wrong_dims),
            Err(SimError::Step { index: 0, .. })
        ));
    }

    #[test]
    fn serializes_back() {
        let file = CircuitFile {
            version: 1,
            n: 1,
            m: 1,
            steps: vec![StepFile::Fcg {
                pred: Some("x == 1".into()),
                table: None,
                table_hex: None,
                u: UnitaryFile::Name("X".into()),
            }],
        };
        let text = file.to_json_pretty();
        assert_eq!(CircuitFile::from_json(&text).unwrap(), file);
    }
}
