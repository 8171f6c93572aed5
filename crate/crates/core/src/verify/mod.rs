//! Cross-checks between independent formulations of the same gate.
//!
//! Every check returns a [`VerificationReport`]. Index arithmetic here is
//! written out locally rather than borrowed from [`crate::gates`], so a bug in
//! a builder cannot be masked by the same bug in its checker.

mod formulations;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::{BlockDiagonalGate, GateError};
use crate::linalg::{Complex, ComplexMatrix, LinalgError};
use crate::simulator::SimError;

pub use formulations::{
    check_all_formulations, check_ancilla_route, check_entry_formula,
    check_entry_formula_against, check_fcg_equals_bcg_product,
    check_fcg_equals_bcg_product_ordered, check_qit_equivalence, ENTRY_FORMULA_TOL,
};

/// Largest dimension accepted by checks that materialize dense matrices.
pub const VERIFY_MAX_DIM: usize = 1 << 12;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("shapes differ: {a:?} vs {b:?}")]
    ShapeMismatch { a: (usize, usize), b: (usize, usize) },
    #[error("dimension {dim} exceeds the verification cap of {cap}")]
    DenseCap { dim: usize, cap: usize },
    #[error("tolerance must be finite and non-negative, got {0}")]
    BadTolerance(f64),
    #[error("product order must list each marked value once: {0}")]
    BadOrder(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Location of the worst deviation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// Matrix entry `(row, column)`.
    Entry(usize, usize),
    /// Basis state index.
    Basis(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub pass: bool,
    pub max_deviation: f64,
    /// Set whenever `max_deviation > 0`, in particular on every failure.
    pub witness: Option<Witness>,
}

impl VerificationReport {
    /// Builds a report from `(deviation, location)` pairs. NaN deviations
    /// count as infinite.
    pub(crate) fn from_deviations(
        check: &str,
        tol: f64,
        deviations: impl IntoIterator<Item = (f64, Witness)>,
    ) -> Self {
        let mut max_deviation = 0.0;
        let mut witness = None;
        for (d, w) in deviations {
            let d = if d.is_nan() { f64::INFINITY } else { d };
            if d > max_deviation {
                max_deviation = d;
                witness = Some(w);
            }
        }
        Self {
            check: check.to_string(),
            pass: max_deviation <= tol,
            max_deviation,
            witness,
        }
    }

    pub(crate) fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Serializes a batch of reports as a JSON array.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization is infallible")
}

pub(crate) fn check_tol(tol: f64) -> Result<(), VerifyError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(VerifyError::BadTolerance(tol))
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<(), VerifyError> {
    if dim > VERIFY_MAX_DIM {
        Err(VerifyError::DenseCap {
            dim,
            cap: VERIFY_MAX_DIM,
        })
    } else {
        Ok(())
    }
}

/// Entrywise deviations of `a` from `b`, row-major.
pub(crate) fn entry_deviations<'a>(
    a: &'a ComplexMatrix,
    b: &'a ComplexMatrix,
) -> impl Iterator<Item = (f64, Witness)> + 'a {
    let cols = a.cols();
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .enumerate()
        .map(move |(k, (x, y))| ((x - y).norm(), Witness::Entry(k / cols, k % cols)))
}

/// Passes iff `max |(G†G - I)_ij| <= tol`.
pub fn check_unitary(g: &ComplexMatrix, tol: f64) -> Result<VerificationReport, VerifyError> {
    check_tol(tol)?;
    if !g.is_square() {
        return Err(VerifyError::NonSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    check_dim(g.rows())?;
    let d = g.rows();
    let a = g.as_slice();
    let mut devs = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..d {
                acc += a[k * d + i].conj() * a[k * d + j];
            }
            if i == j {
                acc -= 1.0;
            }
            devs.push((acc.norm(), Witness::Entry(i, j)));
        }
    }
    Ok(VerificationReport::from_deviations("unitary", tol, devs))
}

/// [`check_unitary`] on each listed block of a block-diagonal matrix with
/// `block_dim x block_dim` blocks; absent blocks are the identity. The
/// witness is reported in global indices.
pub fn check_unitary_blockwise<'a>(
    block_dim: usize,
    blocks: impl IntoIterator<Item = (usize, &'a ComplexMatrix)>,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    check_tol(tol)?;
    let mut devs = Vec::new();
    for (y, block) in blocks {
        if block.shape() != (block_dim, block_dim) {
            return Err(VerifyError::ShapeMismatch {
                a: (block_dim, block_dim),
                b: block.shape(),
            });
        }
        let r = check_unitary(block, tol)?;
        if let Some(Witness::Entry(i, j)) = r.witness {
            let base = y * block_dim;
            devs.push((r.max_deviation, Witness::Entry(base + i, base + j)));
        }
    }
    Ok(VerificationReport::from_deviations("unitary", tol, devs))
}

/// [`check_unitary_blockwise`] over the stored blocks of a gate.
pub fn check_block_unitary(
    g: &BlockDiagonalGate,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    check_unitary_blockwise(g.block_dim(), g.non_identity_blocks(), tol)
}

/// Entrywise comparison of `a` and `b`. With `up_to_global_phase`, `b` is
/// first multiplied by the phase that aligns it with `a` at the
/// largest-magnitude entry of `a`.
pub fn check_equivalence(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
    up_to_global_phase: bool,
) -> Result<VerificationReport, VerifyError> {
    check_tol(tol)?;
    if a.shape() != b.shape() {
        return Err(VerifyError::ShapeMismatch {
            a: a.shape(),
            b: b.shape(),
        });
    }
    if !up_to_global_phase {
        return Ok(VerificationReport::from_deviations(
            "equivalence",
            tol,
            entry_deviations(a, b),
        ));
    }
    let mut pivot = 0;
    let mut best = -1.0;
    for (k, z) in a.as_slice().iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            pivot = k;
        }
    }
    let phase = match (a.as_slice().get(pivot), b.as_slice().get(pivot)) {
        (Some(&za), Some(&zb)) if za.norm() > 0.0 && zb.norm() > 0.0 => {
            let r = za * zb.conj();
            r / r.norm()
        }
        _ => Complex::new(1.0, 0.0),
    };
    let rescaled = b.scale(phase);
    Ok(VerificationReport::from_deviations(
        "equivalence_up_to_phase",
        tol,
        entry_deviations(a, &rescaled),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::StandardGate;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn cx_is_unitary() {
        let r = check_unitary(&StandardGate::CX.matrix(), 1e-12).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(r.witness, None);
        assert_eq!(r.check, "unitary");
    }

    #[test]
    fn shear_is_not_unitary() {
        let shear = ComplexMatrix::from_real(2, 2, &[1., 1., 0., 1.]).unwrap();
        let r = check_unitary(&shear, 1e-12).unwrap();
        assert!(!r.pass);
        // (G†G - I) = [[0, 1], [1, 1]]
        assert_eq!(r.max_deviation, 1.0);
        assert_eq!(r.witness, Some(Witness::Entry(0, 1)));
    }

    #[test]
    fn non_square_is_an_error() {
        let m = ComplexMatrix::zeros(2, 4).unwrap();
        assert!(matches!(
            check_unitary(&m, 1e-9),
            Err(VerifyError::NonSquare { rows: 2, cols: 4 })
        ));
    }

    #[test]
    fn bad_tolerance() {
        let g = StandardGate::X.matrix();
        assert!(matches!(check_unitary(&g, -1.0), Err(VerifyError::BadTolerance(_))));
        assert!(matches!(
            check_equivalence(&g, &g, f64::NAN, false),
            Err(VerifyError::BadTolerance(_))
        ));
    }

    #[test]
    fn nan_entries_fail_with_witness() {
        let mut g = StandardGate::X.matrix();
        g[(1, 1)] = Complex::new(f64::NAN, 0.0);
        let r = check_unitary(&g, 1e-9).unwrap();
        assert!(!r.pass);
        assert!(r.witness.is_some());
        let e = check_equivalence(&g, &StandardGate::X.matrix(), 1e-9, false).unwrap();
        assert_eq!(e.witness, Some(Witness::Entry(1, 1)));
        assert!(!e.pass);
    }

    #[test]
    fn equivalence_with_and_without_phase() {
        let g = StandardGate::H.matrix().kron(&StandardGate::CX.matrix()).unwrap();
        assert!(check_equivalence(&g, &g, 1e-12, false).unwrap().pass);
        let shifted = g.scale(Complex::from_polar(1.0, FRAC_PI_3));
        let strict = check_equivalence(&g, &shifted, 1e-12, false).unwrap();
        assert!(!strict.pass);
        assert!(strict.witness.is_some());
        let loose = check_equivalence(&g, &shifted, 1e-12, true).unwrap();
        assert!(loose.pass, "{loose:?}");
        assert_eq!(loose.check, "equivalence_up_to_phase");
    }

    #[test]
    fn phase_allowance_does_not_hide_real_differences() {
        let a = StandardGate::CX.matrix();
        let b = StandardGate::I.matrix().kron(&StandardGate::I.matrix()).unwrap();
        let r = check_equivalence(&a, &b, 1e-9, true).unwrap();
        assert!(!r.pass);
        let Some(Witness::Entry(i, j)) = r.witness else {
            panic!("missing witness")
        };
        assert!((a[(i, j)] - b[(i, j)]).norm() > 1e-9);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = StandardGate::X.matrix();
        let b = StandardGate::CX.matrix();
        assert!(matches!(
            check_equivalence(&a, &b, 1e-9, false),
            Err(VerifyError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = VerificationReport {
            check: "unitary".into(),
            pass: false,
            max_deviation: 0.5,
            witness: Some(Witness::Entry(0, 1)),
        };
        assert_eq!(
            r.to_json(),
            r#"{"check":"unitary","pass":false,"max_deviation":0.5,"witness":[0,1]}"#
        );
        let b = VerificationReport {
            witness: Some(Witness::Basis(3)),
            ..r.clone()
        };
        assert!(b.to_json().ends_with(r#""witness":3}"#));
        let back: Vec<VerificationReport> =
            serde_json::from_str(&reports_to_json(&[r.clone(), b.clone()])).unwrap();
        assert_eq!(back, vec![r, b]);
        assert!(!all_pass(&back));
        assert!(all_pass(&[]));
    }

    #[test]
    fn blockwise_unitarity() {
        use std::sync::Arc;
        let g = BlockDiagonalGate::from_blocks(2, 1, [(2, Arc::new(StandardGate::X.matrix()))])
            .unwrap();
        let r = check_block_unitary(&g, 1e-12).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_deviation, 0.0);

        let shear = ComplexMatrix::from_real(2, 2, &[1., 1., 0., 1.]).unwrap();
        let x = StandardGate::X.matrix();
        let r = check_unitary_blockwise(2, [(1, &x), (3, &shear)], 1e-9).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness, Some(Witness::Entry(6, 7)));
        assert!(matches!(
            check_unitary_blockwise(4, [(0, &x)], 1e-9),
            Err(VerifyError::ShapeMismatch { .. })
        ));
    }
}
