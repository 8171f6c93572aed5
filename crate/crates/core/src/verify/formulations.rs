//! The FCG matrix four ways: the block builder, the product of binary
//! controlled gates, the tensor-sum form, and the oracle-and-ancilla route.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::gates::{bcg_product, fcg_matrix, qit_matrix, BcgSpec, FcgSpec};
use crate::linalg::{Complex, ComplexMatrix};
use crate::simulator::{simulate_oracle_ancilla, SimState};

use super::{
    check_dim, check_equivalence, check_tol, entry_deviations, VerificationReport, VerifyError,
    Witness,
};

/// Rounding allowance for the entry formula: `1 + (u - 1)` need not equal
/// `u` in floating point.
pub const ENTRY_FORMULA_TOL: f64 = 1e-15;

fn builder_dense(spec: &FcgSpec) -> Result<ComplexMatrix, VerifyError> {
    check_dim(spec.dim())?;
    Ok(fcg_matrix(spec).to_dense()?)
}

/// Lemma-style check with the marked values multiplied in ascending order.
pub fn check_fcg_equals_bcg_product(
    spec: &FcgSpec,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    check_fcg_equals_bcg_product_ordered(spec, &spec.table().marked_set(), tol)
}

/// Compares the builder against `CU_{order[0]} · CU_{order[1]} · ...`.
/// `order` must be a permutation of the marked set.
pub fn check_fcg_equals_bcg_product_ordered(
    spec: &FcgSpec,
    order: &[usize],
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    check_tol(tol)?;
    let marked: BTreeSet<usize> = spec.table().marked_set().into_iter().collect();
    let listed: BTreeSet<usize> = order.iter().copied().collect();
    if listed.len() != order.len() || listed != marked {
        return Err(VerifyError::BadOrder(format!(
            "got {order:?}, marked set is {marked:?}"
        )));
    }
    let dense = builder_dense(spec)?;
    let factors = order
        .iter()
        .map(|&y| BcgSpec::new(spec.n(), y, Arc::clone(spec.u())))
        .collect::<Result<Vec<_>, _>>()?;
    let product = bcg_product(spec.n(), spec.m(), &factors)?;
    Ok(VerificationReport::from_deviations(
        "fcg_equals_bcg_product",
        tol,
        entry_deviations(&dense, &product),
    ))
}

/// `<i|CU_f|j>` straight from the entry rule: inside the diagonal block `y`
/// shared by `i` and `j` it is `δ_ij + f(y)(<i - yM|U|j - yM> - δ_ij)`,
/// outside every such block it is 0.
fn formula_entry(spec: &FcgSpec, i: usize, j: usize) -> Complex {
    let big_m = spec.u().rows();
    let y = i / big_m;
    if !(y * big_m <= j && j < (y + 1) * big_m) {
        return Complex::new(0.0, 0.0);
    }
    let delta = Complex::new(if i == j { 1.0 } else { 0.0 }, 0.0);
    let f = if spec.table().is_marked(y) { 1.0 } else { 0.0 };
    delta + f * (spec.u()[(i - y * big_m, j - y * big_m)] - delta)
}

/// Evaluates the entry rule for every `(i, j)` and compares it with the
/// builder's dense matrix. Passes iff the deviation is at most
/// [`ENTRY_FORMULA_TOL`].
pub fn check_entry_formula(spec: &FcgSpec) -> Result<VerificationReport, VerifyError> {
    let dense = builder_dense(spec)?;
    check_entry_formula_against(spec, &dense)
}

/// Same as [`check_entry_formula`], against an arbitrary matrix (for
/// instance one read back from a file).
pub fn check_entry_formula_against(
    spec: &FcgSpec,
    matrix: &ComplexMatrix,
) -> Result<VerificationReport, VerifyError> {
    let dim = spec.dim();
    check_dim(dim)?;
    if matrix.shape() != (dim, dim) {
        return Err(VerifyError::ShapeMismatch {
            a: (dim, dim),
            b: matrix.shape(),
        });
    }
    let devs = (0..dim).flat_map(|i| {
        (0..dim).map(move |j| {
            (
                (formula_entry(spec, i, j) - matrix[(i, j)]).norm(),
                Witness::Entry(i, j),
            )
        })
    });
    Ok(VerificationReport::from_deviations(
        "entry_formula",
        ENTRY_FORMULA_TOL,
        devs,
    ))
}

/// Builder against `F ⊗ U + (I - F) ⊗ I`.
pub fn check_qit_equivalence(spec: &FcgSpec, tol: f64) -> Result<VerificationReport, VerifyError> {
    check_tol(tol)?;
    let dense = builder_dense(spec)?;
    let qit = qit_matrix(spec.table(), spec.u())?;
    Ok(VerificationReport::from_deviations(
        "qit_equivalence",
        tol,
        entry_deviations(&dense, &qit),
    ))
}

/// Column `j` of the ancilla route is the ancilla-`|0>` sector after running
/// it on basis state `j`. Also returns `1 - P(ancilla = 0)` per column.
fn ancilla_matrix(spec: &FcgSpec) -> Result<(ComplexMatrix, Vec<f64>), VerifyError> {
    let dim = spec.dim();
    check_dim(dim)?;
    let big_m = spec.u().rows();
    let mut data = vec![Complex::new(0.0, 0.0); dim * dim];
    let mut leaks = Vec::with_capacity(dim);
    for j in 0..dim {
        let input = SimState::basis(spec.n(), spec.m(), j / big_m, j % big_m)?;
        let run = simulate_oracle_ancilla(spec, &input)?;
        for (i, z) in run.state.amplitudes().iter().enumerate() {
            data[i * dim + j] = *z;
        }
        leaks.push(1.0 - run.ancilla_zero_mass);
    }
    Ok((ComplexMatrix::new(dim, dim, data)?, leaks))
}

/// Builder against the oracle-and-ancilla route restricted to the
/// ancilla-`|0>` sector. Ancilla leakage on input `j` counts as a deviation
/// with witness `Basis(j)`.
pub fn check_ancilla_route(spec: &FcgSpec, tol: f64) -> Result<VerificationReport, VerifyError> {
    check_tol(tol)?;
    let dense = builder_dense(spec)?;
    let (route, leaks) = ancilla_matrix(spec)?;
    let devs = entry_deviations(&dense, &route).chain(
        leaks
            .into_iter()
            .enumerate()
            .map(|(j, leak)| (leak.abs(), Witness::Basis(j))),
    );
    Ok(VerificationReport::from_deviations("ancilla_route", tol, devs))
}

/// Pairwise equivalence of all four formulations (six reports).
pub fn check_all_formulations(
    spec: &FcgSpec,
    tol: f64,
) -> Result<Vec<VerificationReport>, VerifyError> {
    check_tol(tol)?;
    let builder = builder_dense(spec)?;
    let product = bcg_product(spec.n(), spec.m(), &spec.marked_bcgs())?;
    let qit = qit_matrix(spec.table(), spec.u())?;
    let (ancilla, _) = ancilla_matrix(spec)?;
    let forms = [
        ("builder", &builder),
        ("bcg_product", &product),
        ("qit", &qit),
        ("ancilla", &ancilla),
    ];
    let mut reports = Vec::with_capacity(6);
    for a in 0..forms.len() {
        for b in a + 1..forms.len() {
            let r = check_equivalence(forms[a].1, forms[b].1, tol, false)?;
            reports.push(r.renamed(format!("{}_vs_{}", forms[a].0, forms[b].0)));
        }
    }
    Ok(reports)
}
