use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fcg::angle::parse_angle;
use fcg::gates::{
    conditional_matrix, fcg_matrix, phase_oracle_matrix, random_fcg_spec, BlockDiagonalGate,
    ConditionalSpec, FcgSpec,
};
use fcg::linalg::{format_complex, ComplexMatrix};
use fcg::predicate::TruthTable;
use fcg::simulator::{grover_run, optimal_iterations, run_circuit, CircuitFile, SimState};
use fcg::verify::{
    all_pass, check_all_formulations, check_ancilla_route, check_block_unitary,
    check_entry_formula, check_entry_formula_against, check_equivalence,
    check_fcg_equals_bcg_product, check_qit_equivalence, check_unitary, check_unitary_blockwise,
    reports_to_json, VerificationReport, Witness,
};

use crate::args::{BuildArgs, CheckKind, Format, GroverArgs, OutputArgs, SimulateArgs, VerifyArgs};
use crate::error::{CliError, EXIT_CHECK_FAILED};
use crate::inputs::{
    parse_basis, read_text, resolve_table, resolve_unitaries, target_width, write_output,
    MatrixFile,
};

pub const DEFAULT_TOL: f64 = 1e-9;

fn csv_unsupported(what: &str) -> CliError {
    CliError::validation(format!("--format csv is not available for {what}"))
}

fn emit_matrix(output: &OutputArgs, matrix: &ComplexMatrix) -> Result<(), CliError> {
    let text = match output.format {
        Format::Json => matrix.to_json(),
        Format::Csv => matrix.to_csv(),
    };
    write_output(output, &text)
}

/// The gate described by `--pred/--table`, `--u` and optionally `--else`.
fn build_gate(
    table: TruthTable,
    unitary: &crate::args::UnitaryArgs,
    m: Option<usize>,
) -> Result<BlockDiagonalGate, CliError> {
    let (u, u_else) = resolve_unitaries(unitary)?;
    let u = u.ok_or_else(|| CliError::validation("--u or --u-file is required"))?;
    target_width(&u, m)?;
    Ok(match u_else {
        Some(e) => conditional_matrix(&ConditionalSpec::new(table, u, e)?),
        None => fcg_matrix(&FcgSpec::new(table, u)?),
    })
}

pub fn build_matrix(a: &BuildArgs) -> Result<u8, CliError> {
    let table = resolve_table(a.n, &a.function)?;
    if a.phase_oracle {
        let u = &a.unitary;
        if u.u.is_some() || u.u_file.is_some() || u.else_name.is_some() || u.else_file.is_some() {
            return Err(CliError::validation("--phase-oracle takes no unitary"));
        }
        if a.block {
            return Err(CliError::validation("--block does not apply to phase oracles"));
        }
        let phase = parse_angle(a.phase.as_deref().unwrap_or("pi"))?;
        emit_matrix(&a.output, &phase_oracle_matrix(&table, phase)?)?;
        return Ok(0);
    }
    if a.phase.is_some() {
        return Err(CliError::validation("--phase requires --phase-oracle"));
    }
    let gate = build_gate(table, &a.unitary, a.m)?;
    if a.block {
        if a.output.format == Format::Csv {
            return Err(csv_unsupported("block output"));
        }
        write_output(&a.output, &gate.to_json())?;
    } else {
        emit_matrix(&a.output, &gate.to_dense()?)?;
    }
    Ok(0)
}

fn state_csv(state: &SimState) -> String {
    let mut out = String::from("index,bits,amplitude,probability\n");
    for (i, z) in state.amplitudes().iter().enumerate() {
        let _ = writeln!(
            out,
            "{i},{},{},{}",
            state.bitstring(i),
            format_complex(*z),
            z.norm_sqr()
        );
    }
    out
}

pub fn simulate(a: &SimulateArgs) -> Result<u8, CliError> {
    let path = a.circuit.display().to_string();
    let file = CircuitFile::from_json(&read_text(&a.circuit)?)
        .map_err(|e| CliError::from(e).with_context(&path))?;
    let circuit = file
        .into_circuit()
        .map_err(|e| CliError::from(e).with_context(&path))?;
    let initial = match &a.state {
        Some(p) => SimState::from_json(&read_text(p)?)
            .map_err(|e| CliError::from(e).with_context(&p.display().to_string()))?,
        None => parse_basis(a.basis.as_deref().unwrap_or("0,0"), circuit.n, circuit.m)?,
    };
    let state = run_circuit(&circuit, &initial)?;
    let text = match a.output.format {
        Format::Json => serde_json::to_string_pretty(&state.export())
            .expect("state serialization is infallible"),
        Format::Csv => state_csv(&state),
    };
    write_output(&a.output, &text)?;
    Ok(0)
}

fn require<'a>(path: &'a Option<std::path::PathBuf>, flag: &str) -> Result<&'a Path, CliError> {
    path.as_deref()
        .ok_or_else(|| CliError::validation(format!("{flag} is required for this check")))
}

fn spec_reports(
    kind: CheckKind,
    spec: &FcgSpec,
    tol: f64,
) -> Result<Vec<VerificationReport>, CliError> {
    Ok(match kind {
        CheckKind::Unitary => vec![check_block_unitary(&fcg_matrix(spec), tol)?],
        CheckKind::Lemma3 => vec![check_fcg_equals_bcg_product(spec, tol)?],
        CheckKind::QitEquivalence => vec![check_qit_equivalence(spec, tol)?],
        CheckKind::EntryFormula => vec![check_entry_formula(spec)?],
        CheckKind::Ancilla => vec![check_ancilla_route(spec, tol)?],
        CheckKind::Formulations => check_all_formulations(spec, tol)?,
        CheckKind::Equivalence => unreachable!("handled by the caller"),
    })
}

fn random_specs(a: &VerifyArgs, count: usize) -> Vec<FcgSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    (0..count)
        .map(|_| {
            let n = a.n.unwrap_or_else(|| rng.random_range(1..=4));
            let m = a.m.unwrap_or_else(|| rng.random_range(1..=3));
            random_fcg_spec(n, m, &mut rng)
        })
        .collect()
}

fn given_spec(a: &VerifyArgs) -> Result<FcgSpec, CliError> {
    let table = resolve_table(a.n, &a.function)?;
    let (u, u_else) = resolve_unitaries(&a.unitary)?;
    if u_else.is_some() {
        return Err(CliError::validation(
            "--else is only supported by the unitary check",
        ));
    }
    let u = u.ok_or_else(|| CliError::validation("--u or --u-file is required"))?;
    target_width(&u, a.m)?;
    Ok(FcgSpec::new(table, u)?)
}

fn collect_reports(a: &VerifyArgs, tol: f64) -> Result<(Vec<VerificationReport>, bool), CliError> {
    let single = |r: VerificationReport| Ok((vec![r], true));
    match a.check {
        CheckKind::Equivalence => {
            let lhs = MatrixFile::read(require(&a.matrix, "--matrix")?)?.to_dense()?;
            let rhs = MatrixFile::read(require(&a.against, "--against")?)?.to_dense()?;
            return single(check_equivalence(&lhs, &rhs, tol, a.up_to_phase)?);
        }
        CheckKind::Unitary if a.matrix.is_some() => {
            return single(match MatrixFile::read(require(&a.matrix, "--matrix")?)? {
                MatrixFile::Dense(g) => check_unitary(&g, tol)?,
                MatrixFile::Blocks(b) => {
                    b.check_layout()?;
                    check_unitary_blockwise(1 << b.m, b.blocks.iter().map(|(&y, g)| (y, g)), tol)?
                }
            });
        }
        CheckKind::Unitary if a.random.is_none() => {
            let table = resolve_table(a.n, &a.function)?;
            return single(check_block_unitary(&build_gate(table, &a.unitary, a.m)?, tol)?);
        }
        CheckKind::EntryFormula if a.matrix.is_some() => {
            let spec = given_spec(a)?;
            let matrix = MatrixFile::read(require(&a.matrix, "--matrix")?)?.to_dense()?;
            return single(check_entry_formula_against(&spec, &matrix)?);
        }
        _ => {}
    }
    if let Some(count) = a.random {
        if a.function.is_given() || a.unitary.u.is_some() || a.unitary.u_file.is_some() {
            return Err(CliError::validation(
                "--random generates its own functions and unitaries",
            ));
        }
        let mut reports = Vec::new();
        for spec in random_specs(a, count) {
            reports.extend(spec_reports(a.check, &spec, tol)?);
        }
        return Ok((reports, false));
    }
    let reports = spec_reports(a.check, &given_spec(a)?, tol)?;
    let one = reports.len() == 1;
    Ok((reports, one))
}

fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("check,pass,max_deviation,witness\n");
    for r in reports {
        let witness = match r.witness {
            Some(Witness::Entry(i, j)) => format!("{i} {j}"),
            Some(Witness::Basis(i)) => i.to_string(),
            None => String::new(),
        };
        let _ = writeln!(out, "{},{},{},{witness}", r.check, r.pass, r.max_deviation);
    }
    out
}

pub fn verify(a: &VerifyArgs) -> Result<u8, CliError> {
    let tol = a.tol.unwrap_or(DEFAULT_TOL);
    let (reports, single) = collect_reports(a, tol)?;
    let text = match a.output.format {
        Format::Csv => reports_csv(&reports),
        Format::Json if single => serde_json::to_string_pretty(&reports[0])
            .expect("report serialization is infallible"),
        Format::Json => reports_to_json(&reports),
    };
    write_output(&a.output, &text)?;
    Ok(if all_pass(&reports) { 0 } else { EXIT_CHECK_FAILED })
}

pub fn grover(a: &GroverArgs) -> Result<u8, CliError> {
    let table = resolve_table(a.n, &a.function)?;
    let iterations = a
        .iters
        .unwrap_or_else(|| optimal_iterations(table.n(), table.count_marked()));
    let run = grover_run(&table, iterations)?;
    let text = match a.output.format {
        Format::Json => {
            serde_json::to_string_pretty(&run).expect("report serialization is infallible")
        }
        Format::Csv => {
            let mut out = String::from("iteration,marked_probability\n");
            for (k, p) in run.marked_probability.iter().enumerate() {
                let _ = writeln!(out, "{k},{p}");
            }
            out.push_str("\nindex,probability\n");
            for (y, p) in run.probabilities.iter().enumerate() {
                let _ = writeln!(out, "{y},{p}");
            }
            out
        }
    };
    write_output(&a.output, &text)?;
    Ok(0)
}
