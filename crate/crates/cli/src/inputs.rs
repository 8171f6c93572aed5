//! Reading and resolving command-line inputs.

use std::fs;
use std::io::Write;
use std::path::Path;

use fcg::gates::{parse_unitary, BlockFile};
use fcg::linalg::ComplexMatrix;
use fcg::predicate::{compile_source, TruthTable};
use fcg::simulator::SimState;

use crate::args::{FunctionArgs, OutputArgs, UnitaryArgs};
use crate::error::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Writes `text` to `--out`, or to stdout.
pub fn write_output(output: &OutputArgs, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn read_table_file(path: &Path, n: Option<usize>) -> Result<TruthTable, CliError> {
    let text = read_text(path)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let table: TruthTable =
            serde_json::from_str(trimmed).map_err(|e| CliError::schema(path, e))?;
        if let Some(n) = n.filter(|&n| n != table.n()) {
            return Err(CliError::validation(format!(
                "{}: table has n = {}, but --n is {n}",
                path.display(),
                table.n()
            )));
        }
        Ok(table)
    } else {
        let n = n.ok_or_else(|| CliError::validation("--n is required for hex tables"))?;
        Ok(TruthTable::from_hex(n, trimmed)?)
    }
}

/// Resolves the control function. The predicate is parsed before `n` is
/// required, so syntax errors surface first.
pub fn resolve_table(n: Option<usize>, f: &FunctionArgs) -> Result<TruthTable, CliError> {
    let given = [f.pred.is_some(), f.table.is_some(), f.table_hex.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(CliError::validation(
            "exactly one of --pred, --table, --table-hex is required",
        ));
    }
    if let Some(src) = &f.pred {
        fcg::predicate::parse(src).map_err(|e| CliError::predicate(src, e))?;
        let n = n.ok_or_else(|| CliError::validation("--n is required with --pred"))?;
        return compile_source(src, n).map_err(|e| CliError::predicate(src, e));
    }
    if let Some(path) = &f.table {
        return read_table_file(path, n);
    }
    let hex = f.table_hex.as_deref().expect("checked above");
    let n = n.ok_or_else(|| CliError::validation("--n is required with --table-hex"))?;
    Ok(TruthTable::from_hex(n, hex)?)
}

pub fn read_matrix_file(path: &Path) -> Result<ComplexMatrix, CliError> {
    ComplexMatrix::from_json(&read_text(path)?).map_err(|e| CliError::schema(path, e))
}

fn resolve_one(name: &Option<String>, file: &Option<std::path::PathBuf>) -> Result<Option<ComplexMatrix>, CliError> {
    match (name, file) {
        (Some(name), _) => Ok(Some(parse_unitary(name)?)),
        (None, Some(path)) => Ok(Some(read_matrix_file(path)?)),
        (None, None) => Ok(None),
    }
}

/// `(u, u_else)` from the unitary flags.
pub fn resolve_unitaries(
    u: &UnitaryArgs,
) -> Result<(Option<ComplexMatrix>, Option<ComplexMatrix>), CliError> {
    Ok((
        resolve_one(&u.u, &u.u_file)?,
        resolve_one(&u.else_name, &u.else_file)?,
    ))
}

/// Target width of a `2^m x 2^m` matrix, checked against `--m`.
pub fn target_width(u: &ComplexMatrix, m: Option<usize>) -> Result<usize, CliError> {
    let rows = u.rows();
    if !u.is_square() || !rows.is_power_of_two() || rows < 2 {
        return Err(CliError::validation(format!(
            "unitary must be 2^m x 2^m with m >= 1, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let inferred = rows.trailing_zeros() as usize;
    match m {
        Some(m) if m != inferred => Err(CliError::validation(format!(
            "--m {m} does not match the {rows}x{rows} unitary"
        ))),
        _ => Ok(inferred),
    }
}

/// A matrix file as written by `build-matrix`: dense, or `{n, m, blocks}`.
pub enum MatrixFile {
    Dense(ComplexMatrix),
    Blocks(BlockFile),
}

impl MatrixFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = read_text(path)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::schema(path, e))?;
        if value.get("blocks").is_some() {
            let blocks = BlockFile::from_json(&text).map_err(|e| CliError::schema(path, e))?;
            Ok(MatrixFile::Blocks(blocks))
        } else {
            Ok(MatrixFile::Dense(
                ComplexMatrix::from_json(&text).map_err(|e| CliError::schema(path, e))?,
            ))
        }
    }

    pub fn to_dense(&self) -> Result<ComplexMatrix, CliError> {
        match self {
            MatrixFile::Dense(m) => Ok(m.clone()),
            MatrixFile::Blocks(b) => Ok(b.to_dense()?),
        }
    }
}

/// Parses `X,S` into a basis state.
pub fn parse_basis(text: &str, n: usize, m: usize) -> Result<SimState, CliError> {
    let bad = || CliError::new(crate::error::EXIT_PARSE, format!("bad --basis `{text}`: expected X,S"));
    let (x, s) = text.split_once(',').ok_or_else(bad)?;
    let x = x.trim().parse().map_err(|_| bad())?;
    let s = s.trim().parse().map_err(|_| bad())?;
    Ok(SimState::basis(n, m, x, s)?)
}
