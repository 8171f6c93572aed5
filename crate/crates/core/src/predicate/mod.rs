//! Boolean predicates over the control-register value `x`, and their
//! compilation to dense truth tables.
//!
//! Arithmetic is on unsigned 64-bit integers. Shifting by 64 or more yields
//! zero. See [`parser`] for the grammar.

mod ast;
mod lexer;
pub mod parser;
mod table;

use thiserror::Error;

pub use ast::{BinOp, Expr, Type};
pub use parser::parse;
pub use table::TruthTable;

/// Default cap on the control width accepted by [`compile_truth_table`].
pub const DEFAULT_MAX_WIDTH: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unknown identifier `{name}` at byte {offset} (only `x`, `true`, `false` are allowed)")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("integer literal at byte {offset} does not fit in 64 bits")]
    LiteralOverflow { offset: usize },
    #[error("type error{}: {message}", offset.map(|o| format!(" at byte {o}")).unwrap_or_default())]
    Type {
        offset: Option<usize>,
        message: String,
    },
    #[error("control width {n} exceeds the cap of {cap}")]
    WidthCap { n: usize, cap: usize },
    #[error("control width must be positive")]
    ZeroWidth,
    #[error("truth table for n = {n} needs {} entries, got {len}", 1usize << n)]
    TableLength { n: usize, len: usize },
    #[error("marked value {y} outside [0..{len})")]
    MarkedOutOfRange { y: usize, len: usize },
    #[error("truth table entries must be 0 or 1, got {0}")]
    BadBit(u8),
    #[error("bad hex truth table: {0}")]
    BadHex(String),
}

impl PredicateError {
    /// True for errors in the predicate source text itself.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            PredicateError::Syntax { .. }
                | PredicateError::UnknownIdentifier { .. }
                | PredicateError::LiteralOverflow { .. }
                | PredicateError::Type { offset: Some(_), .. }
        )
    }
}

/// Values of one sub-expression across every `x` in `[0..len)`, with
/// constants kept unbroadcast.
enum Column {
    ConstInt(u64),
    ConstBool(bool),
    Int(Vec<u64>),
    Bool(Vec<bool>),
}

impl Column {
    fn int(&self, i: usize) -> u64 {
        match self {
            Column::ConstInt(v) => *v,
            Column::Int(v) => v[i],
            _ => unreachable!("type-checked"),
        }
    }

    fn boolean(&self, i: usize) -> bool {
        match self {
            Column::ConstBool(v) => *v,
            Column::Bool(v) => v[i],
            _ => unreachable!("type-checked"),
        }
    }

    fn is_const(&self) -> bool {
        matches!(self, Column::ConstInt(_) | Column::ConstBool(_))
    }
}

fn shl(a: u64, b: u64) -> u64 {
    if b >= 64 {
        0
    } else {
        a << b
    }
}

fn shr(a: u64, b: u64) -> u64 {
    if b >= 64 {
        0
    } else {
        a >> b
    }
}

fn apply_int(op: BinOp, a: u64, b: u64) -> u64 {
    match op {
        BinOp::BitAnd => a & b,
        BinOp::BitOr => a | b,
        BinOp::BitXor => a ^ b,
        BinOp::Shl => shl(a, b),
        BinOp::Shr => shr(a, b),
        _ => unreachable!("not an integer operator"),
    }
}

fn apply_cmp(op: BinOp, a: u64, b: u64) -> bool {
    match op {
        BinOp::Eq => a == b,
        BinOp::Ne => a != b,
        BinOp::Lt => a < b,
        BinOp::Le => a <= b,
        BinOp::Gt => a > b,
        BinOp::Ge => a >= b,
        _ => unreachable!("not a comparison"),
    }
}

fn eval_column(expr: &Expr, len: usize) -> Column {
    match expr {
        Expr::Int(v) => Column::ConstInt(*v),
        Expr::Bool(b) => Column::ConstBool(*b),
        Expr::Var => Column::Int((0..len as u64).collect()),
        Expr::Not(inner) => match eval_column(inner, len) {
            Column::ConstBool(b) => Column::ConstBool(!b),
            Column::Bool(mut v) => {
                v.iter_mut().for_each(|b| *b = !*b);
                Column::Bool(v)
            }
            _ => unreachable!("type-checked"),
        },
        Expr::Binary(op, l, r) => {
            let (l, r) = (eval_column(l, len), eval_column(r, len));
            let width = if l.is_const() && r.is_const() { 1 } else { len };
            let op = *op;
            let col = match op {
                BinOp::And => Column::Bool((0..width).map(|i| l.boolean(i) && r.boolean(i)).collect()),
                BinOp::Or => Column::Bool((0..width).map(|i| l.boolean(i) || r.boolean(i)).collect()),
                op if op.is_comparison() => {
                    Column::Bool((0..width).map(|i| apply_cmp(op, l.int(i), r.int(i))).collect())
                }
                op => Column::Int((0..width).map(|i| apply_int(op, l.int(i), r.int(i))).collect()),
            };
            if width == 1 {
                match col {
                    Column::Bool(v) => Column::ConstBool(v[0]),
                    Column::Int(v) => Column::ConstInt(v[0]),
                    c => c,
                }
            } else {
                col
            }
        }
    }
}

/// Compiles a predicate to its truth table over `[0..2^n)` with the default
/// width cap.
pub fn compile_truth_table(expr: &Expr, n: usize) -> Result<TruthTable, PredicateError> {
    compile_truth_table_capped(expr, n, DEFAULT_MAX_WIDTH)
}

/// Like [`compile_truth_table`] with an explicit width cap (itself bounded by
/// [`TruthTable::MAX_WIDTH`]).
pub fn compile_truth_table_capped(
    expr: &Expr,
    n: usize,
    max_width: usize,
) -> Result<TruthTable, PredicateError> {
    let cap = max_width.min(TruthTable::MAX_WIDTH);
    if n == 0 {
        return Err(PredicateError::ZeroWidth);
    }
    if n > cap {
        return Err(PredicateError::WidthCap { n, cap });
    }
    match expr.infer_type() {
        Ok(Type::Bool) => {}
        Ok(Type::Int) => {
            return Err(PredicateError::Type {
                offset: None,
                message: "predicate must be boolean, found integer (compare against 0?)".into(),
            })
        }
        Err(message) => {
            return Err(PredicateError::Type {
                offset: None,
                message,
            })
        }
    }
    let len = 1usize << n;
    let bits = match eval_column(expr, len) {
        Column::ConstBool(b) => vec![b; len],
        Column::Bool(v) => v,
        _ => unreachable!("root is boolean"),
    };
    TruthTable::from_bits(n, bits)
}

/// Parses and compiles in one step.
pub fn compile_source(source: &str, n: usize) -> Result<TruthTable, PredicateError> {
    compile_truth_table(&parse(source)?, n)
}
