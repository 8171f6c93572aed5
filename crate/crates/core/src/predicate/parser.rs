//! Recursive-descent parser for control predicates.
//!
//! ```text
//! predicate  := or EOF
//! or         := and ( "||" and )*
//! and        := comparison ( "&&" comparison )*
//! comparison := bitor ( ( "==" | "!=" | "<" | "<=" | ">" | ">=" ) bitor )?
//! bitor      := bitxor ( "|" bitxor )*
//! bitxor     := bitand ( "^" bitand )*
//! bitand     := shift ( "&" shift )*
//! shift      := unary ( ( "<<" | ">>" ) unary )*
//! unary      := "!" unary | primary
//! primary    := integer | "x" | "true" | "false" | "(" or ")"
//! integer    := decimal | "0x" hex | "0b" binary
//! ```
//!
//! Comparisons do not chain. Operand types are checked while parsing, so a
//! returned tree is always well typed.

use super::ast::{BinOp, Expr, Type};
use super::lexer::{tokenize, Token, TokenKind};
use super::PredicateError;

const PRIMARY_START: &[&str] = &[
    "integer literal",
    "`x`",
    "`true`",
    "`false`",
    "`(`",
    "`!`",
];

struct Parser<'a> {
    source: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

type Typed = (Expr, Type);

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> PredicateError {
        let tok = self.peek();
        PredicateError::Syntax {
            offset: tok.offset,
            found: tok.describe(self.source),
            expected: expected.to_vec(),
        }
    }

    fn peek_op(&self, ops: &[BinOp]) -> Option<BinOp> {
        match self.peek().kind {
            TokenKind::Op(op) if ops.contains(&op) => Some(op),
            _ => None,
        }
    }

    fn combine(op: BinOp, offset: usize, lhs: Typed, rhs: Typed) -> Result<Typed, PredicateError> {
        let (want, out) = op.signature();
        for (_, got) in [&lhs, &rhs] {
            if *got != want {
                return Err(PredicateError::Type {
                    offset: Some(offset),
                    message: format!("`{}` expects {want} operands, found {got}", op.symbol()),
                });
            }
        }
        Ok((Expr::binary(op, lhs.0, rhs.0), out))
    }

    fn left_assoc(
        &mut self,
        ops: &[BinOp],
        next: fn(&mut Self) -> Result<Typed, PredicateError>,
    ) -> Result<Typed, PredicateError> {
        let mut lhs = next(self)?;
        while let Some(op) = self.peek_op(ops) {
            let offset = self.bump().offset;
            let rhs = next(self)?;
            lhs = Self::combine(op, offset, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Typed, PredicateError> {
        self.left_assoc(&[BinOp::Or], Self::and)
    }

    fn and(&mut self) -> Result<Typed, PredicateError> {
        self.left_assoc(&[BinOp::And], Self::comparison)
    }

    fn comparison(&mut self) -> Result<Typed, PredicateError> {
        const CMP: &[BinOp] = &[
            BinOp::Eq,
            BinOp::Ne,
            BinOp::Lt,
            BinOp::Le,
            BinOp::Gt,
            BinOp::Ge,
        ];
        let lhs = self.bitor()?;
        let Some(op) = self.peek_op(CMP) else {
            return Ok(lhs);
        };
        let offset = self.bump().offset;
        let rhs = self.bitor()?;
        if self.peek_op(CMP).is_some() {
            return Err(self.error(&["`&&`", "`||`", "`)`", "end of input"]));
        }
        Self::combine(op, offset, lhs, rhs)
    }

    fn bitor(&mut self) -> Result<Typed, PredicateError> {
        self.left_assoc(&[BinOp::BitOr], Self::bitxor)
    }

    fn bitxor(&mut self) -> Result<Typed, PredicateError> {
        self.left_assoc(&[BinOp::BitXor], Self::bitand)
    }

    fn bitand(&mut self) -> Result<Typed, PredicateError> {
        self.left_assoc(&[BinOp::BitAnd], Self::shift)
    }

    fn shift(&mut self) -> Result<Typed, PredicateError> {
        self.left_assoc(&[BinOp::Shl, BinOp::Shr], Self::unary)
    }

    fn unary(&mut self) -> Result<Typed, PredicateError> {
        if self.peek().kind == TokenKind::Not {
            let offset = self.bump().offset;
            let (inner, ty) = self.unary()?;
            if ty != Type::Bool {
                return Err(PredicateError::Type {
                    offset: Some(offset),
                    message: "`!` expects a boolean operand, found integer".into(),
                });
            }
            return Ok((Expr::not(inner), Type::Bool));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Typed, PredicateError> {
        let typed = match self.peek().kind {
            TokenKind::Int(v) => (Expr::Int(v), Type::Int),
            TokenKind::Var => (Expr::Var, Type::Int),
            TokenKind::True => (Expr::Bool(true), Type::Bool),
            TokenKind::False => (Expr::Bool(false), Type::Bool),
            TokenKind::LParen => {
                self.bump();
                let inner = self.or()?;
                if self.peek().kind != TokenKind::RParen {
                    return Err(self.error(&["`)`", "operator"]));
                }
                self.bump();
                return Ok(inner);
            }
            _ => return Err(self.error(PRIMARY_START)),
        };
        self.bump();
        Ok(typed)
    }
}

/// Parses predicate source text into a well-typed expression tree.
pub fn parse(source: &str) -> Result<Expr, PredicateError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        source,
        tokens,
        pos: 0,
    };
    let (expr, _) = parser.or()?;
    if parser.peek().kind != TokenKind::End {
        return Err(parser.error(&["operator", "end of input"]));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BinOp::*;

    fn cmp(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::binary(op, l, r)
    }

    #[test]
    fn single_comparison() {
        assert_eq!(parse("x == 3").unwrap(), cmp(Eq, Expr::Var, Expr::Int(3)));
    }

    #[test]
    fn disjunction_of_comparisons() {
        assert_eq!(
            parse("x == 0 || x == 2").unwrap(),
            cmp(
                Or,
                cmp(Eq, Expr::Var, Expr::Int(0)),
                cmp(Eq, Expr::Var, Expr::Int(2))
            )
        );
    }

    #[test]
    fn truncated_comparison_reports_offset_four() {
        match parse("x ==") {
            Err(PredicateError::Syntax {
                offset,
                found,
                expected,
            }) => {
                assert_eq!(offset, 4);
                assert_eq!(found, "end of input");
                assert!(expected.contains(&"integer literal"));
                assert!(expected.contains(&"`x`"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_layers() {
        // && binds tighter than ||
        assert_eq!(
            parse("true || false && false").unwrap(),
            cmp(
                Or,
                Expr::Bool(true),
                cmp(And, Expr::Bool(false), Expr::Bool(false))
            )
        );
        // bitwise binds tighter than comparison
        assert_eq!(
            parse("x & 1 == 1").unwrap(),
            cmp(Eq, cmp(BitAnd, Expr::Var, Expr::Int(1)), Expr::Int(1))
        );
        // shifts bind tighter than &, & tighter than ^, ^ tighter than |
        assert_eq!(
            parse("x | 1 ^ 2 & x << 1 == 0").unwrap(),
            cmp(
                Eq,
                cmp(
                    BitOr,
                    Expr::Var,
                    cmp(
                        BitXor,
                        Expr::Int(1),
                        cmp(BitAnd, Expr::Int(2), cmp(Shl, Expr::Var, Expr::Int(1)))
                    )
                ),
                Expr::Int(0)
            )
        );
        // ! binds tightest
        assert_eq!(
            parse("!true && false").unwrap(),
            cmp(And, Expr::not(Expr::Bool(true)), Expr::Bool(false))
        );
    }

    #[test]
    fn parentheses_override_precedence() {
        assert_eq!(
            parse("(true || false) && false").unwrap(),
            cmp(
                And,
                cmp(Or, Expr::Bool(true), Expr::Bool(false)),
                Expr::Bool(false)
            )
        );
        assert!(matches!(
            parse("(x == 1"),
            Err(PredicateError::Syntax { offset: 7, .. })
        ));
    }

    #[test]
    fn type_errors_carry_operator_offset() {
        assert_eq!(
            parse("x && 1"),
            Err(PredicateError::Type {
                offset: Some(2),
                message: "`&&` expects boolean operands, found integer".into()
            })
        );
        assert!(matches!(
            parse("!x"),
            Err(PredicateError::Type { offset: Some(0), .. })
        ));
        assert!(matches!(
            parse("(x == 1) & 1"),
            Err(PredicateError::Type { offset: Some(9), .. })
        ));
    }

    #[test]
    fn comparisons_do_not_chain() {
        assert!(matches!(
            parse("1 < x < 3"),
            Err(PredicateError::Syntax { offset: 6, .. })
        ));
    }

    #[test]
    fn trailing_garbage() {
        assert!(matches!(
            parse("x == 1 )"),
            Err(PredicateError::Syntax { offset: 7, .. })
        ));
        assert!(matches!(parse(""), Err(PredicateError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn display_round_trips() {
        for src in ["x == 3", "!(x >> 2 != 1) || x & 3 == 2", "true", "x ^ 5 >= 0x10"] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
