use std::fmt;

/// Binary operators of the predicate language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    BitAnd,
    BitOr,
    BitXor,
    Shl,
    Shr,
    And,
    Or,
}

/// Static type of a predicate sub-expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Int,
    Bool,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Int => "integer",
            Type::Bool => "boolean",
        })
    }
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::BitAnd => "&",
            BinOp::BitOr => "|",
            BinOp::BitXor => "^",
            BinOp::Shl => "<<",
            BinOp::Shr => ">>",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    /// `(operand type, result type)`.
    pub fn signature(self) -> (Type, Type) {
        match self {
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => {
                (Type::Int, Type::Bool)
            }
            BinOp::BitAnd | BinOp::BitOr | BinOp::BitXor | BinOp::Shl | BinOp::Shr => {
                (Type::Int, Type::Int)
            }
            BinOp::And | BinOp::Or => (Type::Bool, Type::Bool),
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge
        )
    }
}

/// Parsed predicate over the single free variable `x`, the integer value of
/// the control register.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(u64),
    Var,
    Bool(bool),
    Not(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Expr) -> Expr {
        Expr::Not(Box::new(inner))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Int(_) | Expr::Var | Expr::Bool(_) => 1,
            Expr::Not(e) => 1 + e.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Infers the type of the expression, rejecting ill-typed operands.
    pub fn infer_type(&self) -> Result<Type, String> {
        match self {
            Expr::Int(_) | Expr::Var => Ok(Type::Int),
            Expr::Bool(_) => Ok(Type::Bool),
            Expr::Not(e) => match e.infer_type()? {
                Type::Bool => Ok(Type::Bool),
                Type::Int => Err("`!` expects a boolean operand, found integer".into()),
            },
            Expr::Binary(op, l, r) => {
                let (want, out) = op.signature();
                for side in [l, r] {
                    let got = side.infer_type()?;
                    if got != want {
                        return Err(format!(
                            "`{}` expects {want} operands, found {got}",
                            op.symbol()
                        ));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Renders fully parenthesized source that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var => f.write_str("x"),
            Expr::Bool(b) => write!(f, "{b}"),
            Expr::Not(e) => write!(f, "!({e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}
