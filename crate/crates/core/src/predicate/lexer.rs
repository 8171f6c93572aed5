use super::PredicateError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Int(u64),
    Var,
    True,
    False,
    LParen,
    RParen,
    Not,
    Op(super::BinOp),
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub offset: usize,
    pub len: usize,
}

impl Token {
    pub fn describe(&self, source: &str) -> String {
        match self.kind {
            TokenKind::End => "end of input".to_string(),
            _ => format!("`{}`", &source[self.offset..self.offset + self.len]),
        }
    }
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, PredicateError> {
    use super::BinOp::*;

    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let two = bytes.get(pos..pos + 2);
        let (kind, len) = match (c, two) {
            (_, Some(b"==")) => (TokenKind::Op(Eq), 2),
            (_, Some(b"!=")) => (TokenKind::Op(Ne), 2),
            (_, Some(b"<=")) => (TokenKind::Op(Le), 2),
            (_, Some(b">=")) => (TokenKind::Op(Ge), 2),
            (_, Some(b"<<")) => (TokenKind::Op(Shl), 2),
            (_, Some(b">>")) => (TokenKind::Op(Shr), 2),
            (_, Some(b"&&")) => (TokenKind::Op(And), 2),
            (_, Some(b"||")) => (TokenKind::Op(Or), 2),
            (b'<', _) => (TokenKind::Op(Lt), 1),
            (b'>', _) => (TokenKind::Op(Gt), 1),
            (b'&', _) => (TokenKind::Op(BitAnd), 1),
            (b'|', _) => (TokenKind::Op(BitOr), 1),
            (b'^', _) => (TokenKind::Op(BitXor), 1),
            (b'!', _) => (TokenKind::Not, 1),
            (b'(', _) => (TokenKind::LParen, 1),
            (b')', _) => (TokenKind::RParen, 1),
            (b'0'..=b'9', _) => lex_number(source, start)?,
            (c, _) if c.is_ascii_alphabetic() || c == b'_' => {
                let end = source[start..]
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .map_or(source.len(), |e| start + e);
                let kind = match &source[start..end] {
                    "x" => TokenKind::Var,
                    "true" => TokenKind::True,
                    "false" => TokenKind::False,
                    other => {
                        return Err(PredicateError::UnknownIdentifier {
                            offset: start,
                            name: other.to_string(),
                        })
                    }
                };
                (kind, end - start)
            }
            _ => {
                let ch = source[start..].chars().next().unwrap_or('?');
                return Err(PredicateError::Syntax {
                    offset: start,
                    found: format!("`{ch}`"),
                    expected: vec!["a token"],
                });
            }
        };
        tokens.push(Token {
            kind,
            offset: start,
            len,
        });
        pos += len;
    }
    tokens.push(Token {
        kind: TokenKind::End,
        offset: source.len(),
        len: 0,
    });
    Ok(tokens)
}

/// Decimal, `0x` hexadecimal or `0b` binary literal.
fn lex_number(source: &str, start: usize) -> Result<(TokenKind, usize), PredicateError> {
    let rest = &source[start..];
    let (radix, prefix) = if rest.starts_with("0x") || rest.starts_with("0X") {
        (16, 2)
    } else if rest.starts_with("0b") || rest.starts_with("0B") {
        (2, 2)
    } else {
        (10, 0)
    };
    let digits_len = rest[prefix..]
        .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
        .unwrap_or(rest.len() - prefix);
    let digits = &rest[prefix..prefix + digits_len];
    let cleaned: String = digits.chars().filter(|&c| c != '_').collect();
    let value = u64::from_str_radix(&cleaned, radix).map_err(|e| {
        use std::num::IntErrorKind;
        match e.kind() {
            IntErrorKind::PosOverflow => PredicateError::LiteralOverflow { offset: start },
            _ => PredicateError::Syntax {
                offset: start,
                found: format!("`{}`", &rest[..prefix + digits_len]),
                expected: vec!["integer literal"],
            },
        }
    })?;
    Ok((TokenKind::Int(value), prefix + digits_len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicate::BinOp;

    #[test]
    fn lexes_operators_and_offsets() {
        let toks = tokenize("x<=0x1f && !true").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.kind.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                TokenKind::Var,
                TokenKind::Op(BinOp::Le),
                TokenKind::Int(31),
                TokenKind::Op(BinOp::And),
                TokenKind::Not,
                TokenKind::True,
                TokenKind::End,
            ]
        );
        assert_eq!(toks[2].offset, 3);
        assert_eq!(toks.last().unwrap().offset, 16);
    }

    #[test]
    fn rejects_unknown_identifiers_and_characters() {
        assert_eq!(
            tokenize("x == y"),
            Err(PredicateError::UnknownIdentifier {
                offset: 5,
                name: "y".into()
            })
        );
        assert!(matches!(
            tokenize("x @ 1"),
            Err(PredicateError::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn literal_overflow() {
        assert_eq!(
            tokenize("x == 18446744073709551616"),
            Err(PredicateError::LiteralOverflow { offset: 5 })
        );
        assert!(tokenize("x == 18446744073709551615").is_ok());
        assert!(tokenize("x == 0b102").is_err());
    }
}
