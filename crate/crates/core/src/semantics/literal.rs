//! Value literals: `()`, `(v,w)`, `L v`, `R v`, `[v1,...,vn]`, and numerals at `1*`.

use super::Value;
use crate::syntax::{Parser, SyntaxError, Tok, Type};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum LiteralError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("function-typed arguments ({0}) cannot be written as literals")]
    Unsupported(Type),
}

/// Parses a literal of type `ty`. The type drives the parse, so numerals are
/// accepted exactly where a `1*` is expected.
pub fn parse_value(src: &str, ty: &Type) -> Result<Value, LiteralError> {
    if !ty.is_arrow_free() {
        return Err(LiteralError::Unsupported(ty.clone()));
    }
    let mut p = Parser::new(src)?;
    let v = value(&mut p, ty)?;
    p.expect_eof()?;
    Ok(v)
}

fn value(p: &mut Parser, ty: &Type) -> Result<Value, SyntaxError> {
    // Redundant parentheses around an injection or list.
    if matches!(ty, Type::Sum(..) | Type::List(_)) && *p.peek() == Tok::LParen {
        p.bump();
        let v = value(p, ty)?;
        p.expect(&Tok::RParen)?;
        return Ok(v);
    }
    match ty {
        Type::Unit => {
            if !p.at_unit() {
                return Err(p.unexpected("`()`"));
            }
            p.bump();
            p.bump();
            Ok(Value::Unit)
        }
        Type::Prod(a, b) => {
            p.expect(&Tok::LParen)?;
            let x = value(p, a)?;
            p.expect(&Tok::Comma)?;
            let y = value(p, b)?;
            p.expect(&Tok::RParen)?;
            Ok(Value::pair(x, y))
        }
        Type::Sum(a, b) => match p.peek().clone() {
            Tok::Ident(tag) if tag == "L" || tag == "Left" => {
                p.bump();
                Ok(Value::inl(value(p, a)?))
            }
            Tok::Ident(tag) if tag == "R" || tag == "Right" => {
                p.bump();
                Ok(Value::inr(value(p, b)?))
            }
            _ => Err(p.unexpected(&format!("`L` or `R` (a value of {ty})"))),
        },
        Type::List(elem) => {
            if let (Tok::Num(k), Type::Unit) = (p.peek().clone(), &**elem) {
                if k > crate::syntax::MAX_NUMERAL {
                    return Err(SyntaxError::new(
                        p.pos(),
                        format!("numeral {k} is too large"),
                    ));
                }
                p.bump();
                return Ok(Value::nat(k as usize));
            }
            p.expect(&Tok::LBracket)?;
            let mut items = Vec::new();
            if !p.eat(&Tok::RBracket) {
                items.push(value(p, elem)?);
                while p.eat(&Tok::Comma) {
                    items.push(value(p, elem)?);
                }
                p.expect(&Tok::RBracket)?;
            }
            Ok(Value::list(items))
        }
        Type::Arrow(..) => unreachable!("arrow types are rejected up front"),
    }
}
