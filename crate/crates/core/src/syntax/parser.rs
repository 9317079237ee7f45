//! Recursive-descent parser for types and surface terms.
//!
//! ```text
//! type    ::= sum ( "->" type )?
//! sum     ::= prod ( "+" sum )?
//! prod    ::= postfix ( "x" prod )?
//! postfix ::= tatom "*"*
//! tatom   ::= "1" | "(" type ")"
//!
//! term    ::= "\" binder ":" sum "->" term
//!           | app ( "+" "1" )*
//! binder  ::= ident | "(" ident "," ident ")"
//! app     ::= atom atom*
//! atom    ::= ident | builtin ( "@" "[" type ( "," type )* "]" )? | numeral
//!           | "Left" atom | "Right" atom
//!           | "(" ")" | "(" term ")" | "(" term "," term ")" | "(" term ":" type ")"
//!           | "[" ( term ( "," term )* )? "]"
//! ```
//!
//! A binder annotation stops at the lambda's `->`, so a function-typed
//! binder must be parenthesized: `\f:(1 -> 1) -> f ()`.

use std::sync::Arc;

use super::lexer::{tokenize, Tok, Token};
use super::surface::{Binder, SurfaceKind, SurfaceTerm};
use super::term::Builtin;
use super::types::Type;
use super::{Pos, SyntaxError};

/// Largest numeral accepted by the parser; numerals expand to unit lists.
pub const MAX_NUMERAL: u64 = 100_000;

pub fn parse_type(src: &str) -> Result<Type, SyntaxError> {
    let mut p = Parser::new(src)?;
    let ty = p.ty()?;
    p.expect_eof()?;
    Ok(ty)
}

pub fn parse_term(src: &str) -> Result<SurfaceTerm, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn is_reserved(name: &str) -> bool {
    name == "Left" || name == "Right" || name.parse::<Builtin>().is_ok()
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Parser {
            toks: tokenize(src)?,
            i: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub(crate) fn expect_eof(&mut self) -> Result<(), SyntaxError> {
        self.expect(&Tok::Eof)
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> SyntaxError {
        SyntaxError::new(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek()),
        )
    }

    fn is_prod_op(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "x")
    }

    // ---- types ----

    pub(crate) fn ty(&mut self) -> Result<Type, SyntaxError> {
        let dom = self.ty_sum()?;
        if self.eat(&Tok::Arrow) {
            let cod = self.ty()?;
            Ok(Type::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn ty_sum(&mut self) -> Result<Type, SyntaxError> {
        let left = self.ty_prod()?;
        if self.eat(&Tok::Plus) {
            let right = self.ty_sum()?;
            Ok(Type::sum(left, right))
        } else {
            Ok(left)
        }
    }

    fn ty_prod(&mut self) -> Result<Type, SyntaxError> {
        let left = self.ty_postfix()?;
        if self.is_prod_op() {
            self.bump();
            let right = self.ty_prod()?;
            Ok(Type::prod(left, right))
        } else {
            Ok(left)
        }
    }

    fn ty_postfix(&mut self) -> Result<Type, SyntaxError> {
        let mut ty = self.ty_atom()?;
        while self.eat(&Tok::Star) {
            ty = Type::list(ty);
        }
        Ok(ty)
    }

    fn ty_atom(&mut self) -> Result<Type, SyntaxError> {
        match self.peek() {
            Tok::Num(1) => {
                self.bump();
                Ok(Type::Unit)
            }
            Tok::LParen => {
                self.bump();
                let ty = self.ty()?;
                self.expect(&Tok::RParen)?;
                Ok(ty)
            }
            _ => Err(self.unexpected("a type (`1` or `(`)")),
        }
    }

    // ---- terms ----

    fn ident(&mut self) -> Result<Arc<str>, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) if !is_reserved(&name) => {
                self.bump();
                Ok(name.into())
            }
            Tok::Ident(name) => Err(SyntaxError::new(
                self.pos(),
                format!("`{name}` is reserved and cannot be a variable"),
            )),
            _ => Err(self.unexpected("a variable name")),
        }
    }

    fn term(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        let pos = self.pos();
        if self.eat(&Tok::Backslash) {
            let binder = if self.eat(&Tok::LParen) {
                let x = self.ident()?;
                self.expect(&Tok::Comma)?;
                let y = self.ident()?;
                self.expect(&Tok::RParen)?;
                Binder::Pair(x, y)
            } else {
                Binder::Name(self.ident()?)
            };
            self.expect(&Tok::Colon)?;
            let ty = self.ty_sum()?;
            self.expect(&Tok::Arrow)?;
            let body = self.term()?;
            return Ok(SurfaceTerm::new(
                SurfaceKind::Lam(binder, ty, Box::new(body)),
                pos,
            ));
        }
        let mut t = self.app()?;
        while *self.peek() == Tok::Plus {
            let plus = self.pos();
            self.bump();
            if !self.eat(&Tok::Num(1)) {
                return Err(SyntaxError::new(plus, "only `+1` (successor) is supported"));
            }
            t = SurfaceTerm::new(SurfaceKind::Succ(Box::new(t)), pos);
        }
        Ok(t)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Num(_) | Tok::LParen | Tok::LBracket
        )
    }

    fn app(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        let pos = self.pos();
        let mut t = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            t = SurfaceTerm::new(SurfaceKind::App(Box::new(t), Box::new(arg)), pos);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Ident(name) if name == "Left" || name == "Right" => {
                self.bump();
                let payload = Box::new(self.atom()?);
                if name == "Left" {
                    SurfaceKind::Left(payload)
                } else {
                    SurfaceKind::Right(payload)
                }
            }
            Tok::Ident(name) => {
                if let Ok(b) = name.parse::<Builtin>() {
                    self.bump();
                    let inst = if self.eat(&Tok::At) {
                        self.expect(&Tok::LBracket)?;
                        let mut tys = vec![self.ty()?];
                        while self.eat(&Tok::Comma) {
                            tys.push(self.ty()?);
                        }
                        self.expect(&Tok::RBracket)?;
                        Some(tys)
                    } else {
                        None
                    };
                    SurfaceKind::Builtin(b, inst)
                } else {
                    SurfaceKind::Var(self.ident()?)
                }
            }
            Tok::Num(n) => {
                if n > MAX_NUMERAL {
                    return Err(SyntaxError::new(
                        pos,
                        format!("numeral {n} exceeds the limit of {MAX_NUMERAL}"),
                    ));
                }
                self.bump();
                SurfaceKind::Numeral(n as usize)
            }
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    SurfaceKind::Unit
                } else {
                    let first = self.term()?;
                    match self.peek() {
                        Tok::RParen => {
                            self.bump();
                            return Ok(first);
                        }
                        Tok::Comma => {
                            self.bump();
                            let second = self.term()?;
                            self.expect(&Tok::RParen)?;
                            SurfaceKind::Pair(Box::new(first), Box::new(second))
                        }
                        Tok::Colon => {
                            self.bump();
                            let ty = self.ty()?;
                            self.expect(&Tok::RParen)?;
                            SurfaceKind::Ascribe(Box::new(first), ty)
                        }
                        _ => return Err(self.unexpected("`)`, `,` or `:`")),
                    }
                }
            }
            Tok::LBracket => {
                self.bump();
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    items.push(self.term()?);
                    while self.eat(&Tok::Comma) {
                        items.push(self.term()?);
                    }
                    self.expect(&Tok::RBracket)?;
                }
                SurfaceKind::List(items)
            }
            _ => return Err(self.unexpected("a term")),
        };
        Ok(SurfaceTerm::new(kind, pos))
    }

    /// Lookahead used by the value-literal parser to tell `()` from `(v, w)`.
    pub(crate) fn at_unit(&self) -> bool {
        *self.peek() == Tok::LParen && *self.peek_at(1) == Tok::RParen
    }
}
