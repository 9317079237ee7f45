//! Abstract syntax of types and terms, the textual surface syntax, and
//! desugaring into the core calculus.

mod desugar;
mod lexer;
mod parser;
mod print;
mod surface;
mod term;
mod types;

use std::fmt;

pub use desugar::{desugar, fresh_name, PreKind, PreTerm};
pub use parser::{is_reserved, parse_term, parse_type, MAX_NUMERAL};
pub use print::print_term;
pub use surface::{Binder, SurfaceKind, SurfaceTerm};
pub use term::{Builtin, Name, Term};
pub use types::Type;

pub(crate) use lexer::Tok;
pub(crate) use parser::Parser;

/// 1-based source position. Line 0 marks generated code with no source.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str("<generated>")
        } else {
            write!(f, "{}:{}", self.line, self.col)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("{pos}: syntax error: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

/// Parses and desugars a whole `.plam` program.
pub fn parse_program(src: &str) -> Result<PreTerm, SyntaxError> {
    parse_term(src).map(|s| desugar(&s))
}
