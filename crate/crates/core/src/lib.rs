//! The polyregular lambda-calculus: a simply typed lambda-calculus with unit,
//! product, sum, list and function types, a fixed set of list builtins, and
//! no recursion.
//!
//! Besides the language pipeline (parse, desugar, elaborate, evaluate) this
//! crate reduces tiling instances to the equivalence of two order-2 programs,
//! checks equivalence on bounded inputs, and solves small tiling instances by
//! brute force so the reduction can be cross-checked.

pub mod equiv;
pub mod semantics;
pub mod stdlib;
pub mod syntax;
pub mod tiling;
pub mod typing;

use syntax::{SyntaxError, Term, Type};
use typing::{Context, TypeError};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

impl Error {
    pub fn pos(&self) -> syntax::Pos {
        match self {
            Error::Syntax(e) => e.pos,
            Error::Type(e) => e.pos,
        }
    }
}

/// Parses, desugars and elaborates a closed program, inferring its type.
pub fn elaborate_program(src: &str) -> Result<(Term, Type), Error> {
    let pre = syntax::parse_program(src)?;
    Ok(typing::infer(&Context::new(), &pre)?)
}

/// Like [`elaborate_program`], checking against a known type.
pub fn elaborate_program_at(src: &str, ty: &Type) -> Result<Term, Error> {
    let pre = syntax::parse_program(src)?;
    Ok(typing::check(&Context::new(), &pre, ty)?)
}
