use super::term::{Builtin, Name};
use super::types::Type;
use super::Pos;

#[derive(Clone, PartialEq, Debug)]
pub enum Binder {
    Name(Name),
    /// `\(x, y):A x B -> M`
    Pair(Name, Name),
}

/// Parse tree of the surface language. Sugar (numerals, successor, pair
/// binders, unannotated injections) is still present here.
#[derive(Clone, PartialEq, Debug)]
pub struct SurfaceTerm {
    pub kind: SurfaceKind,
    pub pos: Pos,
}

#[derive(Clone, PartialEq, Debug)]
pub enum SurfaceKind {
    Var(Name),
    Builtin(Builtin, Option<Vec<Type>>),
    Lam(Binder, Type, Box<SurfaceTerm>),
    App(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Unit,
    Pair(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Left(Box<SurfaceTerm>),
    Right(Box<SurfaceTerm>),
    List(Vec<SurfaceTerm>),
    Ascribe(Box<SurfaceTerm>, Type),
    Numeral(usize),
    /// `M+1`
    Succ(Box<SurfaceTerm>),
}

impl SurfaceTerm {
    pub fn new(kind: SurfaceKind, pos: Pos) -> Self {
        SurfaceTerm { kind, pos }
    }
}
