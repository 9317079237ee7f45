use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::types::Type;

/// The fixed set of built-in functions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Builtin {
    Fst,
    Snd,
    Uncons,
    Either,
    Concat,
    Map,
    Split,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Fst,
        Builtin::Snd,
        Builtin::Uncons,
        Builtin::Either,
        Builtin::Concat,
        Builtin::Map,
        Builtin::Split,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Fst => "fst",
            Builtin::Snd => "snd",
            Builtin::Uncons => "uncons",
            Builtin::Either => "either",
            Builtin::Concat => "concat",
            Builtin::Map => "map",
            Builtin::Split => "split",
        }
    }

    /// Number of type parameters in the scheme.
    pub fn type_params(self) -> usize {
        match self {
            Builtin::Fst | Builtin::Snd | Builtin::Map => 2,
            Builtin::Either => 3,
            Builtin::Uncons | Builtin::Concat | Builtin::Split => 1,
        }
    }

    /// Number of value arguments consumed before the builtin computes.
    pub fn arity(self) -> usize {
        match self {
            Builtin::Either => 3,
            Builtin::Map => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or(())
    }
}

/// Variable and binder names.
pub type Name = Arc<str>;

/// Elaborated core terms. Every binder, variable, injection, list literal and
/// builtin occurrence carries its type, so the type of a term is determined
/// without inference.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Name, Type),
    Lam(Name, Type, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Unit,
    Pair(Arc<Term>, Arc<Term>),
    /// Left injection; the type is the whole sum.
    Inl(Arc<Term>, Type),
    /// Right injection; the type is the whole sum.
    Inr(Arc<Term>, Type),
    /// List literal; the type is the element type.
    List(Vec<Term>, Type),
    Builtin(Builtin, Vec<Type>),
}

impl Term {
    pub fn var(name: &str, ty: Type) -> Term {
        Term::Var(name.into(), ty)
    }

    pub fn lam(name: &str, ty: Type, body: Term) -> Term {
        Term::Lam(name.into(), ty, Arc::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn pair(fst: Term, snd: Term) -> Term {
        Term::Pair(Arc::new(fst), Arc::new(snd))
    }

    pub fn inl(payload: Term, sum: Type) -> Term {
        Term::Inl(Arc::new(payload), sum)
    }

    pub fn inr(payload: Term, sum: Type) -> Term {
        Term::Inr(Arc::new(payload), sum)
    }

    /// The unit-list of length `k`.
    pub fn numeral(k: usize) -> Term {
        Term::List(vec![Term::Unit; k], Type::Unit)
    }

    /// If this term is a unit-list literal of units, its length.
    pub fn as_numeral(&self) -> Option<usize> {
        match self {
            Term::List(items, Type::Unit) if items.iter().all(|t| *t == Term::Unit) => {
                Some(items.len())
            }
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Free variable names, in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Name> {
        fn go(t: &Term, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
            match t {
                Term::Var(x, _) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                Term::Lam(x, _, body) => {
                    bound.push(x.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                Term::App(a, b) | Term::Pair(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Term::Inl(a, _) | Term::Inr(a, _) => go(a, bound, out),
                Term::List(items, _) => items.iter().for_each(|i| go(i, bound, out)),
                Term::Unit | Term::Builtin(..) => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Number of nodes in the term tree.
    pub fn size(&self) -> usize {
        1 + match self {
            Term::Var(..) | Term::Unit | Term::Builtin(..) => 0,
            Term::Lam(_, _, b) | Term::Inl(b, _) | Term::Inr(b, _) => b.size(),
            Term::App(a, b) | Term::Pair(a, b) => a.size() + b.size(),
            Term::List(items, _) => items.iter().map(Term::size).sum(),
        }
    }

    /// Alpha-equivalence: equal up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn go<'a>(a: &'a Term, b: &'a Term, env: &mut Vec<(&'a Name, &'a Name)>) -> bool {
            match (a, b) {
                (Term::Var(x, tx), Term::Var(y, ty)) => {
                    if tx != ty {
                        return false;
                    }
                    let bx = env.iter().rev().find(|(l, _)| *l == x);
                    let by = env.iter().rev().find(|(_, r)| *r == y);
                    match (bx, by) {
                        // Both bound: must refer to the same binder position.
                        (Some(p), Some(q)) => std::ptr::eq(p, q),
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
                    if tx != ty {
                        return false;
                    }
                    env.push((x, y));
                    let ok = go(bx, by, env);
                    env.pop();
                    ok
                }
                (Term::App(f1, a1), Term::App(f2, a2))
                | (Term::Pair(f1, a1), Term::Pair(f2, a2)) => go(f1, f2, env) && go(a1, a2, env),
                (Term::Inl(a1, t1), Term::Inl(a2, t2)) | (Term::Inr(a1, t1), Term::Inr(a2, t2)) => {
                    t1 == t2 && go(a1, a2, env)
                }
                (Term::List(i1, t1), Term::List(i2, t2)) => {
                    t1 == t2
                        && i1.len() == i2.len()
                        && i1.iter().zip(i2).all(|(a, b)| go(a, b, env))
                }
                (Term::Unit, Term::Unit) => true,
                (Term::Builtin(b1, i1), Term::Builtin(b2, i2)) => b1 == b2 && i1 == i2,
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}
