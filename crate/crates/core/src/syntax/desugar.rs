//! Desugaring of surface terms into pre-terms: core syntax whose injections,
//! list literals and builtins may still lack type annotations. The typechecker
//! turns a pre-term into an elaborated [`Term`].

use std::collections::HashSet;

use super::surface::{Binder, SurfaceKind, SurfaceTerm};
use super::term::{Builtin, Name, Term};
use super::types::Type;
use super::Pos;
use crate::stdlib;

#[derive(Clone, PartialEq, Debug)]
pub struct PreTerm {
    pub kind: PreKind,
    pub pos: Pos,
}

#[derive(Clone, PartialEq, Debug)]
pub enum PreKind {
    Var(Name),
    Lam(Name, Type, Box<PreTerm>),
    App(Box<PreTerm>, Box<PreTerm>),
    Unit,
    Pair(Box<PreTerm>, Box<PreTerm>),
    /// Optional annotation is the whole sum type.
    Inl(Box<PreTerm>, Option<Type>),
    Inr(Box<PreTerm>, Option<Type>),
    /// Optional annotation is the element type.
    List(Vec<PreTerm>, Option<Type>),
    Builtin(Builtin, Option<Vec<Type>>),
    /// Expected type supplied by an ascription.
    Ann(Box<PreTerm>, Type),
    /// An already elaborated term.
    Core(Term),
}

impl PreTerm {
    pub fn at(kind: PreKind, pos: Pos) -> Self {
        PreTerm { kind, pos }
    }

    fn gen(kind: PreKind) -> Self {
        PreTerm {
            kind,
            pos: Pos::default(),
        }
    }

    pub fn var(name: &str) -> Self {
        Self::gen(PreKind::Var(name.into()))
    }

    pub fn lam(name: &str, ty: Type, body: PreTerm) -> Self {
        Self::gen(PreKind::Lam(name.into(), ty, Box::new(body)))
    }

    pub fn app(fun: PreTerm, arg: PreTerm) -> Self {
        Self::gen(PreKind::App(Box::new(fun), Box::new(arg)))
    }

    pub fn apps(fun: PreTerm, args: impl IntoIterator<Item = PreTerm>) -> Self {
        args.into_iter().fold(fun, PreTerm::app)
    }

    pub fn unit() -> Self {
        Self::gen(PreKind::Unit)
    }

    pub fn pair(a: PreTerm, b: PreTerm) -> Self {
        Self::gen(PreKind::Pair(Box::new(a), Box::new(b)))
    }

    pub fn inl(payload: PreTerm) -> Self {
        Self::gen(PreKind::Inl(Box::new(payload), None))
    }

    pub fn inr(payload: PreTerm) -> Self {
        Self::gen(PreKind::Inr(Box::new(payload), None))
    }

    pub fn list(items: Vec<PreTerm>) -> Self {
        Self::gen(PreKind::List(items, None))
    }

    pub fn builtin(b: Builtin) -> Self {
        Self::gen(PreKind::Builtin(b, None))
    }

    pub fn ann(self, ty: Type) -> Self {
        Self::gen(PreKind::Ann(Box::new(self), ty))
    }

    pub fn core(t: Term) -> Self {
        Self::gen(PreKind::Core(t))
    }

    fn collect_names(&self, out: &mut HashSet<Name>) {
        match &self.kind {
            PreKind::Var(x) => {
                out.insert(x.clone());
            }
            PreKind::Lam(x, _, b) => {
                out.insert(x.clone());
                b.collect_names(out);
            }
            PreKind::App(a, b) | PreKind::Pair(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            PreKind::Inl(a, _) | PreKind::Inr(a, _) | PreKind::Ann(a, _) => a.collect_names(out),
            PreKind::List(items, _) => items.iter().for_each(|i| i.collect_names(out)),
            PreKind::Core(t) => collect_core_names(t, out),
            PreKind::Unit | PreKind::Builtin(..) => {}
        }
    }

    /// Simultaneous substitution of terms for free variables. The caller
    /// guarantees that the replacements' free variables are not bound in `self`.
    fn subst(self, map: &[(Name, PreTerm)]) -> PreTerm {
        let pos = self.pos;
        let kind = match self.kind {
            PreKind::Var(x) => match map.iter().find(|(y, _)| *y == x) {
                Some((_, r)) => return r.clone(),
                None => PreKind::Var(x),
            },
            PreKind::Lam(x, ty, body) => {
                let inner: Vec<_> = map.iter().filter(|(y, _)| *y != x).cloned().collect();
                PreKind::Lam(x, ty, Box::new(body.subst(&inner)))
            }
            PreKind::App(a, b) => PreKind::App(Box::new(a.subst(map)), Box::new(b.subst(map))),
            PreKind::Pair(a, b) => PreKind::Pair(Box::new(a.subst(map)), Box::new(b.subst(map))),
            PreKind::Inl(a, t) => PreKind::Inl(Box::new(a.subst(map)), t),
            PreKind::Inr(a, t) => PreKind::Inr(Box::new(a.subst(map)), t),
            PreKind::Ann(a, t) => PreKind::Ann(Box::new(a.subst(map)), t),
            PreKind::List(items, t) => {
                PreKind::List(items.into_iter().map(|i| i.subst(map)).collect(), t)
            }
            // Embedded core terms are closed in every place they are produced.
            k @ (PreKind::Unit | PreKind::Builtin(..) | PreKind::Core(_)) => k,
        };
        PreTerm { kind, pos }
    }
}

fn collect_core_names(t: &Term, out: &mut HashSet<Name>) {
    match t {
        Term::Var(x, _) => {
            out.insert(x.clone());
        }
        Term::Lam(x, _, b) => {
            out.insert(x.clone());
            collect_core_names(b, out);
        }
        Term::App(a, b) | Term::Pair(a, b) => {
            collect_core_names(a, out);
            collect_core_names(b, out);
        }
        Term::Inl(a, _) | Term::Inr(a, _) => collect_core_names(a, out),
        Term::List(items, _) => items.iter().for_each(|i| collect_core_names(i, out)),
        Term::Unit | Term::Builtin(..) => {}
    }
}

/// Picks a name based on `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &HashSet<Name>) -> Name {
    if !avoid.contains(base) {
        return base.into();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !avoid.contains(n.as_str()))
        .expect("unbounded supply of names")
        .into()
}

/// Removes surface sugar.
///
/// - numeral `k` becomes the unit-list of length `k`;
/// - `M+1` becomes the successor function applied to `M`;
/// - `\(x,y):A -> M` becomes `\p:A -> M[x := fst p, y := snd p]` for fresh `p`;
/// - `(M : A)` becomes an annotation node consumed by the typechecker.
pub fn desugar(s: &SurfaceTerm) -> PreTerm {
    let pos = s.pos;
    let kind = match &s.kind {
        SurfaceKind::Var(x) => PreKind::Var(x.clone()),
        SurfaceKind::Builtin(b, inst) => PreKind::Builtin(*b, inst.clone()),
        SurfaceKind::Lam(Binder::Name(x), ty, body) => {
            PreKind::Lam(x.clone(), ty.clone(), Box::new(desugar(body)))
        }
        SurfaceKind::Lam(Binder::Pair(x, y), ty, body) => {
            let body = desugar(body);
            let mut avoid = HashSet::new();
            body.collect_names(&mut avoid);
            avoid.insert(x.clone());
            avoid.insert(y.clone());
            let p = fresh_name("p", &avoid);
            let proj = |b: Builtin| {
                PreTerm::at(
                    PreKind::App(
                        Box::new(PreTerm::at(PreKind::Builtin(b, None), pos)),
                        Box::new(PreTerm::at(PreKind::Var(p.clone()), pos)),
                    ),
                    pos,
                )
            };
            // When x = y the pattern shadows, so y wins.
            let mut map = vec![(y.clone(), proj(Builtin::Snd))];
            if x != y {
                map.push((x.clone(), proj(Builtin::Fst)));
            }
            PreKind::Lam(p, ty.clone(), Box::new(body.subst(&map)))
        }
        SurfaceKind::App(f, a) => PreKind::App(Box::new(desugar(f)), Box::new(desugar(a))),
        SurfaceKind::Unit => PreKind::Unit,
        SurfaceKind::Pair(a, b) => PreKind::Pair(Box::new(desugar(a)), Box::new(desugar(b))),
        SurfaceKind::Left(a) => PreKind::Inl(Box::new(desugar(a)), None),
        SurfaceKind::Right(a) => PreKind::Inr(Box::new(desugar(a)), None),
        SurfaceKind::List(items) => PreKind::List(items.iter().map(desugar).collect(), None),
        SurfaceKind::Ascribe(a, ty) => PreKind::Ann(Box::new(desugar(a)), ty.clone()),
        SurfaceKind::Numeral(k) => PreKind::List(
            (0..*k).map(|_| PreTerm::at(PreKind::Unit, pos)).collect(),
            Some(Type::Unit),
        ),
        SurfaceKind::Succ(m) => PreKind::App(
            Box::new(PreTerm::at(PreKind::Core(stdlib::mk_succ()), pos)),
            Box::new(desugar(m)),
        ),
    };
    PreTerm { kind, pos }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn ds(src: &str) -> PreTerm {
        desugar(&parse_term(src).unwrap())
    }

    #[test]
    fn pair_binder_becomes_projections() {
        let t = ds("\\(n, t):1* x 1 -> n");
        let PreKind::Lam(p, ty, body) = t.kind else {
            panic!()
        };
        assert_eq!(&*p, "p");
        assert_eq!(ty, Type::prod(Type::nat(), Type::Unit));
        let PreKind::App(f, a) = body.kind else {
            panic!()
        };
        assert_eq!(f.kind, PreKind::Builtin(Builtin::Fst, None));
        assert_eq!(a.kind, PreKind::Var("p".into()));
    }

    #[test]
    fn pair_binder_avoids_capture() {
        // `p` is used in the body, so the fresh binder must differ.
        let t = ds("\\(a, b):1 x 1 -> \\p:1 -> (a, p)");
        let PreKind::Lam(p, _, _) = t.kind else {
            panic!()
        };
        assert_eq!(&*p, "p1");
    }

    #[test]
    fn pair_binder_respects_shadowing() {
        let t = ds("\\(a, b):1 x 1 -> \\a:1 -> a");
        let PreKind::Lam(_, _, body) = t.kind else {
            panic!()
        };
        let PreKind::Lam(_, _, inner) = body.kind else {
            panic!()
        };
        assert_eq!(inner.kind, PreKind::Var("a".into()));
    }

    #[test]
    fn numerals_expand() {
        assert_eq!(ds("0").kind, PreKind::List(vec![], Some(Type::Unit)));
        let PreKind::List(items, Some(Type::Unit)) = ds("3").kind else {
            panic!()
        };
        assert_eq!(items.len(), 3);
        assert!(items.iter().all(|i| i.kind == PreKind::Unit));
    }

    #[test]
    fn successor_uses_stdlib_term() {
        let PreKind::App(f, a) = ds("n+1").kind else {
            panic!()
        };
        assert_eq!(f.kind, PreKind::Core(stdlib::mk_succ()));
        assert_eq!(a.kind, PreKind::Var("n".into()));
    }

    #[test]
    fn injections_stay_unannotated() {
        assert!(matches!(ds("Left ()").kind, PreKind::Inl(_, None)));
        assert!(matches!(ds("(Right () : 1+1)").kind, PreKind::Ann(..)));
    }
}
