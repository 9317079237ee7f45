//! Church-style bidirectional typechecking and elaboration.
//!
//! `check` pushes an expected type into a pre-term and `infer` synthesizes
//! one. Both return the elaborated [`Term`], in which every injection, list
//! literal and builtin carries its concrete type. Builtin applications are
//! elaborated as a spine: the scheme's parameters are solved by matching
//! argument types (and the expected result type) against the scheme, and
//! arguments that cannot be inferred on their own are checked once the
//! parameters they depend on are known.

use std::fmt;

use crate::syntax::{Builtin, Name, Pos, PreKind, PreTerm, Term, Type};

/// Typing context: variables with their declared types, innermost last.
#[derive(Clone, Default, Debug)]
pub struct Context {
    entries: Vec<(Name, Type)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, ty: Type) -> Self {
        self.entries.push((name.into(), ty));
        self
    }

    pub fn lookup(&self, name: &str) -> Option<&Type> {
        self.entries
            .iter()
            .rev()
            .find(|(x, _)| &**x == name)
            .map(|(_, t)| t)
    }

    fn push(&mut self, name: Name, ty: Type) {
        self.entries.push((name, ty));
    }

    fn pop(&mut self) {
        self.entries.pop();
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum TypeErrorKind {
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(Name),
    #[error("cannot determine {0}; add a type ascription")]
    Ambiguous(String),
    #[error("expression of type {0} is applied to an argument but is not a function")]
    NotAFunction(Type),
    #[error("builtin `{builtin}` takes {expected} type argument(s), got {found}")]
    BadInstantiation {
        builtin: Builtin,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("{pos}: {kind}")]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub pos: Pos,
}

impl TypeError {
    fn new(kind: TypeErrorKind, pos: Pos) -> Self {
        TypeError { kind, pos }
    }

    fn mismatch(expected: impl fmt::Display, found: impl fmt::Display, pos: Pos) -> Self {
        Self::new(
            TypeErrorKind::Mismatch {
                expected: expected.to_string(),
                found: found.to_string(),
            },
            pos,
        )
    }

    fn ambiguous(what: impl Into<String>, pos: Pos) -> Self {
        Self::new(TypeErrorKind::Ambiguous(what.into()), pos)
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(self.kind, TypeErrorKind::Ambiguous(_))
    }
}

/// Type skeleton of a builtin scheme; `Param(i)` is the i-th type parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Skeleton {
    Param(usize),
    Unit,
    Prod(Box<Skeleton>, Box<Skeleton>),
    Sum(Box<Skeleton>, Box<Skeleton>),
    List(Box<Skeleton>),
    Arrow(Box<Skeleton>, Box<Skeleton>),
}

impl Skeleton {
    fn prod(a: Skeleton, b: Skeleton) -> Self {
        Skeleton::Prod(Box::new(a), Box::new(b))
    }
    fn sum(a: Skeleton, b: Skeleton) -> Self {
        Skeleton::Sum(Box::new(a), Box::new(b))
    }
    fn list(a: Skeleton) -> Self {
        Skeleton::List(Box::new(a))
    }
    fn arrow(a: Skeleton, b: Skeleton) -> Self {
        Skeleton::Arrow(Box::new(a), Box::new(b))
    }

    /// Substitutes solved parameters; `None` if any parameter is unsolved.
    pub fn resolve(&self, solved: &[Option<Type>]) -> Option<Type> {
        Some(match self {
            Skeleton::Param(i) => solved[*i].clone()?,
            Skeleton::Unit => Type::Unit,
            Skeleton::Prod(a, b) => Type::prod(a.resolve(solved)?, b.resolve(solved)?),
            Skeleton::Sum(a, b) => Type::sum(a.resolve(solved)?, b.resolve(solved)?),
            Skeleton::List(a) => Type::list(a.resolve(solved)?),
            Skeleton::Arrow(a, b) => Type::arrow(a.resolve(solved)?, b.resolve(solved)?),
        })
    }

    /// One-sided matching against a concrete type, extending `solved`.
    fn unify(&self, ty: &Type, solved: &mut [Option<Type>]) -> bool {
        match (self, ty) {
            (Skeleton::Param(i), _) => match &solved[*i] {
                Some(known) => known == ty,
                None => {
                    solved[*i] = Some(ty.clone());
                    true
                }
            },
            (Skeleton::Unit, Type::Unit) => true,
            (Skeleton::Prod(a, b), Type::Prod(x, y))
            | (Skeleton::Sum(a, b), Type::Sum(x, y))
            | (Skeleton::Arrow(a, b), Type::Arrow(x, y)) => {
                a.unify(x, solved) && b.unify(y, solved)
            }
            (Skeleton::List(a), Type::List(x)) => a.unify(x, solved),
            _ => false,
        }
    }

    fn display<'a>(&'a self, solved: &'a [Option<Type>]) -> SkeletonDisplay<'a> {
        SkeletonDisplay { skel: self, solved }
    }
}

fn s_display<'a>(skel: &'a Skeleton, solved: &'a [Option<Type>]) -> SkeletonDisplay<'a> {
    SkeletonDisplay { skel, solved }
}

struct SkeletonDisplay<'a> {
    skel: &'a Skeleton,
    solved: &'a [Option<Type>],
}

impl fmt::Display for SkeletonDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ty) = self.skel.resolve(self.solved) {
            return write!(f, "{ty}");
        }
        let sub = |s| s_display(s, self.solved);
        // Unsolved parts are shown as `?A`, `?B`, ...; always parenthesized.
        match self.skel {
            Skeleton::Param(i) => write!(f, "?{}", (b'A' + *i as u8) as char),
            Skeleton::Unit => f.write_str("1"),
            Skeleton::Prod(a, b) => write!(f, "({} x {})", sub(a), sub(b)),
            Skeleton::Sum(a, b) => write!(f, "({}+{})", sub(a), sub(b)),
            Skeleton::List(a) => write!(f, "({})*", sub(a)),
            Skeleton::Arrow(a, b) => write!(f, "({} -> {})", sub(a), sub(b)),
        }
    }
}

/// A builtin's polymorphic type.
#[derive(Clone, Debug)]
pub struct BuiltinScheme {
    pub builtin: Builtin,
    pub params: usize,
    pub skeleton: Skeleton,
}

/// ```text
/// fst    : A x B -> A
/// snd    : A x B -> B
/// uncons : A* -> 1 + A x A*
/// either : (A -> C) -> (B -> C) -> A + B -> C
/// concat : A** -> A*
/// map    : (A -> B) -> A* -> B*
/// split  : A* -> (A* x (A x A*))*
/// ```
pub fn scheme(b: Builtin) -> BuiltinScheme {
    use Skeleton as S;
    let p = S::Param;
    let skeleton = match b {
        Builtin::Fst => S::arrow(S::prod(p(0), p(1)), p(0)),
        Builtin::Snd => S::arrow(S::prod(p(0), p(1)), p(1)),
        Builtin::Uncons => S::arrow(S::list(p(0)), S::sum(S::Unit, S::prod(p(0), S::list(p(0))))),
        Builtin::Either => S::arrow(
            S::arrow(p(0), p(2)),
            S::arrow(S::arrow(p(1), p(2)), S::arrow(S::sum(p(0), p(1)), p(2))),
        ),
        Builtin::Concat => S::arrow(S::list(S::list(p(0))), S::list(p(0))),
        Builtin::Map => S::arrow(S::arrow(p(0), p(1)), S::arrow(S::list(p(0)), S::list(p(1)))),
        Builtin::Split => S::arrow(
            S::list(p(0)),
            S::list(S::prod(S::list(p(0)), S::prod(p(0), S::list(p(0))))),
        ),
    };
    BuiltinScheme {
        builtin: b,
        params: b.type_params(),
        skeleton,
    }
}

/// The type of builtin `b` at instantiation `inst`, or `None` on an arity mismatch.
pub fn instantiate(b: Builtin, inst: &[Type]) -> Option<Type> {
    let s = scheme(b);
    if inst.len() != s.params {
        return None;
    }
    let solved: Vec<Option<Type>> = inst.iter().cloned().map(Some).collect();
    s.skeleton.resolve(&solved)
}

/// Elaborates `t` against `expected`.
pub fn check(ctx: &Context, t: &PreTerm, expected: &Type) -> Result<Term, TypeError> {
    Elab { ctx: ctx.clone() }.check(t, expected)
}

/// Elaborates `t`, synthesizing its type.
pub fn infer(ctx: &Context, t: &PreTerm) -> Result<(Term, Type), TypeError> {
    Elab { ctx: ctx.clone() }.infer(t)
}

/// Typechecks an already elaborated term, returning its type. Every
/// annotation is taken at face value and verified for consistency.
pub fn type_of(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    let mut ctx = ctx.clone();
    core_type(&mut ctx, t)
}

fn core_type(ctx: &mut Context, t: &Term) -> Result<Type, TypeError> {
    let pos = Pos::default();
    let expect = |expected: &Type, found: &Type| {
        if expected == found {
            Ok(())
        } else {
            Err(TypeError::mismatch(expected, found, pos))
        }
    };
    match t {
        Term::Var(x, ty) => {
            let declared = ctx
                .lookup(x)
                .ok_or_else(|| TypeError::new(TypeErrorKind::UnknownVariable(x.clone()), pos))?;
            expect(declared, ty)?;
            Ok(ty.clone())
        }
        Term::Lam(x, ty, body) => {
            ctx.push(x.clone(), ty.clone());
            let cod = core_type(ctx, body);
            ctx.pop();
            Ok(Type::arrow(ty.clone(), cod?))
        }
        Term::App(f, a) => {
            let fty = core_type(ctx, f)?;
            let aty = core_type(ctx, a)?;
            match fty {
                Type::Arrow(dom, cod) => {
                    expect(&dom, &aty)?;
                    Ok((*cod).clone())
                }
                other => Err(TypeError::new(TypeErrorKind::NotAFunction(other), pos)),
            }
        }
        Term::Unit => Ok(Type::Unit),
        Term::Pair(a, b) => Ok(Type::prod(core_type(ctx, a)?, core_type(ctx, b)?)),
        Term::Inl(a, ty) | Term::Inr(a, ty) => {
            let Type::Sum(l, r) = ty else {
                return Err(TypeError::mismatch("a sum type", ty, pos));
            };
            let payload = core_type(ctx, a)?;
            expect(if matches!(t, Term::Inl(..)) { l } else { r }, &payload)?;
            Ok(ty.clone())
        }
        Term::List(items, elem) => {
            for item in items {
                let ity = core_type(ctx, item)?;
                expect(elem, &ity)?;
            }
            Ok(Type::list(elem.clone()))
        }
        Term::Builtin(b, inst) => instantiate(*b, inst).ok_or_else(|| {
            TypeError::new(
                TypeErrorKind::BadInstantiation {
                    builtin: *b,
                    expected: b.type_params(),
                    found: inst.len(),
                },
                pos,
            )
        }),
    }
}

/// Instantiates `b` so that its first argument has type `arg`, if that
/// determines every parameter.
fn builtin_at_argument(b: Builtin, arg: &Type) -> Option<(Term, Type)> {
    let s = scheme(b);
    let Skeleton::Arrow(dom, _) = &s.skeleton else {
        return None;
    };
    let mut solved = vec![None; s.params];
    if !dom.unify(arg, &mut solved) {
        return None;
    }
    let ty = s.skeleton.resolve(&solved)?;
    let inst = solved.into_iter().collect::<Option<Vec<_>>>()?;
    Some((Term::Builtin(b, inst), ty))
}

struct Elab {
    ctx: Context,
}

/// Flattens `f a1 ... an` into the head and its arguments.
fn spine(t: &PreTerm) -> (&PreTerm, Vec<&PreTerm>) {
    let mut args = Vec::new();
    let mut head = t;
    while let PreKind::App(f, a) = &head.kind {
        args.push(&**a);
        head = f;
    }
    args.reverse();
    (head, args)
}

impl Elab {
    fn check(&mut self, t: &PreTerm, expected: &Type) -> Result<Term, TypeError> {
        let pos = t.pos;
        match (&t.kind, expected) {
            (PreKind::Lam(x, dom, body), Type::Arrow(edom, ecod)) => {
                if dom != &**edom {
                    return Err(TypeError::mismatch(
                        expected,
                        format!("{} -> ...", dom.display_binder()),
                        pos,
                    ));
                }
                self.ctx.push(x.clone(), dom.clone());
                let body = self.check(body, ecod);
                self.ctx.pop();
                Ok(Term::Lam(x.clone(), dom.clone(), body?.into()))
            }
            (PreKind::Lam(x, dom, _), _) => Err(TypeError::mismatch(
                expected,
                format!("\\{x}:{} -> ...", dom.display_binder()),
                pos,
            )),
            (PreKind::Pair(a, b), Type::Prod(l, r)) => {
                Ok(Term::pair(self.check(a, l)?, self.check(b, r)?))
            }
            (PreKind::Inl(a, ann), Type::Sum(l, _)) | (PreKind::Inr(a, ann), Type::Sum(_, l)) => {
                if let Some(ann) = ann {
                    if ann != expected {
                        return Err(TypeError::mismatch(expected, ann, pos));
                    }
                }
                let payload = self.check(a, l)?;
                Ok(if matches!(t.kind, PreKind::Inl(..)) {
                    Term::inl(payload, expected.clone())
                } else {
                    Term::inr(payload, expected.clone())
                })
            }
            (PreKind::Inl(..) | PreKind::Inr(..), _) => Err(TypeError::mismatch(
                expected,
                "an injection into a sum",
                pos,
            )),
            (PreKind::List(items, ann), Type::List(elem)) => {
                if let Some(ann) = ann {
                    if ann != &**elem {
                        return Err(TypeError::mismatch(expected, Type::list(ann.clone()), pos));
                    }
                }
                let items = items
                    .iter()
                    .map(|i| self.check(i, elem))
                    .collect::<Result<_, _>>()?;
                Ok(Term::List(items, (**elem).clone()))
            }
            (PreKind::List(..), _) => Err(TypeError::mismatch(expected, "a list literal", pos)),
            (PreKind::App(..) | PreKind::Builtin(..), _) => {
                let (head, args) = spine(t);
                if let PreKind::Builtin(b, inst) = &head.kind {
                    let (term, _) =
                        self.builtin_spine(*b, inst.as_deref(), head.pos, &args, Some(expected))?;
                    Ok(term)
                } else {
                    self.check_by_inference(t, expected)
                }
            }
            _ => self.check_by_inference(t, expected),
        }
    }

    fn check_by_inference(&mut self, t: &PreTerm, expected: &Type) -> Result<Term, TypeError> {
        let (term, found) = self.infer(t)?;
        if &found == expected {
            Ok(term)
        } else {
            Err(TypeError::mismatch(expected, found, t.pos))
        }
    }

    fn infer(&mut self, t: &PreTerm) -> Result<(Term, Type), TypeError> {
        let pos = t.pos;
        match &t.kind {
            PreKind::Var(x) => match self.ctx.lookup(x) {
                Some(ty) => Ok((Term::Var(x.clone(), ty.clone()), ty.clone())),
                None => Err(TypeError::new(
                    TypeErrorKind::UnknownVariable(x.clone()),
                    pos,
                )),
            },
            PreKind::Lam(x, dom, body) => {
                self.ctx.push(x.clone(), dom.clone());
                let body = self.infer(body);
                self.ctx.pop();
                let (body, cod) = body?;
                Ok((
                    Term::Lam(x.clone(), dom.clone(), body.into()),
                    Type::arrow(dom.clone(), cod),
                ))
            }
            PreKind::App(..) | PreKind::Builtin(..) => {
                let (head, args) = spine(t);
                if let PreKind::Builtin(b, inst) = &head.kind {
                    return self.builtin_spine(*b, inst.as_deref(), head.pos, &args, None);
                }
                let (mut term, mut ty) = self.infer(head)?;
                for arg in args {
                    (term, ty) = self.apply(term, ty, arg)?;
                }
                Ok((term, ty))
            }
            PreKind::Unit => Ok((Term::Unit, Type::Unit)),
            PreKind::Pair(a, b) => {
                let (a, at) = self.infer(a)?;
                let (b, bt) = self.infer(b)?;
                Ok((Term::pair(a, b), Type::prod(at, bt)))
            }
            PreKind::Inl(_, Some(ty)) | PreKind::Inr(_, Some(ty)) => {
                Ok((self.check(t, ty)?, ty.clone()))
            }
            PreKind::Inl(_, None) => Err(TypeError::ambiguous(
                "the type of this `Left` injection",
                pos,
            )),
            PreKind::Inr(_, None) => Err(TypeError::ambiguous(
                "the type of this `Right` injection",
                pos,
            )),
            PreKind::List(_, Some(elem)) => {
                let ty = Type::list(elem.clone());
                Ok((self.check(t, &ty)?, ty))
            }
            PreKind::List(items, None) => {
                for item in items {
                    match self.infer(item) {
                        Ok((_, elem)) => {
                            let ty = Type::list(elem);
                            return Ok((self.check(t, &ty)?, ty));
                        }
                        Err(e) if e.is_ambiguous() => continue,
                        Err(e) => return Err(e),
                    }
                }
                Err(TypeError::ambiguous("the element type of this list", pos))
            }
            PreKind::Ann(inner, ty) => Ok((self.check(inner, ty)?, ty.clone())),
            PreKind::Core(term) => {
                let ty = core_type(&mut self.ctx, term).map_err(|e| TypeError { pos, ..e })?;
                Ok((term.clone(), ty))
            }
        }
    }

    fn apply(&mut self, fun: Term, fty: Type, arg: &PreTerm) -> Result<(Term, Type), TypeError> {
        match fty {
            Type::Arrow(dom, cod) => {
                let arg = self.check(arg, &dom)?;
                Ok((Term::app(fun, arg), (*cod).clone()))
            }
            other => Err(TypeError::new(TypeErrorKind::NotAFunction(other), arg.pos)),
        }
    }

    fn builtin_spine(
        &mut self,
        b: Builtin,
        inst: Option<&[Type]>,
        pos: Pos,
        args: &[&PreTerm],
        expected: Option<&Type>,
    ) -> Result<(Term, Type), TypeError> {
        let scheme = scheme(b);
        let mut solved: Vec<Option<Type>> = vec![None; scheme.params];
        if let Some(inst) = inst {
            if inst.len() != scheme.params {
                return Err(TypeError::new(
                    TypeErrorKind::BadInstantiation {
                        builtin: b,
                        expected: scheme.params,
                        found: inst.len(),
                    },
                    pos,
                ));
            }
            for (slot, ty) in solved.iter_mut().zip(inst) {
                *slot = Some(ty.clone());
            }
        }

        // Peel off the arrows consumed by the scheme's own arguments.
        let consumed = args.len().min(b.arity());
        let mut doms = Vec::with_capacity(consumed);
        let mut rest = &scheme.skeleton;
        for _ in 0..consumed {
            let Skeleton::Arrow(d, c) = rest else {
                unreachable!("scheme arity exceeds its arrows")
            };
            doms.push(&**d);
            rest = c;
        }

        if consumed == args.len() {
            if let Some(expected) = expected {
                if !rest.unify(expected, &mut solved) {
                    return Err(TypeError::mismatch(expected, rest.display(&solved), pos));
                }
            }
        }

        let mut elaborated: Vec<Option<Term>> = vec![None; consumed];
        let mut pending: Vec<usize> = (0..consumed).collect();
        while !pending.is_empty() {
            let known_before = solved.iter().flatten().count();
            let mut still = Vec::new();
            for &i in &pending {
                let arg = args[i];
                // A lambda's binder annotation fixes the domain of its arrow.
                if let (PreKind::Lam(_, binder, _), Skeleton::Arrow(d, _)) = (&arg.kind, doms[i]) {
                    if !d.unify(binder, &mut solved) {
                        return Err(TypeError::mismatch(
                            doms[i].display(&solved),
                            format!("{} -> ...", binder.display_binder()),
                            arg.pos,
                        ));
                    }
                }
                if let Some(dom) = doms[i].resolve(&solved) {
                    elaborated[i] = Some(self.check(arg, &dom)?);
                    continue;
                }
                // A bare builtin passed as a function, e.g. `map fst xs`: its own
                // parameters follow from the argument type once that is known.
                if let (PreKind::Builtin(g, None), Skeleton::Arrow(d, _)) = (&arg.kind, doms[i]) {
                    if let Some(arg_ty) = d.resolve(&solved) {
                        if let Some((term, ty)) = builtin_at_argument(*g, &arg_ty) {
                            if !doms[i].unify(&ty, &mut solved) {
                                return Err(TypeError::mismatch(
                                    doms[i].display(&solved),
                                    ty,
                                    arg.pos,
                                ));
                            }
                            elaborated[i] = Some(term);
                            continue;
                        }
                    }
                }
                match self.infer(arg) {
                    Ok((term, ty)) => {
                        if !doms[i].unify(&ty, &mut solved) {
                            return Err(TypeError::mismatch(doms[i].display(&solved), ty, arg.pos));
                        }
                        elaborated[i] = Some(term);
                    }
                    Err(e) if e.is_ambiguous() => still.push(i),
                    Err(e) => return Err(e),
                }
            }
            if still.len() == pending.len() && solved.iter().flatten().count() == known_before {
                return Err(TypeError::ambiguous(
                    format!("the type arguments of `{b}`"),
                    pos,
                ));
            }
            pending = still;
        }

        let inst: Vec<Type> = solved
            .iter()
            .cloned()
            .collect::<Option<_>>()
            .ok_or_else(|| TypeError::ambiguous(format!("the type arguments of `{b}`"), pos))?;
        let mut ty = rest.resolve(&solved).expect("all parameters are solved");
        let mut term = Term::apps(
            Term::Builtin(b, inst),
            elaborated
                .into_iter()
                .map(|t| t.expect("every argument elaborated")),
        );
        for arg in &args[consumed..] {
            (term, ty) = self.apply(term, ty, arg)?;
        }
        if consumed < args.len() {
            if let Some(expected) = expected {
                if &ty != expected {
                    return Err(TypeError::mismatch(expected, ty, pos));
                }
            }
        }
        Ok((term, ty))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn pre(src: &str) -> PreTerm {
        parse_program(src).unwrap()
    }

    fn ty(src: &str) -> Type {
        crate::syntax::parse_type(src).unwrap()
    }

    fn infer_str(src: &str) -> Result<(Term, Type), TypeError> {
        infer(&Context::new(), &pre(src))
    }

    #[test]
    fn square_elaborates_with_instantiations() {
        let square = pre("\\w:1* -> concat (map (\\c:1 -> w) w)");
        let term = check(&Context::new(), &square, &ty("1* -> 1*")).unwrap();
        // Golden elaboration, written out by hand.
        let w = || Term::var("w", Type::nat());
        let expected = Term::lam(
            "w",
            Type::nat(),
            Term::app(
                Term::Builtin(Builtin::Concat, vec![Type::Unit]),
                Term::apps(
                    Term::Builtin(Builtin::Map, vec![Type::Unit, Type::nat()]),
                    [Term::lam("c", Type::Unit, w()), w()],
                ),
            ),
        );
        assert_eq!(term, expected);
        assert_eq!(type_of(&Context::new(), &term).unwrap(), ty("1* -> 1*"));
    }

    #[test]
    fn mismatch_is_reported() {
        let err = check(&Context::new(), &pre("\\x:1 -> x"), &ty("1 -> 1+1")).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::Mismatch { .. }), "{err}");
        assert_eq!(err.pos, Pos { line: 1, col: 9 });
    }

    #[test]
    fn ambiguity_is_reported() {
        assert!(infer_str("[]").unwrap_err().is_ambiguous());
        assert!(infer_str("fst").unwrap_err().is_ambiguous());
        assert!(infer_str("Left ()").unwrap_err().is_ambiguous());
        assert!(
            infer_str("\\x:1 -> either (\\u:1 -> []) (\\u:1 -> []) (Left ())")
                .unwrap_err()
                .is_ambiguous()
        );
    }

    #[test]
    fn unknown_variable() {
        let err = infer_str("\\x:1 -> y").unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnknownVariable("y".into()));
    }

    #[test]
    fn simple_inference() {
        assert_eq!(infer_str("\\w:1* -> w").unwrap().1, ty("1* -> 1*"));
        assert_eq!(infer_str("(Left () : 1+1)").unwrap().1, Type::bool());
        assert_eq!(
            infer_str("[Left (), (Right () : 1+1)]").unwrap().1,
            ty("(1+1)*")
        );
        assert_eq!(infer_str("3").unwrap().1, Type::nat());
        assert_eq!(infer_str("\\n:1* -> n+1").unwrap().1, ty("1* -> 1*"));
    }

    #[test]
    fn deferred_arguments_are_checked_after_solving() {
        let src = "\\p:(1 -> 1+1) -> \\l:1* -> \
                   concat (map (\\y:1 -> either (\\u:1 -> []) (\\u:1 -> [y]) (p y)) l)";
        let (_, t) = infer_str(src).unwrap();
        assert_eq!(t, ty("(1 -> 1+1) -> 1* -> 1*"));
    }

    #[test]
    fn expected_type_solves_parameters() {
        let t = check(&Context::new(), &pre("fst"), &ty("1 x 1* -> 1")).unwrap();
        assert_eq!(
            t,
            Term::Builtin(Builtin::Fst, vec![Type::Unit, Type::nat()])
        );
        let t = check(
            &Context::new(),
            &pre("either (\\u:1 -> []) (\\u:1 -> []) (Left ())"),
            &ty("1*"),
        );
        // The second binder fixes the right summand.
        assert_eq!(type_of(&Context::new(), &t.unwrap()).unwrap(), Type::nat());
        assert!(infer_str("uncons []").unwrap_err().is_ambiguous());
        let t = check(
            &Context::new(),
            &pre("either (\\u:1 -> []) (\\u:1 x 1 -> []) (Left ())"),
            &ty("1*"),
        )
        .unwrap();
        assert_eq!(type_of(&Context::new(), &t).unwrap(), Type::nat());
    }

    #[test]
    fn explicit_instantiation() {
        let (t, tyy) = infer_str("map @[1, 1*]").unwrap();
        assert_eq!(tyy, ty("(1 -> 1*) -> 1* -> 1**"));
        assert_eq!(
            t,
            Term::Builtin(Builtin::Map, vec![Type::Unit, Type::nat()])
        );
        let err = infer_str("map @[1]").unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::BadInstantiation { .. }));
    }

    #[test]
    fn over_application_of_builtin() {
        let src = "either (\\u:1 -> \\v:1 -> v) (\\u:1 -> \\v:1 -> v) (Left () : 1+1) ()";
        let (_, t) = infer_str(src).unwrap();
        assert_eq!(t, Type::Unit);
    }

    #[test]
    fn not_a_function() {
        let err = infer_str("() ()").unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::NotAFunction(Type::Unit));
    }

    #[test]
    fn context_shadowing() {
        let ctx = Context::new().with("x", Type::Unit).with("x", Type::nat());
        assert_eq!(ctx.lookup("x"), Some(&Type::nat()));
        let (_, t) = infer(&ctx, &pre("x")).unwrap();
        assert_eq!(t, Type::nat());
        let (_, t) = infer_str("\\x:1 -> \\x:1* -> x").unwrap();
        assert_eq!(t, ty("1 -> 1* -> 1*"));
    }

    #[test]
    fn scheme_display() {
        let split = instantiate(Builtin::Split, &[Type::Unit]).unwrap();
        assert_eq!(split.to_string(), "1* -> (1* x 1 x 1*)*");
        let uncons = instantiate(Builtin::Uncons, &[Type::bool()]).unwrap();
        assert_eq!(uncons.to_string(), "(1+1)* -> 1+(1+1) x (1+1)*");
        assert!(instantiate(Builtin::Either, &[Type::Unit]).is_none());
    }

    #[test]
    fn core_type_rejects_inconsistent_annotations() {
        let bad = Term::lam("x", Type::Unit, Term::var("x", Type::nat()));
        assert!(type_of(&Context::new(), &bad).is_err());
        let bad = Term::inl(Term::Unit, Type::nat());
        assert!(type_of(&Context::new(), &bad).is_err());
    }
}
