//! Generators for closed, recursion-free terms used by the reduction and the
//! examples: booleans, successor, `range`, `all`, squaring, marked squaring,
//! and a compiler from finite function tables to nested `either` dispatch.
//!
//! Generators may recurse over types while building a term; the terms
//! themselves only use the calculus's constructs.

use crate::semantics::{finite_values, value_eq, value_to_term, Value};
use crate::syntax::{Builtin, PreTerm, Term, Type};
use crate::typing::{self, Context};

#[derive(Clone, Debug, thiserror::Error)]
pub enum StdlibError {
    #[error("type {0} is not finite (it contains a list or an arrow)")]
    NotFinite(Type),
    #[error("table has no entry for {0}")]
    Missing(Value),
    #[error("table has more than one entry for {0}")]
    Duplicate(Value),
    #[error("table value {value} is not of type {ty}")]
    IllTyped { value: Value, ty: Type },
}

fn elaborate(pre: PreTerm, ty: &Type) -> Term {
    typing::check(&Context::new(), &pre, ty)
        .unwrap_or_else(|e| panic!("generated term does not elaborate at {ty}: {e}"))
}

fn var(x: &str) -> PreTerm {
    PreTerm::var(x)
}

fn lam(x: &str, ty: &Type, body: PreTerm) -> PreTerm {
    PreTerm::lam(x, ty.clone(), body)
}

fn call(b: Builtin, args: impl IntoIterator<Item = PreTerm>) -> PreTerm {
    PreTerm::apps(PreTerm::builtin(b), args)
}

fn app(f: PreTerm, args: impl IntoIterator<Item = PreTerm>) -> PreTerm {
    PreTerm::apps(f, args)
}

/// `Left ()`, the boolean true.
pub fn true_term() -> Term {
    Term::inl(Term::Unit, Type::bool())
}

/// `Right ()`, the boolean false.
pub fn false_term() -> Term {
    Term::inr(Term::Unit, Type::bool())
}

/// `\a:1+1 -> \b:1+1 -> either (\u:1 -> b) (\u:1 -> false) a`
pub fn mk_and() -> Term {
    let bool_ty = Type::bool();
    let body = call(
        Builtin::Either,
        [
            lam("u", &Type::Unit, var("b")),
            lam("u", &Type::Unit, PreTerm::core(false_term())),
            var("a"),
        ],
    );
    elaborate(
        lam("a", &bool_ty, lam("b", &bool_ty, body)),
        &Type::arrows([bool_ty.clone(), bool_ty.clone()], bool_ty),
    )
}

pub struct BoolTerms {
    pub tru: Term,
    pub fls: Term,
    pub and: Term,
}

pub fn mk_bool() -> BoolTerms {
    BoolTerms {
        tru: true_term(),
        fls: false_term(),
        and: mk_and(),
    }
}

/// `\x:A -> \xs:A* -> concat [[x], xs]`
pub fn mk_cons(elem: &Type) -> Term {
    let list = Type::list(elem.clone());
    let body = call(
        Builtin::Concat,
        [PreTerm::list(vec![
            PreTerm::list(vec![var("x")]),
            var("xs"),
        ])],
    );
    elaborate(
        lam("x", elem, lam("xs", &list, body)),
        &Type::arrows([elem.clone(), list.clone()], list),
    )
}

/// Successor on unary naturals: `\m:1* -> concat [[()], m]`.
///
/// Built directly rather than through the elaborator because desugaring of
/// `M+1` depends on it.
pub fn mk_succ() -> Term {
    let nat = Type::nat();
    Term::lam(
        "m",
        nat.clone(),
        Term::app(
            Term::Builtin(Builtin::Concat, vec![Type::Unit]),
            Term::List(vec![Term::numeral(1), Term::var("m", nat.clone())], nat),
        ),
    )
}

/// `\n:1* -> map fst (split n)`, mapping `n` to `[0, 1, ..., n-1]`.
pub fn mk_range() -> Term {
    let nat = Type::nat();
    let body = call(
        Builtin::Map,
        [
            PreTerm::builtin(Builtin::Fst),
            call(Builtin::Split, [var("n")]),
        ],
    );
    elaborate(
        lam("n", &nat, body),
        &Type::arrow(nat.clone(), Type::list(nat)),
    )
}

/// `all : (A -> 1+1) -> A* -> 1+1`.
///
/// Keeps the elements on which the predicate is false and tests the remaining
/// list for emptiness with `uncons`.
pub fn mk_all(elem: &Type) -> Term {
    let bool_ty = Type::bool();
    let pred = Type::arrow(elem.clone(), bool_ty.clone());
    let list = Type::list(elem.clone());
    let keep_false = lam(
        "y",
        elem,
        call(
            Builtin::Either,
            [
                lam("u", &Type::Unit, PreTerm::list(vec![]).ann(list.clone())),
                lam("u", &Type::Unit, PreTerm::list(vec![var("y")])),
                app(var("p"), [var("y")]),
            ],
        ),
    );
    let rejected = call(
        Builtin::Concat,
        [call(Builtin::Map, [keep_false, var("l")])],
    );
    let is_empty = call(
        Builtin::Either,
        [
            lam("u", &Type::Unit, PreTerm::core(true_term())),
            lam(
                "c",
                &Type::prod(elem.clone(), list.clone()),
                PreTerm::core(false_term()),
            ),
            call(Builtin::Uncons, [rejected]),
        ],
    );
    elaborate(
        lam("p", &pred, lam("l", &list, is_empty)),
        &Type::arrows([pred.clone(), list], bool_ty),
    )
}

/// `\w:A* -> concat (map (\c:A -> w) w)`, computing `w` repeated `|w|` times.
pub fn mk_square(elem: &Type) -> Term {
    let list = Type::list(elem.clone());
    let body = call(
        Builtin::Concat,
        [call(Builtin::Map, [lam("c", elem, var("w")), var("w")])],
    );
    elaborate(lam("w", &list, body), &Type::arrow(list.clone(), list))
}

/// Marked squaring `A* -> (A+A)*`: for each position `i` of the input, a copy
/// of the input in which position `i` is `Right` and every other letter `Left`.
pub fn mk_marked_square(elem: &Type) -> Term {
    let list = Type::list(elem.clone());
    let marked = Type::sum(elem.clone(), elem.clone());
    let triple = Type::prod(list.clone(), Type::prod(elem.clone(), list.clone()));
    let unmarked = |xs: PreTerm| {
        call(
            Builtin::Map,
            [
                lam("c", elem, PreTerm::inl(var("c")).ann(marked.clone())),
                xs,
            ],
        )
    };
    let block = call(
        Builtin::Concat,
        [PreTerm::list(vec![
            unmarked(call(Builtin::Fst, [var("s")])),
            PreTerm::list(vec![PreTerm::inr(call(
                Builtin::Fst,
                [call(Builtin::Snd, [var("s")])],
            ))
            .ann(marked.clone())]),
            unmarked(call(Builtin::Snd, [call(Builtin::Snd, [var("s")])])),
        ])],
    );
    let body = call(
        Builtin::Concat,
        [call(
            Builtin::Map,
            [lam("s", &triple, block), call(Builtin::Split, [var("w")])],
        )],
    );
    elaborate(
        lam("w", &list, body),
        &Type::arrow(list, Type::list(marked)),
    )
}

/// A total function between finite types, given by its graph.
#[derive(Clone, Debug)]
pub struct FiniteFunTable {
    domain: Type,
    codomain: Type,
    entries: Vec<(Value, Value)>,
}

impl FiniteFunTable {
    /// Validates that `entries` covers every domain value exactly once and
    /// that every output belongs to the codomain.
    pub fn new(
        domain: Type,
        codomain: Type,
        entries: Vec<(Value, Value)>,
    ) -> Result<Self, StdlibError> {
        let all = finite_values(&domain).ok_or_else(|| StdlibError::NotFinite(domain.clone()))?;
        if !codomain.is_finite() {
            return Err(StdlibError::NotFinite(codomain));
        }
        for (k, v) in &entries {
            if !k.conforms(&domain) {
                return Err(StdlibError::IllTyped {
                    value: k.clone(),
                    ty: domain,
                });
            }
            if !v.conforms(&codomain) {
                return Err(StdlibError::IllTyped {
                    value: v.clone(),
                    ty: codomain,
                });
            }
        }
        for a in &all {
            let hits = entries
                .iter()
                .filter(|(k, _)| value_eq(k, a).expect("finite values are comparable"))
                .count();
            match hits {
                0 => return Err(StdlibError::Missing(a.clone())),
                1 => {}
                _ => return Err(StdlibError::Duplicate(a.clone())),
            }
        }
        Ok(FiniteFunTable {
            domain,
            codomain,
            entries,
        })
    }

    /// Tabulates `f` over the whole domain.
    pub fn from_fn(
        domain: Type,
        codomain: Type,
        f: impl Fn(&Value) -> Value,
    ) -> Result<Self, StdlibError> {
        let all = finite_values(&domain).ok_or_else(|| StdlibError::NotFinite(domain.clone()))?;
        let entries = all.into_iter().map(|a| {
            let b = f(&a);
            (a, b)
        });
        Self::new(domain, codomain, entries.collect())
    }

    pub fn domain(&self) -> &Type {
        &self.domain
    }

    pub fn codomain(&self) -> &Type {
        &self.codomain
    }

    pub fn entries(&self) -> &[(Value, Value)] {
        &self.entries
    }

    pub fn get(&self, key: &Value) -> Option<&Value> {
        self.entries
            .iter()
            .find(|(k, _)| value_eq(k, key).unwrap_or(false))
            .map(|(_, v)| v)
    }
}

#[derive(Clone, Copy)]
enum Step {
    Fst,
    Snd,
    Left,
    Right,
}

fn value_at<'a>(v: &'a Value, path: &[Step]) -> &'a Value {
    path.iter().fold(v, |v, step| match (step, v) {
        (Step::Fst, Value::Pair(a, _)) | (Step::Snd, Value::Pair(_, a)) => a,
        (Step::Left, Value::Inl(a)) | (Step::Right, Value::Inr(a)) => a,
        _ => unreachable!("path follows the domain type"),
    })
}

/// A component of the argument still to be inspected: the term that computes
/// it, its type, and where it sits inside the whole argument.
#[derive(Clone)]
struct Scrutinee {
    term: Term,
    ty: Type,
    path: Vec<Step>,
}

impl Scrutinee {
    fn extend(&self, term: Term, ty: Type, step: Step) -> Scrutinee {
        let mut path = self.path.clone();
        path.push(step);
        Scrutinee { term, ty, path }
    }
}

/// Compiles a finite table into a closed term of type `A -> B` that inspects
/// its argument with `fst`/`snd`/`either` and returns constants of `B`.
pub fn mk_finite_fun(table: &FiniteFunTable) -> Term {
    let domain = table.domain.clone();
    let arg = Scrutinee {
        term: Term::var("x0", domain.clone()),
        ty: domain.clone(),
        path: Vec::new(),
    };
    let candidates: Vec<&(Value, Value)> = table.entries.iter().collect();
    let mut fresh = 1;
    let body = dispatch(vec![arg], candidates, &table.codomain, &mut fresh);
    Term::lam("x0", domain, body)
}

fn dispatch(
    mut pending: Vec<Scrutinee>,
    candidates: Vec<&(Value, Value)>,
    codomain: &Type,
    fresh: &mut usize,
) -> Term {
    let first_out = &candidates[0].1;
    if candidates
        .iter()
        .all(|(_, out)| value_eq(out, first_out).expect("finite values are comparable"))
    {
        return value_to_term(first_out, codomain).expect("output conforms to the codomain");
    }
    let next = pending.remove(0);
    match &next.ty {
        Type::Unit => dispatch(pending, candidates, codomain, fresh),
        Type::Prod(l, r) => {
            let inst = vec![(**l).clone(), (**r).clone()];
            let fst = Term::app(Term::Builtin(Builtin::Fst, inst.clone()), next.term.clone());
            let snd = Term::app(Term::Builtin(Builtin::Snd, inst), next.term.clone());
            pending.insert(0, next.extend(snd, (**r).clone(), Step::Snd));
            pending.insert(0, next.extend(fst, (**l).clone(), Step::Fst));
            dispatch(pending, candidates, codomain, fresh)
        }
        Type::Sum(l, r) => {
            let mut branch = |side: &Type, step: Step| {
                let name = format!("x{fresh}");
                *fresh += 1;
                let here: Vec<_> = candidates
                    .iter()
                    .copied()
                    .filter(|(dom, _)| {
                        let v = value_at(dom, &next.path);
                        matches!(
                            (step, v),
                            (Step::Left, Value::Inl(_)) | (Step::Right, Value::Inr(_))
                        )
                    })
                    .collect();
                let mut rest =
                    vec![next.extend(Term::var(&name, side.clone()), side.clone(), step)];
                rest.extend(pending.iter().cloned());
                Term::lam(&name, side.clone(), dispatch(rest, here, codomain, fresh))
            };
            let on_left = branch(l, Step::Left);
            let on_right = branch(r, Step::Right);
            Term::apps(
                Term::Builtin(
                    Builtin::Either,
                    vec![(**l).clone(), (**r).clone(), codomain.clone()],
                ),
                [on_left, on_right, next.term.clone()],
            )
        }
        Type::List(_) | Type::Arrow(..) => unreachable!("domain is finite"),
    }
}

/// Compiles `table` after checking that its domain and codomain are finite.
pub fn compile_finite_fun(
    domain: Type,
    codomain: Type,
    f: impl Fn(&Value) -> Value,
) -> Result<Term, StdlibError> {
    Ok(mk_finite_fun(&FiniteFunTable::from_fn(
        domain, codomain, f,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{apply, apply_all, eval_closed};
    use crate::typing::type_of;

    fn run(t: &Term, args: Vec<Value>) -> Value {
        apply_all(&eval_closed(t).unwrap(), args).unwrap()
    }

    fn closed_type(t: &Term) -> Type {
        assert!(t.is_closed());
        type_of(&Context::new(), t).unwrap()
    }

    #[test]
    fn and_truth_table() {
        let b = mk_bool();
        assert_eq!(closed_type(&b.and).to_string(), "1+1 -> 1+1 -> 1+1");
        for x in [true, false] {
            for y in [true, false] {
                let out = run(&b.and, vec![Value::truth(x), Value::truth(y)]);
                assert_eq!(out.as_bool(), Some(x && y));
            }
        }
        assert_eq!(eval_closed(&b.tru).unwrap().as_bool(), Some(true));
        assert_eq!(eval_closed(&b.fls).unwrap().as_bool(), Some(false));
    }

    #[test]
    fn succ_and_cons() {
        let succ = mk_succ();
        assert_eq!(closed_type(&succ).to_string(), "1* -> 1*");
        for k in 0..5 {
            assert_eq!(run(&succ, vec![Value::nat(k)]).as_nat(), Some(k + 1));
        }
        let cons = mk_cons(&Type::bool());
        assert_eq!(closed_type(&cons).to_string(), "1+1 -> (1+1)* -> (1+1)*");
        let out = run(
            &cons,
            vec![Value::truth(true), Value::list(vec![Value::truth(false)])],
        );
        assert_eq!(out.to_string(), "[L (),R ()]");
    }

    #[test]
    fn range_counts_up() {
        let range = mk_range();
        assert_eq!(closed_type(&range).to_string(), "1* -> 1**");
        assert_eq!(run(&range, vec![Value::nat(0)]).to_string(), "[]");
        let three = run(&range, vec![Value::nat(3)]);
        let lens: Vec<_> = three
            .as_list()
            .unwrap()
            .iter()
            .map(|v| v.as_nat().unwrap())
            .collect();
        assert_eq!(lens, vec![0, 1, 2]);
    }

    #[test]
    fn all_over_booleans() {
        let all = mk_all(&Type::bool());
        assert_eq!(
            closed_type(&all).to_string(),
            "(1+1 -> 1+1) -> (1+1)* -> 1+1"
        );
        let is_true =
            eval_closed(&Term::lam("b", Type::bool(), Term::var("b", Type::bool()))).unwrap();
        let f = apply(&eval_closed(&all).unwrap(), is_true).unwrap();
        let check = |xs: &[bool]| {
            let l = Value::list(xs.iter().map(|&b| Value::truth(b)).collect());
            apply(&f, l).unwrap().as_bool().unwrap()
        };
        assert!(check(&[]));
        assert!(!check(&[true, false]));
        assert!(check(&[true, true]));
    }

    #[test]
    fn square_small_cases() {
        let sq = mk_square(&Type::bool());
        assert_eq!(closed_type(&sq).to_string(), "(1+1)* -> (1+1)*");
        assert_eq!(run(&sq, vec![Value::list(vec![])]).to_string(), "[]");
        let one = Value::list(vec![Value::truth(false)]);
        assert_eq!(run(&sq, vec![one.clone()]).to_string(), one.to_string());
        let w = Value::list(vec![
            Value::truth(true),
            Value::truth(false),
            Value::truth(false),
        ]);
        let out = run(&sq, vec![w]);
        assert_eq!(out.as_list().unwrap().len(), 9);
        assert_eq!(
            out.to_string(),
            "[L (),R (),R (),L (),R (),R (),L (),R (),R ()]"
        );
    }

    #[test]
    fn marked_square_small_cases() {
        let ms = mk_marked_square(&Type::Unit);
        assert_eq!(closed_type(&ms).to_string(), "1* -> (1+1)*");
        assert_eq!(run(&ms, vec![Value::nat(0)]).to_string(), "[]");
        assert_eq!(run(&ms, vec![Value::nat(1)]).to_string(), "[R ()]");
        assert_eq!(
            run(&ms, vec![Value::nat(2)]).to_string(),
            "[R (),L (),L (),R ()]"
        );
    }

    #[test]
    fn finite_fun_identity_on_bool() {
        let t = compile_finite_fun(Type::bool(), Type::bool(), |v| v.clone()).unwrap();
        assert_eq!(closed_type(&t).to_string(), "1+1 -> 1+1");
        for b in [true, false] {
            assert_eq!(run(&t, vec![Value::truth(b)]).as_bool(), Some(b));
        }
    }

    #[test]
    fn finite_fun_equality_on_three_tiles() {
        let t3 = Type::units(3);
        let dom = Type::prod(t3.clone(), t3.clone());
        let eq = compile_finite_fun(dom.clone(), Type::bool(), |v| {
            let Value::Pair(a, b) = v else { unreachable!() };
            Value::truth(value_eq(a, b).unwrap())
        })
        .unwrap();
        assert_eq!(closed_type(&eq), Type::arrow(dom.clone(), Type::bool()));
        let f = eval_closed(&eq).unwrap();
        let all = finite_values(&dom).unwrap();
        assert_eq!(all.len(), 9);
        for v in all {
            let Value::Pair(a, b) = &v else {
                unreachable!()
            };
            let expected = value_eq(a, b).unwrap();
            assert_eq!(apply(&f, v.clone()).unwrap().as_bool(), Some(expected));
        }
    }

    #[test]
    fn finite_fun_rejects_bad_tables() {
        assert!(matches!(
            FiniteFunTable::new(Type::nat(), Type::Unit, vec![]),
            Err(StdlibError::NotFinite(_))
        ));
        assert!(matches!(
            FiniteFunTable::new(
                Type::bool(),
                Type::Unit,
                vec![(Value::truth(true), Value::Unit)]
            ),
            Err(StdlibError::Missing(_))
        ));
        let dup = vec![
            (Value::truth(true), Value::Unit),
            (Value::truth(true), Value::Unit),
            (Value::truth(false), Value::Unit),
        ];
        assert!(matches!(
            FiniteFunTable::new(Type::bool(), Type::Unit, dup),
            Err(StdlibError::Duplicate(_))
        ));
        let bad = vec![
            (Value::truth(true), Value::Unit),
            (Value::truth(false), Value::truth(true)),
        ];
        assert!(matches!(
            FiniteFunTable::new(Type::bool(), Type::Unit, bad),
            Err(StdlibError::IllTyped { .. })
        ));
    }
}
