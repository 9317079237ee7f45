//! Total call-by-value evaluator for elaborated terms.
//!
//! The calculus has no recursion, so `eval` terminates on every well-typed
//! term. Functions are closures, partially applied builtins, or finite lookup
//! tables standing in for function inputs supplied from outside.

mod literal;

use std::fmt;
use std::sync::Arc;

use crate::syntax::{Builtin, Name, Term, Type};

pub use literal::{parse_value, LiteralError};

#[derive(Clone, Debug)]
pub enum Value {
    Unit,
    Pair(Arc<Value>, Arc<Value>),
    Inl(Arc<Value>),
    Inr(Arc<Value>),
    List(Arc<Vec<Value>>),
    Closure {
        binder: Name,
        body: Arc<Term>,
        env: Env,
    },
    /// A builtin waiting for `arity - args.len()` more arguments.
    Builtin {
        builtin: Builtin,
        inst: Arc<Vec<Type>>,
        args: Vec<Value>,
    },
    Table(Arc<Table>),
}

/// Finite function: explicit entries plus a default for every other argument.
#[derive(Clone, Debug)]
pub struct Table {
    entries: Vec<(Value, Value)>,
    default: Value,
}

impl Table {
    /// Keys must be pairwise distinct arrow-free values.
    pub fn new(entries: Vec<(Value, Value)>, default: Value) -> Result<Self, EvalError> {
        for (i, (k, _)) in entries.iter().enumerate() {
            for (k2, _) in &entries[..i] {
                if value_eq(k, k2)? {
                    return Err(EvalError::Internal(format!("duplicate table key {k}")));
                }
            }
        }
        Ok(Table { entries, default })
    }

    pub fn entries(&self) -> &[(Value, Value)] {
        &self.entries
    }

    pub fn default_value(&self) -> &Value {
        &self.default
    }

    pub fn lookup(&self, key: &Value) -> Result<&Value, EvalError> {
        for (k, v) in &self.entries {
            if value_eq(k, key)? {
                return Ok(v);
            }
        }
        Ok(&self.default)
    }

    /// A copy with the entry for `key` replaced or added.
    pub fn with_entry(&self, key: Value, value: Value) -> Result<Self, EvalError> {
        let mut entries = self.entries.clone();
        match entries
            .iter()
            .position(|(k, _)| value_eq(k, &key).unwrap_or(false))
        {
            Some(i) => entries[i].1 = value,
            None => entries.push((key, value)),
        }
        Table::new(entries, self.default.clone())
    }
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn inl(v: Value) -> Value {
        Value::Inl(Arc::new(v))
    }

    pub fn inr(v: Value) -> Value {
        Value::Inr(Arc::new(v))
    }

    pub fn list(items: Vec<Value>) -> Value {
        Value::List(Arc::new(items))
    }

    /// Unary numeral: a list of `k` units.
    pub fn nat(k: usize) -> Value {
        Value::list(vec![Value::Unit; k])
    }

    pub fn table(t: Table) -> Value {
        Value::Table(Arc::new(t))
    }

    pub fn truth(b: bool) -> Value {
        if b {
            Value::inl(Value::Unit)
        } else {
            Value::inr(Value::Unit)
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items) => Some(items),
            _ => None,
        }
    }

    /// Length of a unit-list; `None` for anything else.
    pub fn as_nat(&self) -> Option<usize> {
        let items = self.as_list()?;
        items
            .iter()
            .all(|v| matches!(v, Value::Unit))
            .then_some(items.len())
    }

    /// `Left ()` is true, `Right ()` is false.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Inl(v) if matches!(**v, Value::Unit) => Some(true),
            Value::Inr(v) if matches!(**v, Value::Unit) => Some(false),
            _ => None,
        }
    }

    pub fn is_function(&self) -> bool {
        matches!(
            self,
            Value::Closure { .. } | Value::Builtin { .. } | Value::Table(_)
        )
    }

    /// Value-typing judgment. Closures and builtins are accepted at any arrow
    /// type (their types are fixed by elaboration); tables are checked entrywise.
    pub fn conforms(&self, ty: &Type) -> bool {
        match (self, ty) {
            (Value::Unit, Type::Unit) => true,
            (Value::Pair(a, b), Type::Prod(x, y)) => a.conforms(x) && b.conforms(y),
            (Value::Inl(a), Type::Sum(x, _)) | (Value::Inr(a), Type::Sum(_, x)) => a.conforms(x),
            (Value::List(items), Type::List(x)) => items.iter().all(|v| v.conforms(x)),
            (Value::Closure { .. } | Value::Builtin { .. }, Type::Arrow(..)) => true,
            (Value::Table(t), Type::Arrow(a, b)) => {
                t.default.conforms(b)
                    && t.entries
                        .iter()
                        .all(|(k, v)| k.conforms(a) && v.conforms(b))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => f.write_str("()"),
            Value::Pair(a, b) => write!(f, "({a},{b})"),
            Value::Inl(a) | Value::Inr(a) => {
                f.write_str(if matches!(self, Value::Inl(_)) {
                    "L "
                } else {
                    "R "
                })?;
                if matches!(**a, Value::Inl(_) | Value::Inr(_)) {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Closure { binder, .. } => write!(f, "<closure \\{binder}>"),
            Value::Builtin { builtin, args, .. } => {
                write!(f, "<{builtin} applied to {} argument(s)>", args.len())
            }
            Value::Table(t) => {
                f.write_str("{")?;
                for (k, v) in &t.entries {
                    write!(f, "{k} => {v}, ")?;
                }
                write!(f, "_ => {}}}", t.default)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum EvalError {
    #[error("cannot compare functions for equality")]
    FunctionComparison,
    /// Only reachable on ill-typed input: indicates a typechecker bug or a
    /// caller supplying values of the wrong type.
    #[error("internal evaluation error: {0}")]
    Internal(String),
}

fn internal(msg: impl Into<String>) -> EvalError {
    EvalError::Internal(msg.into())
}

/// Structural equality of arrow-free values.
pub fn value_eq(v: &Value, w: &Value) -> Result<bool, EvalError> {
    Ok(match (v, w) {
        (Value::Unit, Value::Unit) => true,
        (Value::Pair(a, b), Value::Pair(c, d)) => value_eq(a, c)? && value_eq(b, d)?,
        (Value::Inl(a), Value::Inl(b)) | (Value::Inr(a), Value::Inr(b)) => value_eq(a, b)?,
        (Value::List(xs), Value::List(ys)) => {
            if xs.len() != ys.len() {
                // Still reject functions hiding inside either list.
                for x in xs.iter().chain(ys.iter()) {
                    reject_functions(x)?;
                }
                return Ok(false);
            }
            for (x, y) in xs.iter().zip(ys.iter()) {
                if !value_eq(x, y)? {
                    return Ok(false);
                }
            }
            true
        }
        (a, b) if a.is_function() || b.is_function() => return Err(EvalError::FunctionComparison),
        _ => {
            reject_functions(v)?;
            reject_functions(w)?;
            false
        }
    })
}

fn reject_functions(v: &Value) -> Result<(), EvalError> {
    match v {
        Value::Unit => Ok(()),
        Value::Pair(a, b) => {
            reject_functions(a)?;
            reject_functions(b)
        }
        Value::Inl(a) | Value::Inr(a) => reject_functions(a),
        Value::List(items) => items.iter().try_for_each(reject_functions),
        _ => Err(EvalError::FunctionComparison),
    }
}

/// Persistent environment; extension shares the tail.
#[derive(Clone, Default)]
pub struct Env(Option<Arc<EnvNode>>);

struct EnvNode {
    name: Name,
    value: Value,
    next: Env,
}

impl Env {
    pub fn new() -> Self {
        Env(None)
    }

    pub fn extend(&self, name: Name, value: Value) -> Env {
        Env(Some(Arc::new(EnvNode {
            name,
            value,
            next: self.clone(),
        })))
    }

    pub fn lookup(&self, name: &str) -> Option<&Value> {
        let mut cur = &self.0;
        while let Some(node) = cur {
            if &*node.name == name {
                return Some(&node.value);
            }
            cur = &node.next.0;
        }
        None
    }
}

impl fmt::Debug for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        let mut cur = &self.0;
        while let Some(node) = cur {
            names.push(node.name.clone());
            cur = &node.next.0;
        }
        f.debug_tuple("Env").field(&names).finish()
    }
}

pub fn eval(env: &Env, t: &Term) -> Result<Value, EvalError> {
    Ok(match t {
        Term::Var(x, _) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| internal(format!("unbound variable `{x}`")))?,
        Term::Lam(x, _, body) => Value::Closure {
            binder: x.clone(),
            body: body.clone(),
            env: env.clone(),
        },
        Term::App(f, a) => {
            let f = eval(env, f)?;
            let a = eval(env, a)?;
            apply(&f, a)?
        }
        Term::Unit => Value::Unit,
        Term::Pair(a, b) => Value::pair(eval(env, a)?, eval(env, b)?),
        Term::Inl(a, _) => Value::inl(eval(env, a)?),
        Term::Inr(a, _) => Value::inr(eval(env, a)?),
        Term::List(items, _) => Value::list(
            items
                .iter()
                .map(|i| eval(env, i))
                .collect::<Result<_, _>>()?,
        ),
        Term::Builtin(b, inst) => Value::Builtin {
            builtin: *b,
            inst: Arc::new(inst.clone()),
            args: Vec::new(),
        },
    })
}

/// Evaluates a closed term.
pub fn eval_closed(t: &Term) -> Result<Value, EvalError> {
    eval(&Env::new(), t)
}

pub fn apply(f: &Value, arg: Value) -> Result<Value, EvalError> {
    match f {
        Value::Closure { binder, body, env } => eval(&env.extend(binder.clone(), arg), body),
        Value::Table(t) => t.lookup(&arg).cloned(),
        Value::Builtin {
            builtin,
            inst,
            args,
        } => {
            let mut args = args.clone();
            args.push(arg);
            if args.len() < builtin.arity() {
                Ok(Value::Builtin {
                    builtin: *builtin,
                    inst: inst.clone(),
                    args,
                })
            } else {
                run_builtin(*builtin, args)
            }
        }
        other => Err(internal(format!("applying a non-function value {other}"))),
    }
}

pub fn apply_all(f: &Value, args: impl IntoIterator<Item = Value>) -> Result<Value, EvalError> {
    let mut acc = f.clone();
    for a in args {
        acc = apply(&acc, a)?;
    }
    Ok(acc)
}

fn expect_list(v: &Value, who: Builtin) -> Result<&[Value], EvalError> {
    v.as_list()
        .ok_or_else(|| internal(format!("`{who}` expects a list, got {v}")))
}

fn run_builtin(b: Builtin, mut args: Vec<Value>) -> Result<Value, EvalError> {
    match b {
        Builtin::Fst | Builtin::Snd => match &args[0] {
            Value::Pair(x, y) => Ok(if b == Builtin::Fst { x } else { y }.as_ref().clone()),
            other => Err(internal(format!("`{b}` expects a pair, got {other}"))),
        },
        Builtin::Uncons => {
            let items = expect_list(&args[0], b)?;
            Ok(match items.split_first() {
                None => Value::inl(Value::Unit),
                Some((head, tail)) => {
                    Value::inr(Value::pair(head.clone(), Value::list(tail.to_vec())))
                }
            })
        }
        Builtin::Either => {
            let scrutinee = args.pop().expect("either has three arguments");
            match scrutinee {
                Value::Inl(v) => apply(&args[0], (*v).clone()),
                Value::Inr(v) => apply(&args[1], (*v).clone()),
                other => Err(internal(format!(
                    "`either` expects an injection, got {other}"
                ))),
            }
        }
        Builtin::Concat => {
            let outer = expect_list(&args[0], b)?;
            let mut out = Vec::new();
            for inner in outer {
                out.extend_from_slice(expect_list(inner, b)?);
            }
            Ok(Value::list(out))
        }
        Builtin::Map => {
            let items = expect_list(&args[1], b)?;
            let out = items
                .iter()
                .map(|x| apply(&args[0], x.clone()))
                .collect::<Result<_, _>>()?;
            Ok(Value::list(out))
        }
        Builtin::Split => {
            let items = expect_list(&args[0], b)?;
            let out = (0..items.len())
                .map(|i| {
                    Value::pair(
                        Value::list(items[..i].to_vec()),
                        Value::pair(items[i].clone(), Value::list(items[i + 1..].to_vec())),
                    )
                })
                .collect();
            Ok(Value::list(out))
        }
    }
}

/// All values of a finite type, in canonical order: `Left` values before
/// `Right` values, products lexicographic. `None` if the type is not finite.
pub fn finite_values(ty: &Type) -> Option<Vec<Value>> {
    Some(match ty {
        Type::Unit => vec![Value::Unit],
        Type::Sum(a, b) => finite_values(a)?
            .into_iter()
            .map(Value::inl)
            .chain(finite_values(b)?.into_iter().map(Value::inr))
            .collect(),
        Type::Prod(a, b) => {
            let right = finite_values(b)?;
            finite_values(a)?
                .into_iter()
                .flat_map(|x| right.iter().map(move |y| Value::pair(x.clone(), y.clone())))
                .collect()
        }
        Type::List(_) | Type::Arrow(..) => return None,
    })
}

/// Converts an arrow-free value of type `ty` back into a closed term.
pub fn value_to_term(v: &Value, ty: &Type) -> Option<Term> {
    Some(match (v, ty) {
        (Value::Unit, Type::Unit) => Term::Unit,
        (Value::Pair(a, b), Type::Prod(x, y)) => {
            Term::pair(value_to_term(a, x)?, value_to_term(b, y)?)
        }
        (Value::Inl(a), Type::Sum(x, _)) => Term::inl(value_to_term(a, x)?, ty.clone()),
        (Value::Inr(a), Type::Sum(_, y)) => Term::inr(value_to_term(a, y)?, ty.clone()),
        (Value::List(items), Type::List(x)) => Term::List(
            items
                .iter()
                .map(|i| value_to_term(i, x))
                .collect::<Option<_>>()?,
            (**x).clone(),
        ),
        _ => return None,
    })
}
