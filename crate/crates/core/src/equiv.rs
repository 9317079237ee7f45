//! Bounded extensional equivalence.
//!
//! Inputs are enumerated in a fixed order (small values first) and both
//! programs are run on each. Function-typed inputs are finite tables over a
//! truncated domain, so a verdict of equivalence only holds up to the bounds.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::semantics::{apply, eval_closed, value_eq, EvalError, Table, Value};
use crate::syntax::{Term, Type};
use crate::typing::{type_of, Context, TypeError};

/// Refuses to enumerate more inputs than this.
pub const MAX_INPUTS: u128 = 5_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    /// Longest list enumerated, including the unary numerals of the input.
    pub list_bound: usize,
    /// Largest numeral used as a key in function tables.
    pub idx_bound: usize,
    pub tables: TableMode,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            list_bound: 2,
            idx_bound: 2,
            tables: TableMode::Sampled {
                count: 200,
                seed: 0,
            },
        }
    }
}

impl Bounds {
    pub fn exhaustive(list_bound: usize, idx_bound: usize) -> Self {
        Bounds {
            list_bound,
            idx_bound,
            tables: TableMode::Exhaustive,
        }
    }

    pub fn validate(&self) -> Result<(), EquivError> {
        if self.idx_bound < self.list_bound {
            return Err(EquivError::BoundConvention {
                list_bound: self.list_bound,
                idx_bound: self.idx_bound,
            });
        }
        if let TableMode::Sampled { count: 0, .. } = self.tables {
            return Err(EquivError::EmptySample);
        }
        Ok(())
    }
}

impl fmt::Display for TableMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableMode::Exhaustive => f.write_str("exhaustive"),
            TableMode::Sampled { count, seed } => write!(f, "sampled {count} (seed {seed})"),
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "list-bound {}, idx-bound {}, tables {}",
            self.list_bound, self.idx_bound, self.tables
        )
    }
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum EquivError {
    #[error(
        "idx-bound ({idx_bound}) must be at least list-bound ({list_bound}): \
         otherwise the programs may read function tables outside their keyed region"
    )]
    BoundConvention { list_bound: usize, idx_bound: usize },
    #[error("a sampled table mode needs a count of at least 1")]
    EmptySample,
    #[error("the programs have different types: {left} and {right}")]
    TypeMismatch { left: Type, right: Type },
    #[error("program is ill-typed: {0}")]
    IllTyped(#[from] TypeError),
    #[error("programs must be functions, but have type {0}")]
    NotAFunction(Type),
    #[error("result type {0} contains a function type, so outputs cannot be compared")]
    ArrowResult(Type),
    #[error(
        "cannot enumerate values of {0}: function inputs must have arrow-free domain and codomain"
    )]
    Unsupported(Type),
    #[error("{count} inputs exceed the limit of {MAX_INPUTS}; lower the bounds")]
    TooLarge { count: u128 },
    #[error("time limit exceeded after {seconds:.1}s")]
    Timeout { seconds: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Number of values [`enumerate_values`] produces, saturating.
pub fn count_values(ty: &Type, b: &Bounds) -> Result<u128, EquivError> {
    count_in(ty, b, false)
}

fn count_in(ty: &Type, b: &Bounds, in_domain: bool) -> Result<u128, EquivError> {
    Ok(match ty {
        Type::Unit => 1,
        Type::Sum(x, y) => count_in(x, b, in_domain)?.saturating_add(count_in(y, b, in_domain)?),
        Type::Prod(x, y) => count_in(x, b, in_domain)?.saturating_mul(count_in(y, b, in_domain)?),
        Type::List(a) => {
            let bound = list_bound_for(a, b, in_domain);
            let per = count_in(a, b, in_domain)?;
            let mut total: u128 = 0;
            let mut layer: u128 = 1;
            for _ in 0..=bound {
                total = total.saturating_add(layer);
                layer = layer.saturating_mul(per);
            }
            total
        }
        Type::Arrow(dom, cod) => {
            if in_domain || !dom.is_arrow_free() || !cod.is_arrow_free() {
                return Err(EquivError::Unsupported(ty.clone()));
            }
            let keys = count_in(dom, b, true)?;
            let vals = count_in(cod, b, false)?;
            let all = saturating_pow(vals, keys);
            match b.tables {
                TableMode::Exhaustive => all,
                TableMode::Sampled { count, .. } => all.min(count as u128),
            }
        }
    })
}

fn saturating_pow(base: u128, exp: u128) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX || acc == 0 {
            break;
        }
    }
    acc
}

fn list_bound_for(elem: &Type, b: &Bounds, in_domain: bool) -> usize {
    if in_domain && *elem == Type::Unit {
        b.idx_bound
    } else {
        b.list_bound
    }
}

/// All inputs of type `ty` within the bounds, in enumeration order:
/// `Left` before `Right`, products lexicographic, shorter lists first, and
/// function tables keyed by the truncated domain with the first codomain
/// value as default.
///
/// In sampled mode the constant tables come first, followed by seeded random
/// tables. When the requested sample is at least as large as the set of all
/// tables, every table is produced once instead.
pub fn enumerate_values(ty: &Type, b: &Bounds) -> Result<Vec<Value>, EquivError> {
    let count = count_values(ty, b)?;
    if count > MAX_INPUTS {
        return Err(EquivError::TooLarge { count });
    }
    let mut arrow_index = 0u64;
    enumerate_in(ty, b, false, &mut arrow_index)
}

fn enumerate_in(
    ty: &Type,
    b: &Bounds,
    in_domain: bool,
    arrow_index: &mut u64,
) -> Result<Vec<Value>, EquivError> {
    Ok(match ty {
        Type::Unit => vec![Value::Unit],
        Type::Sum(x, y) => {
            let mut out: Vec<Value> = enumerate_in(x, b, in_domain, arrow_index)?
                .into_iter()
                .map(Value::inl)
                .collect();
            out.extend(
                enumerate_in(y, b, in_domain, arrow_index)?
                    .into_iter()
                    .map(Value::inr),
            );
            out
        }
        Type::Prod(x, y) => {
            let left = enumerate_in(x, b, in_domain, arrow_index)?;
            let right = enumerate_in(y, b, in_domain, arrow_index)?;
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    out.push(Value::pair(l.clone(), r.clone()));
                }
            }
            out
        }
        Type::List(a) => {
            let bound = list_bound_for(a, b, in_domain);
            let elems = enumerate_in(a, b, in_domain, arrow_index)?;
            let mut out = vec![Value::list(Vec::new())];
            let mut layer: Vec<Vec<Value>> = vec![Vec::new()];
            for _ in 0..bound {
                let mut next = Vec::with_capacity(layer.len() * elems.len());
                for prefix in &layer {
                    for e in &elems {
                        let mut w = prefix.clone();
                        w.push(e.clone());
                        next.push(w);
                    }
                }
                out.extend(next.iter().cloned().map(Value::list));
                layer = next;
            }
            out
        }
        Type::Arrow(dom, cod) => {
            if in_domain || !dom.is_arrow_free() || !cod.is_arrow_free() {
                return Err(EquivError::Unsupported(ty.clone()));
            }
            let keys = enumerate_in(dom, b, true, arrow_index)?;
            let vals = enumerate_in(cod, b, false, arrow_index)?;
            // Each function position in the type gets its own random stream.
            let stream = *arrow_index;
            *arrow_index += 1;
            enumerate_tables(&keys, &vals, b.tables, stream)
        }
    })
}

fn make_table(keys: &[Value], vals: &[Value], choice: &[usize]) -> Value {
    let entries = keys
        .iter()
        .zip(choice)
        .map(|(k, &c)| (k.clone(), vals[c].clone()))
        .collect();
    Value::table(Table::new(entries, vals[0].clone()).expect("enumerated keys are distinct"))
}

fn enumerate_tables(keys: &[Value], vals: &[Value], mode: TableMode, stream: u64) -> Vec<Value> {
    let all = saturating_pow(vals.len() as u128, keys.len() as u128);
    match mode {
        TableMode::Sampled { count, seed } if (count as u128) < all => {
            let mut out: Vec<Value> = (0..vals.len().min(count))
                .map(|v| make_table(keys, vals, &vec![v; keys.len()]))
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            while out.len() < count {
                let choice: Vec<usize> =
                    keys.iter().map(|_| rng.gen_range(0..vals.len())).collect();
                out.push(make_table(keys, vals, &choice));
            }
            out
        }
        _ => {
            // Odometer with the first key as the most significant digit.
            let mut out = Vec::new();
            let mut choice = vec![0usize; keys.len()];
            loop {
                out.push(make_table(keys, vals, &choice));
                let mut i = keys.len();
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    choice[i] += 1;
                    if choice[i] < vals.len() {
                        break;
                    }
                    choice[i] = 0;
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Equivalent,
    Counterexample {
        witness: Value,
        left: Value,
        right: Value,
    },
}

#[derive(Clone, Debug)]
pub struct EquivReport {
    pub input_type: Type,
    pub verdict: Verdict,
    pub inputs_tested: usize,
    pub bounds: Bounds,
}

impl EquivReport {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.verdict, Verdict::Equivalent)
    }

    pub fn witness(&self) -> Option<&Value> {
        match &self.verdict {
            Verdict::Equivalent => None,
            Verdict::Counterexample { witness, .. } => Some(witness),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tables = match self.bounds.tables {
            TableMode::Exhaustive => json!("exhaustive"),
            TableMode::Sampled { count, seed } => json!({ "sampled": count, "seed": seed }),
        };
        let mut out = json!({
            "verdict": if self.is_equivalent() { "equivalent" } else { "counterexample" },
            "input_type": self.input_type.to_string(),
            "inputs_tested": self.inputs_tested,
            "bounds": {
                "list_bound": self.bounds.list_bound,
                "idx_bound": self.bounds.idx_bound,
                "tables": tables,
            },
        });
        if let Verdict::Counterexample {
            witness,
            left,
            right,
        } = &self.verdict
        {
            out["witness"] = json!(witness.to_string());
            out["left"] = json!(left.to_string());
            out["right"] = json!(right.to_string());
        }
        out
    }
}

impl fmt::Display for EquivReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Equivalent => writeln!(
                f,
                "equivalent up to bounds ({} inputs tested; {})",
                self.inputs_tested, self.bounds
            ),
            Verdict::Counterexample {
                witness,
                left,
                right,
            } => {
                writeln!(
                    f,
                    "counterexample after {} inputs ({})",
                    self.inputs_tested, self.bounds
                )?;
                writeln!(f, "input:  {witness}")?;
                writeln!(f, "left:   {left}")?;
                writeln!(f, "right:  {right}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub parallel: bool,
    pub deadline: Option<Instant>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            parallel: true,
            deadline: None,
        }
    }
}

/// Compares two closed programs on every enumerated input, in parallel.
pub fn check_equiv(m: &Term, n: &Term, b: &Bounds) -> Result<EquivReport, EquivError> {
    check_equiv_with(m, n, b, &CheckOptions::default())
}

/// The same check run on one thread; always produces the same report as
/// [`check_equiv`].
pub fn check_equiv_sequential(m: &Term, n: &Term, b: &Bounds) -> Result<EquivReport, EquivError> {
    check_equiv_with(
        m,
        n,
        b,
        &CheckOptions {
            parallel: false,
            deadline: None,
        },
    )
}

/// The input type of the common function type of `m` and `n`.
pub fn common_input_type(m: &Term, n: &Term) -> Result<Type, EquivError> {
    let ctx = Context::new();
    let left = type_of(&ctx, m)?;
    let right = type_of(&ctx, n)?;
    if left != right {
        return Err(EquivError::TypeMismatch { left, right });
    }
    let Some((dom, cod)) = left.as_arrow() else {
        return Err(EquivError::NotAFunction(left));
    };
    if !cod.is_arrow_free() {
        return Err(EquivError::ArrowResult(cod.clone()));
    }
    Ok(dom.clone())
}

pub fn check_equiv_with(
    m: &Term,
    n: &Term,
    b: &Bounds,
    opts: &CheckOptions,
) -> Result<EquivReport, EquivError> {
    b.validate()?;
    let input_type = common_input_type(m, n)?;
    let inputs = enumerate_values(&input_type, b)?;
    let fm = eval_closed(m)?;
    let fn_ = eval_closed(n)?;
    let start = Instant::now();

    let run = |x: &Value| -> Result<(Value, Value, bool), EvalError> {
        let l = apply(&fm, x.clone())?;
        let r = apply(&fn_, x.clone())?;
        let same = value_eq(&l, &r)?;
        Ok((l, r, same))
    };
    let timed_out = AtomicBool::new(false);
    // An input "stops" the scan if it differs, fails, or the deadline passed.
    let stops = |x: &Value| -> bool {
        if let Some(d) = opts.deadline {
            if Instant::now() >= d {
                timed_out.store(true, Ordering::Relaxed);
                return true;
            }
        }
        !matches!(run(x), Ok((_, _, true)))
    };
    let first = if opts.parallel {
        inputs.par_iter().position_first(stops)
    } else {
        inputs.iter().position(stops)
    };
    if timed_out.load(Ordering::Relaxed) {
        return Err(EquivError::Timeout {
            seconds: start.elapsed().as_secs_f64(),
        });
    }

    let verdict = match first {
        None => Verdict::Equivalent,
        Some(i) => {
            let witness = inputs[i].clone();
            let (left, right, same) = run(&witness)?;
            if same {
                return Err(EvalError::Internal(format!(
                    "counterexample {witness} did not reproduce"
                ))
                .into());
            }
            Verdict::Counterexample {
                witness,
                left,
                right,
            }
        }
    };
    let inputs_tested = first.map_or(inputs.len(), |i| i + 1);
    Ok(EquivReport {
        input_type,
        verdict,
        inputs_tested,
        bounds: *b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;
    use crate::{elaborate_program, elaborate_program_at};

    fn ty(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    fn prog(src: &str) -> Term {
        elaborate_program(src).unwrap().0
    }

    #[test]
    fn enumeration_sizes() {
        let b = Bounds::exhaustive(2, 2);
        assert_eq!(enumerate_values(&Type::bool(), &b).unwrap().len(), 2);
        assert_eq!(
            enumerate_values(&ty("(1+1+1) x (1+1+1)"), &b)
                .unwrap()
                .len(),
            9
        );
        // 1 + 2 + 4 lists of length at most 2.
        assert_eq!(enumerate_values(&ty("(1+1)*"), &b).unwrap().len(), 7);
        let b1 = Bounds::exhaustive(1, 1);
        let tables = enumerate_values(&ty("1* x 1* -> 1+1"), &b1).unwrap();
        assert_eq!(tables.len(), 16);
        assert_eq!(count_values(&ty("1* x 1* -> 1+1"), &b1).unwrap(), 16);
    }

    #[test]
    fn enumeration_order() {
        let b = Bounds::exhaustive(2, 2);
        let shown: Vec<String> = enumerate_values(&ty("1+1"), &b)
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(shown, ["L ()", "R ()"]);
        let lists: Vec<usize> = enumerate_values(&Type::nat(), &b)
            .unwrap()
            .iter()
            .map(|v| v.as_nat().unwrap())
            .collect();
        assert_eq!(lists, [0, 1, 2]);
        let pairs = enumerate_values(&ty("(1+1) x (1+1)"), &b).unwrap();
        assert_eq!(pairs[1].to_string(), "(L (),R ())");
    }

    #[test]
    fn higher_order_domain_is_unsupported() {
        let b = Bounds::default();
        assert!(matches!(
            enumerate_values(&ty("(1 -> 1) -> 1"), &b),
            Err(EquivError::Unsupported(_))
        ));
        assert!(matches!(
            enumerate_values(&ty("1 -> 1 -> 1"), &b),
            Err(EquivError::Unsupported(_))
        ));
    }

    #[test]
    fn sampled_tables_are_deterministic() {
        let b = Bounds {
            list_bound: 2,
            idx_bound: 2,
            tables: TableMode::Sampled { count: 30, seed: 7 },
        };
        let t = ty("1* x 1* -> 1+1+1");
        let a: Vec<String> = enumerate_values(&t, &b)
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        let c: Vec<String> = enumerate_values(&t, &b)
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(a.len(), 30);
        assert_eq!(a, c);
    }

    #[test]
    fn small_sample_spaces_are_enumerated_exhaustively() {
        let b = Bounds::default();
        assert_eq!(enumerate_values(&ty("1 -> 1+1"), &b).unwrap().len(), 2);
    }

    #[test]
    fn identity_on_bool() {
        let id = prog("\\b:1+1 -> b");
        let r = check_equiv(&id, &id, &Bounds::default()).unwrap();
        assert!(r.is_equivalent());
        assert_eq!(r.inputs_tested, 2);
    }

    #[test]
    fn finds_first_difference() {
        let id = prog("\\w:1* -> w");
        let sq =
            elaborate_program_at("\\w:1* -> concat (map (\\c:1 -> w) w)", &ty("1* -> 1*")).unwrap();
        let r = check_equiv(&id, &sq, &Bounds::exhaustive(3, 3)).unwrap();
        // 0 and 1 agree; 2 is the first disagreement.
        assert_eq!(r.witness().unwrap().as_nat(), Some(2));
        assert_eq!(r.inputs_tested, 3);
        let s = check_equiv_sequential(&id, &sq, &Bounds::exhaustive(3, 3)).unwrap();
        assert_eq!(r.to_json(), s.to_json());
    }

    #[test]
    fn errors() {
        let a = prog("\\b:1+1 -> b");
        let c = prog("\\b:1 -> b");
        assert!(matches!(
            check_equiv(&a, &c, &Bounds::default()),
            Err(EquivError::TypeMismatch { .. })
        ));
        assert!(matches!(
            check_equiv(&a, &a, &Bounds::exhaustive(3, 2)),
            Err(EquivError::BoundConvention { .. })
        ));
        let u = prog("()");
        assert!(matches!(
            check_equiv(&u, &u, &Bounds::default()),
            Err(EquivError::NotAFunction(_))
        ));
        let k = prog("\\b:1 -> \\c:1 -> c");
        assert!(matches!(
            check_equiv(&k, &k, &Bounds::default()),
            Err(EquivError::ArrowResult(_))
        ));
    }

    #[test]
    fn deadline_in_the_past_times_out() {
        let id = prog("\\w:1* -> w");
        let opts = CheckOptions {
            parallel: false,
            deadline: Some(Instant::now()),
        };
        assert!(matches!(
            check_equiv_with(&id, &id, &Bounds::default(), &opts),
            Err(EquivError::Timeout { .. })
        ));
    }
}
