//! Tiling instance to a pair of closed terms of type
//! `1* x (1* x 1* -> T) -> 1+1`: a constant `false` and a verifier that
//! accepts `(n, t)` exactly when `t` restricted to `{0..n}^2` is a solution.

use super::{Grid, TilingInstance};
use crate::semantics::{apply, Table, Value};
use crate::stdlib::{compile_finite_fun, false_term, mk_all, mk_and, mk_range, mk_succ};
use crate::syntax::{Builtin, PreTerm, Term, Type};
use crate::typing::{self, Context};

/// `T`, the sum of one unit per tile.
pub fn tile_type_of(inst: &TilingInstance) -> Type {
    Type::units(inst.num_tiles())
}

/// Tile `i` of `k`: `Right^i (Left ())`, except the last which is
/// `Right^(k-1) ()`.
pub fn tile_value(k: usize, i: usize) -> Value {
    assert!(i < k, "tile index {i} out of range for {k} tiles");
    let mut v = if i + 1 == k {
        Value::Unit
    } else {
        Value::inl(Value::Unit)
    };
    for _ in 0..i {
        v = Value::inr(v);
    }
    v
}

/// Inverse of [`tile_value`].
pub fn tile_index(k: usize, v: &Value) -> Option<usize> {
    let mut v = v;
    for i in 0..k {
        if i + 1 == k {
            return matches!(v, Value::Unit).then_some(i);
        }
        match v {
            Value::Inl(u) if matches!(**u, Value::Unit) => return Some(i),
            Value::Inr(rest) => v = rest,
            _ => return None,
        }
    }
    None
}

pub fn tile_term(k: usize, i: usize) -> Term {
    crate::semantics::value_to_term(&tile_value(k, i), &Type::units(k))
        .expect("tile values conform to the tile type")
}

fn pair_table(k: usize, rel: impl Fn(usize, usize) -> bool) -> Term {
    let tile = Type::units(k);
    compile_finite_fun(Type::prod(tile.clone(), tile), Type::bool(), |v| {
        let Value::Pair(a, b) = v else {
            unreachable!("domain is a product")
        };
        let a = tile_index(k, a).expect("domain value is a tile");
        let b = tile_index(k, b).expect("domain value is a tile");
        Value::truth(rel(a, b))
    })
    .expect("tile pairs form a finite type")
}

/// Equality on `T`, as `T x T -> 1+1`.
pub fn tiles_equal_term(k: usize) -> Term {
    pair_table(k, |a, b| a == b)
}

pub fn match_horizontally_term(inst: &TilingInstance) -> Term {
    pair_table(inst.num_tiles(), |a, b| inst.matches_horizontally(a, b))
}

pub fn match_vertically_term(inst: &TilingInstance) -> Term {
    pair_table(inst.num_tiles(), |a, b| inst.matches_vertically(a, b))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Horizontal,
    Vertical,
}

fn var(x: &str) -> PreTerm {
    PreTerm::var(x)
}

fn call(b: Builtin, args: impl IntoIterator<Item = PreTerm>) -> PreTerm {
    PreTerm::apps(PreTerm::builtin(b), args)
}

fn grid_fn_type(tile: &Type) -> Type {
    Type::arrow(Type::prod(Type::nat(), Type::nat()), tile.clone())
}

/// All adjacent pairs of the square `{0..n}^2` in one direction, as a closed
/// term `1* -> (1* x 1* -> T) -> (T x T)*`.
///
/// Horizontal pairs are `(t(i,j), t(i+1,j))` for `i < n`, `j <= n`; vertical
/// pairs swap the coordinates.
pub fn windows_term(k: usize, dir: Direction) -> Term {
    let tile = Type::units(k);
    let nat = Type::nat();
    let range = |x: PreTerm| PreTerm::app(PreTerm::core(mk_range()), x);
    let succ = |x: PreTerm| PreTerm::app(PreTerm::core(mk_succ()), x);
    let at = |x: PreTerm, y: PreTerm| PreTerm::app(var("t"), PreTerm::pair(x, y));
    let window = match dir {
        Direction::Horizontal => {
            PreTerm::pair(at(var("i"), var("j")), at(succ(var("i")), var("j")))
        }
        Direction::Vertical => PreTerm::pair(at(var("j"), var("i")), at(var("j"), succ(var("i")))),
    };
    let inner = call(
        Builtin::Map,
        [
            PreTerm::lam("j", nat.clone(), window),
            range(succ(var("n"))),
        ],
    );
    let body = call(
        Builtin::Concat,
        [call(
            Builtin::Map,
            [PreTerm::lam("i", nat.clone(), inner), range(var("n"))],
        )],
    );
    let fn_ty = grid_fn_type(&tile);
    let ty = Type::arrows(
        [nat.clone(), fn_ty.clone()],
        Type::list(Type::prod(tile.clone(), tile)),
    );
    let pre = PreTerm::lam("n", nat, PreTerm::lam("t", fn_ty, body));
    typing::check(&Context::new(), &pre, &ty)
        .unwrap_or_else(|e| panic!("window extractor does not elaborate: {e}"))
}

/// `1* x (1* x 1* -> T) -> 1+1`.
pub fn reduction_type(k: usize) -> Type {
    let tile = Type::units(k);
    Type::arrow(Type::prod(Type::nat(), grid_fn_type(&tile)), Type::bool())
}

/// `\p -> false` at the reduction type.
pub fn mk_const_false(k: usize) -> Term {
    let Type::Arrow(dom, _) = reduction_type(k) else {
        unreachable!()
    };
    Term::lam("p", (*dom).clone(), false_term())
}

/// The verifier: with `n = fst p` and `t = snd p`, checks both corners and
/// every horizontal and vertical window.
pub fn mk_verifier(inst: &TilingInstance) -> Term {
    let k = inst.num_tiles();
    let tile = Type::units(k);
    let pair_ty = Type::prod(tile.clone(), tile.clone());
    let ty = reduction_type(k);
    let Type::Arrow(dom, _) = &ty else {
        unreachable!()
    };

    let n = || call(Builtin::Fst, [var("p")]);
    let t = || call(Builtin::Snd, [var("p")]);
    let core = PreTerm::core;
    let and = |a: PreTerm, b: PreTerm| PreTerm::apps(core(mk_and()), [a, b]);
    let eq_t = |a: PreTerm, i: usize| {
        PreTerm::app(
            core(tiles_equal_term(k)),
            PreTerm::pair(a, core(tile_term(k, i))),
        )
    };
    let t_at = |x: PreTerm, y: PreTerm| PreTerm::app(t(), PreTerm::pair(x, y));
    let all_windows = |rel: Term, dir: Direction| {
        PreTerm::apps(
            core(mk_all(&pair_ty)),
            [
                core(rel),
                PreTerm::apps(core(windows_term(k, dir)), [n(), t()]),
            ],
        )
    };

    let upper_left = eq_t(
        t_at(core(Term::numeral(0)), core(Term::numeral(0))),
        inst.upper_left(),
    );
    let lower_right = eq_t(t_at(n(), n()), inst.lower_right());
    let horizontal = all_windows(match_horizontally_term(inst), Direction::Horizontal);
    let vertical = all_windows(match_vertically_term(inst), Direction::Vertical);
    let body = and(upper_left, and(lower_right, and(horizontal, vertical)));
    let pre = PreTerm::lam("p", (**dom).clone(), body);
    typing::check(&Context::new(), &pre, &ty)
        .unwrap_or_else(|e| panic!("verifier does not elaborate: {e}"))
}

/// The two programs of the reduction and their common type.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub ty: Type,
    pub const_false: Term,
    pub verifier: Term,
}

/// The instance is solvable iff the two programs are not equivalent.
pub fn reduce(inst: &TilingInstance) -> Reduction {
    let k = inst.num_tiles();
    Reduction {
        ty: reduction_type(k),
        const_false: mk_const_false(k),
        verifier: mk_verifier(inst),
    }
}

/// The reduction input `(n, t)` for a grid, with `t` a finite table over
/// `{0..n}^2` defaulting to tile 0 elsewhere.
pub fn table_of(grid: &Grid, k: usize) -> Value {
    let n = grid.n();
    let mut entries = Vec::with_capacity(grid.cells().len());
    for y in 0..=n {
        for x in 0..=n {
            entries.push((
                Value::pair(Value::nat(x), Value::nat(y)),
                tile_value(k, grid.at(x, y)),
            ));
        }
    }
    let table = Table::new(entries, tile_value(k, 0)).expect("grid coordinates are distinct");
    Value::pair(Value::nat(n), Value::table(table))
}

/// Reads back the grid described by a reduction input `(n, t)` by sampling
/// `t` on `{0..n}^2`. `None` if the value does not have the expected shape.
pub fn decode_grid_input(input: &Value, k: usize) -> Option<Grid> {
    let Value::Pair(n, t) = input else {
        return None;
    };
    let n = n.as_nat()?;
    let mut cells = Vec::with_capacity((n + 1) * (n + 1));
    for y in 0..=n {
        for x in 0..=n {
            let v = apply(t, Value::pair(Value::nat(x), Value::nat(y))).ok()?;
            cells.push(tile_index(k, &v)?);
        }
    }
    Grid::new(n, cells).ok()
}
