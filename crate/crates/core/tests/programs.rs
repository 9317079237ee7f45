mod common;

use polylam::equiv::{check_equiv, Bounds, TableMode};
use polylam::semantics::{apply, apply_all, eval_closed, parse_value, value_eq, Value};
use polylam::stdlib::{mk_marked_square, mk_square};
use polylam::syntax::{parse_type, Type};
use polylam::tiling::{reduce, tile_value, Grid};
use polylam::{elaborate_program, elaborate_program_at, Error};

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

#[test]
fn annotated_squaring_matches_generated_term() {
    let (t, tyy) = elaborate_program("\\w:(1+1)* -> concat (map (\\c:1+1 -> w) w)").unwrap();
    assert_eq!(tyy, ty("(1+1)* -> (1+1)*"));
    assert!(t.alpha_eq(&mk_square(&Type::bool())));
}

#[test]
fn marked_square_fixture_matches_generated_term() {
    let src = common::fixture("marked_square.plam");
    let (t, tyy) = elaborate_program(&src).unwrap();
    assert_eq!(tyy, ty("(1+1)* -> ((1+1)+(1+1))*"));
    let f = eval_closed(&t).unwrap();
    let g = eval_closed(&mk_marked_square(&Type::bool())).unwrap();
    for w in [
        "[]",
        "[L ()]",
        "[L (), R (), R ()]",
        "[R (), L (), R (), L ()]",
    ] {
        let v = parse_value(w, &ty("(1+1)*")).unwrap();
        let a = apply(&f, v.clone()).unwrap();
        let b = apply(&g, v).unwrap();
        assert!(value_eq(&a, &b).unwrap(), "{w}: {a} vs {b}");
    }
}

#[test]
fn pair_binders_and_numerals() {
    let t = elaborate_program_at(
        "\\(n, t):1* x (1* x 1* -> 1+1) -> t (n+1, 0)",
        &ty("1* x (1* x 1* -> 1+1) -> 1+1"),
    )
    .unwrap();
    let f = eval_closed(&t).unwrap();
    let g = eval_closed(
        &elaborate_program("\\q:1* x 1* -> either (\\u:1 -> (Right () : 1+1)) (\\c:1 x 1* -> Left ()) (uncons (fst q))")
            .unwrap()
            .0,
    )
    .unwrap();
    let out = apply(&f, Value::pair(Value::nat(0), g)).unwrap();
    assert_eq!(out.as_bool(), Some(true));
}

#[test]
fn range_and_all_written_by_hand() {
    let range = "\\n:1* -> map fst (split n)";
    let (t, tyy) = elaborate_program(range).unwrap();
    assert_eq!(tyy, ty("1* -> 1**"));
    let out = apply(&eval_closed(&t).unwrap(), Value::nat(3)).unwrap();
    let lens: Vec<usize> = out
        .as_list()
        .unwrap()
        .iter()
        .map(|v| v.as_nat().unwrap())
        .collect();
    assert_eq!(lens, [0, 1, 2]);

    let all = "\\p:(1+1 -> 1+1) -> \\l:(1+1)* -> \
               either (\\u:1 -> (Left () : 1+1)) (\\c:(1+1) x (1+1)* -> Right ()) \
               (uncons (concat (map (\\y:1+1 -> either (\\u:1 -> []) (\\u:1 -> [y]) (p y)) l)))";
    let (t, tyy) = elaborate_program(all).unwrap();
    assert_eq!(tyy, ty("(1+1 -> 1+1) -> (1+1)* -> 1+1"));
    let f = eval_closed(&t).unwrap();
    let id = eval_closed(&elaborate_program("\\b:1+1 -> b").unwrap().0).unwrap();
    for (w, want) in [
        ("[]", true),
        ("[L (), L ()]", true),
        ("[L (), R ()]", false),
    ] {
        let v = parse_value(w, &ty("(1+1)*")).unwrap();
        assert_eq!(
            apply_all(&f, [id.clone(), v]).unwrap().as_bool(),
            Some(want),
            "{w}"
        );
    }
}

#[test]
fn monochrome_verifier_is_constantly_true() {
    let r = reduce(&common::instance("monochrome.tile"));
    let tru = elaborate_program_at("\\(n, t):1* x (1* x 1* -> 1) -> Left ()", &r.ty).unwrap();
    let report = check_equiv(&tru, &r.verifier, &Bounds::exhaustive(3, 3)).unwrap();
    assert!(report.is_equivalent());
    assert_eq!(report.inputs_tested, 4);
}

#[test]
fn diagonal_witness_is_the_known_solution() {
    let inst = common::instance("diagonal.tile");
    let r = reduce(&inst);
    let report = check_equiv(&r.const_false, &r.verifier, &Bounds::exhaustive(1, 1)).unwrap();
    let w = report.witness().expect("diagonal is solvable at n = 1");
    let g = polylam::tiling::decode_grid_input(w, 3).unwrap();
    assert_eq!(g, Grid::from_rows(vec![vec![0, 1], vec![1, 2]]).unwrap());
    // All n = 0 tables come first; 81 tables at n = 1 are tried in order.
    assert!(report.inputs_tested > 81);
    assert!(value_eq(
        &apply(&eval_closed(&r.verifier).unwrap(), w.clone()).unwrap(),
        &Value::truth(true)
    )
    .unwrap());
    assert_eq!(tile_value(3, 2).to_string(), "R (R ())");
}

#[test]
fn error_positions_point_into_the_source() {
    let err = elaborate_program("\\x:1 ->\n  fst x").unwrap_err();
    assert!(matches!(err, Error::Type(_)));
    assert_eq!((err.pos().line, err.pos().col), (2, 7));
    let err = elaborate_program("\\x:1 -> )").unwrap_err();
    assert!(matches!(err, Error::Syntax(_)));
    assert_eq!(err.pos().line, 1);
}

#[test]
fn corner_clash_survives_sampled_bounds() {
    let inst = common::instance("corner_clash.tile");
    assert!(polylam::tiling::solve_up_to(&inst, 3).is_none());
    let r = reduce(&inst);
    let bounds = Bounds {
        list_bound: 2,
        idx_bound: 2,
        tables: TableMode::Sampled {
            count: 500,
            seed: 42,
        },
    };
    let report = check_equiv(&r.const_false, &r.verifier, &bounds).unwrap();
    assert!(report.is_equivalent());
    assert_eq!(report.inputs_tested, 3 * 500);
}
