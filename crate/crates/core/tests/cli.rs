mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture_path;

fn polylam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polylam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn reduce_into(instance: &str, dir: &Path) -> (String, String) {
    let out = polylam(&["reduce", &fx(instance), "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    (
        dir.join("false.plam").display().to_string(),
        dir.join("verify.plam").display().to_string(),
    )
}

#[test]
fn check_prints_type() {
    let out = polylam(&["check", &fx("square.plam")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1* -> 1*\n");
}

#[test]
fn check_reports_position_of_type_error() {
    let out = polylam(&["check", &fx("ill_typed.plam")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("ill_typed.plam:2:11"), "{err}");
    assert!(err.contains("type mismatch"), "{err}");
}

#[test]
fn check_reports_syntax_error_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.plam");
    std::fs::write(&bad, "\\x:1 ->\n  (x,").unwrap();
    let out = polylam(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.plam:2:"), "{}", stderr(&out));

    let out = polylam(&["check", dir.path().join("nope.plam").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_square_and_identity() {
    let out = polylam(&["eval", &fx("square.plam"), "--arg", "[(),()]"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "[(),(),(),()]\n");

    let out = polylam(&["eval", &fx("square.plam"), "--arg", "3"]);
    assert_eq!(stdout(&out), "[(),(),(),(),(),(),(),(),()]\n");

    let out = polylam(&["eval", &fx("id.plam"), "--arg", "()"]);
    assert_eq!(stdout(&out), "()\n");
}

#[test]
fn eval_rejects_bad_arguments() {
    // Too many arguments.
    let out = polylam(&["eval", &fx("id.plam"), "--arg", "()", "--arg", "()"]);
    assert_eq!(out.status.code(), Some(2));
    // Ill-typed literal.
    let out = polylam(&["eval", &fx("id.plam"), "--arg", "[()]"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing argument leaves a function.
    let out = polylam(&["eval", &fx("id.plam")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_rejects_function_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let (f, _) = reduce_into("monochrome.tile", dir.path());
    let out = polylam(&["eval", &f, "--arg", "(0, ())"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("function-typed"), "{}", stderr(&out));
}

#[test]
fn reduce_writes_two_programs_of_the_same_type() {
    let dir = tempfile::tempdir().unwrap();
    let (f, v) = reduce_into("diagonal.tile", dir.path());
    let tf = polylam(&["check", &f]);
    let tv = polylam(&["check", &v]);
    assert_eq!(tf.status.code(), Some(0));
    assert_eq!(stdout(&tf), stdout(&tv));
    assert_eq!(stdout(&tv), "1* x (1* x 1* -> 1+1+1) -> 1+1\n");
}

#[test]
fn reduce_output_directory_handling() {
    let dir = tempfile::tempdir().unwrap();
    let nested = dir.path().join("a/b");
    let out = polylam(&[
        "reduce",
        &fx("monochrome.tile"),
        "--out",
        nested.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(nested.join("verify.plam").exists());

    let missing = dir.path().join("missing");
    let out = polylam(&[
        "reduce",
        &fx("monochrome.tile"),
        "--out",
        missing.to_str().unwrap(),
        "--no-create",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!missing.exists());
}

#[test]
fn reduce_rejects_bad_instances() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tile");
    std::fs::write(
        &bad,
        "colors: a\ntile t0: top=a right=a bottom=a left=q\nupper_left: t0\nlower_right: t0\n",
    )
    .unwrap();
    let out = polylam(&[
        "reduce",
        bad.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn equiv_finds_monochrome_witness_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (f, v) = reduce_into("monochrome.tile", dir.path());
    let out = polylam(&["--format", "json", "equiv", &f, &v]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let js: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(js["verdict"], "counterexample");
    assert_eq!(js["inputs_tested"], 1);
    assert_eq!(js["grid"], "n = 0\n0\n");
    assert_eq!(js["left"], "R ()");
    assert_eq!(js["right"], "L ()");

    let out = polylam(&["equiv", &f, &v, "--instance", &fx("monochrome.tile")]);
    assert!(
        stdout(&out).contains("grid:\nn = 0\nt0\n"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn equiv_self_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let (f, _) = reduce_into("diagonal.tile", dir.path());
    let out = polylam(&["equiv", &f, &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("equivalent up to bounds"));

    let out = polylam(&["equiv", &f, &fx("square.plam")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equiv_rejects_bound_convention_violation() {
    let out = polylam(&[
        "equiv",
        &fx("square.plam"),
        &fx("square.plam"),
        "--list-bound",
        "3",
        "--idx-bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("idx-bound"), "{}", stderr(&out));
}

#[test]
fn equiv_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (f, v) = reduce_into("diagonal.tile", dir.path());
    let args = ["equiv", &f, &v, "--tables", "50", "--seed", "9"];
    let a = polylam(&args);
    let b = polylam(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let c = polylam(&seq);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn equiv_timeout_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let (f, _) = reduce_into("diagonal.tile", dir.path());
    let out = polylam(&[
        "--timeout",
        "0.000001",
        "equiv",
        &f,
        &f,
        "--tables",
        "exhaustive",
        "--list-bound",
        "1",
        "--idx-bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stderr(&out).contains("time limit"), "{}", stderr(&out));
}

#[test]
fn solve_prints_grid_or_unsat() {
    let out = polylam(&["solve", &fx("monochrome.tile"), "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "t0 t0\nt0 t0\n");

    let out = polylam(&["solve", &fx("corner_clash.tile"), "--n", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "UNSAT at n=0\n");

    let out = polylam(&[
        "--format",
        "json",
        "solve",
        &fx("diagonal.tile"),
        "--n",
        "1",
    ]);
    let js: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        js["solution"],
        serde_json::json!([["t0", "t1"], ["t1", "t2"]])
    );
}

#[test]
fn solve_and_equiv_agree_on_fixtures() {
    for name in common::TILE_FIXTURES {
        let dir = tempfile::tempdir().unwrap();
        let (f, v) = reduce_into(name, dir.path());
        let equiv = polylam(&[
            "equiv",
            &f,
            &v,
            "--list-bound",
            "1",
            "--idx-bound",
            "1",
            "--tables",
            "exhaustive",
        ]);
        let solvable = (0..=1).any(|n| {
            polylam(&["solve", &fx(name), "--n", &n.to_string()])
                .status
                .code()
                == Some(0)
        });
        let expected = if solvable { 1 } else { 0 };
        assert_eq!(
            equiv.status.code(),
            Some(expected),
            "{name}: {}",
            stdout(&equiv)
        );
    }
}
