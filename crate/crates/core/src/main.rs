use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use polylam::equiv::{self, Bounds, CheckOptions, EquivReport, TableMode};
use polylam::semantics::{apply, eval_closed, parse_value};
use polylam::syntax::{print_term, Term, Type};
use polylam::tiling::{self, TilingInstance};

/// Typecheck, run, and compare programs of the polyregular lambda-calculus,
/// and build the tiling reduction.
///
/// Exit codes: 0 success or equivalent, 1 counterexample or UNSAT, 2 error.
#[derive(Parser)]
#[command(name = "polylam", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Give up after this many seconds (applies to `equiv`).
    #[arg(long, global = true, value_name = "SECONDS")]
    timeout: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the type of a program.
    Check { file: PathBuf },
    /// Apply a program to value literals and print the result.
    Eval {
        file: PathBuf,
        /// Argument literal, e.g. `[(),()]`, `3`, `(L (), R ())`. Repeatable.
        #[arg(long = "arg", value_name = "VALUE")]
        args: Vec<String>,
    },
    /// Write `false.plam` and `verify.plam` for a tiling instance.
    Reduce {
        instance: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Fail if the output directory does not exist instead of creating it.
        #[arg(long)]
        no_create: bool,
    },
    /// Compare two programs on all inputs within the bounds.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        /// Longest list enumerated (also the largest input numeral).
        #[arg(long, default_value_t = 2)]
        list_bound: usize,
        /// Largest numeral used as a function-table key; must be >= list-bound.
        #[arg(long, default_value_t = 2)]
        idx_bound: usize,
        /// `exhaustive`, or a number of sampled tables per function input.
        #[arg(long, default_value = "200", value_parser = parse_tables)]
        tables: Tables,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tiling instance used to name tiles when a witness is drawn as a grid.
        #[arg(long, value_name = "FILE")]
        instance: Option<PathBuf>,
        /// Evaluate inputs on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Search for a tiling of side n+1.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy)]
enum Tables {
    Exhaustive,
    Sampled(usize),
}

fn parse_tables(s: &str) -> Result<Tables, String> {
    if s == "exhaustive" {
        return Ok(Tables::Exhaustive);
    }
    match s.parse::<usize>() {
        Ok(0) => Err("sample count must be at least 1".into()),
        Ok(n) => Ok(Tables::Sampled(n)),
        Err(_) => Err(format!("expected `exhaustive` or a count, got `{s}`")),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_program(path: &Path) -> Result<(Term, Type)> {
    let src = read(path)?;
    polylam::elaborate_program(&src).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn load_instance(path: &Path) -> Result<TilingInstance> {
    let src = read(path)?;
    tiling::parse_instance(&src).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn emit(format: Format, text: impl FnOnce() -> String, js: impl FnOnce() -> serde_json::Value) {
    match format {
        Format::Text => print!("{}", text()),
        Format::Json => println!("{}", js()),
    }
}

fn cmd_check(format: Format, file: &Path) -> Result<ExitCode> {
    let (_, ty) = load_program(file)?;
    emit(
        format,
        || format!("{ty}\n"),
        || json!({ "type": ty.to_string() }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(format: Format, file: &Path, args: &[String]) -> Result<ExitCode> {
    let (term, mut ty) = load_program(file)?;
    let mut f = eval_closed(&term)?;
    for (i, src) in args.iter().enumerate() {
        let Some((dom, cod)) = ty.as_arrow() else {
            bail!(
                "too many arguments: the program takes {i}, got {}",
                args.len()
            );
        };
        let v = parse_value(src, dom).map_err(|e| anyhow!("argument {}: {e}", i + 1))?;
        f = apply(&f, v)?;
        ty = cod.clone();
    }
    if !ty.is_arrow_free() {
        bail!("result has type {ty}; supply more arguments with --arg");
    }
    emit(
        format,
        || format!("{f}\n"),
        || json!({ "type": ty.to_string(), "value": f.to_string() }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(format: Format, instance: &Path, out: &Path, no_create: bool) -> Result<ExitCode> {
    let inst = load_instance(instance)?;
    if !out.is_dir() {
        if no_create {
            bail!("output directory {} does not exist", out.display());
        }
        fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    }
    let r = tiling::reduce(&inst);
    let false_path = out.join("false.plam");
    let verify_path = out.join("verify.plam");
    for (path, term) in [(&false_path, &r.const_false), (&verify_path, &r.verifier)] {
        fs::write(path, print_term(term) + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit(
        format,
        || {
            format!(
                "wrote {} and {}\ntype: {}\n",
                false_path.display(),
                verify_path.display(),
                r.ty
            )
        },
        || {
            json!({
                "false": false_path.display().to_string(),
                "verify": verify_path.display().to_string(),
                "type": r.ty.to_string(),
            })
        },
    );
    Ok(ExitCode::SUCCESS)
}

/// Number of tiles if `ty` is the reduction's input type for some tile type.
fn reduction_tiles(input: &Type) -> Option<usize> {
    let k = match input {
        Type::Prod(n, f) if **n == Type::nat() => match f.as_arrow() {
            Some((dom, tile)) if *dom == Type::prod(Type::nat(), Type::nat()) => {
                (1..=64).find(|&k| Type::units(k) == *tile)?
            }
            _ => return None,
        },
        _ => return None,
    };
    Some(k)
}

fn render_witness(report: &EquivReport, inst: Option<&TilingInstance>) -> Option<String> {
    let k = reduction_tiles(&report.input_type)?;
    let grid = tiling::decode_grid_input(report.witness()?, k)?;
    let body = match inst.filter(|i| i.num_tiles() == k) {
        Some(i) => grid.render(i),
        None => grid.to_string(),
    };
    Some(format!("n = {}\n{body}", grid.n()))
}

fn cmd_equiv(
    format: Format,
    timeout: Option<f64>,
    left: &Path,
    right: &Path,
    bounds: Bounds,
    instance: Option<&Path>,
    sequential: bool,
) -> Result<ExitCode> {
    bounds.validate()?;
    let (m, _) = load_program(left)?;
    let (n, _) = load_program(right)?;
    let inst = instance.map(load_instance).transpose()?;
    let opts = CheckOptions {
        parallel: !sequential,
        deadline: timeout.map(|s| Instant::now() + Duration::from_secs_f64(s)),
    };
    let report = equiv::check_equiv_with(&m, &n, &bounds, &opts)?;
    let grid = render_witness(&report, inst.as_ref());
    emit(
        format,
        || {
            let mut s = report.to_string();
            if let Some(g) = &grid {
                s.push_str("grid:\n");
                s.push_str(g);
            }
            s
        },
        || {
            let mut js = report.to_json();
            if let Some(g) = &grid {
                js["grid"] = json!(g);
            }
            js
        },
    );
    Ok(if report.is_equivalent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_solve(format: Format, instance: &Path, n: usize) -> Result<ExitCode> {
    let inst = load_instance(instance)?;
    let solution = tiling::solve(&inst, n);
    emit(
        format,
        || match &solution {
            Some(g) => g.render(&inst),
            None => format!("UNSAT at n={n}\n"),
        },
        || match &solution {
            Some(g) => json!({
                "n": n,
                "solution": g.rows().map(|r| r.iter().map(|&t| inst.tiles()[t].name.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            None => json!({ "n": n, "solution": null }),
        },
    );
    Ok(if solution.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.timeout {
        if !(t.is_finite() && t > 0.0) {
            bail!("--timeout must be a positive number of seconds");
        }
    }
    match &cli.command {
        Command::Check { file } => cmd_check(cli.format, file),
        Command::Eval { file, args } => cmd_eval(cli.format, file, args),
        Command::Reduce {
            instance,
            out,
            no_create,
        } => cmd_reduce(cli.format, instance, out, *no_create),
        Command::Equiv {
            left,
            right,
            list_bound,
            idx_bound,
            tables,
            seed,
            instance,
            sequential,
        } => {
            let tables = match *tables {
                Tables::Exhaustive => TableMode::Exhaustive,
                Tables::Sampled(count) => TableMode::Sampled { count, seed: *seed },
            };
            let bounds = Bounds {
                list_bound: *list_bound,
                idx_bound: *idx_bound,
                tables,
            };
            cmd_equiv(
                cli.format,
                cli.timeout,
                left,
                right,
                bounds,
                instance.as_deref(),
                *sequential,
            )
        }
        Command::Solve { instance, n } => cmd_solve(cli.format, instance, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            match format {
                Format::Text => eprintln!("error: {e:#}"),
                Format::Json => println!("{}", json!({ "error": format!("{e:#}") })),
            }
            ExitCode::from(2)
        }
    }
}
