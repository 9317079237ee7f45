use std::fmt::Write;

use super::term::Term;
use super::types::Type;

/// Prints an elaborated term in surface syntax.
///
/// The output is fully annotated: injections and non-numeral list literals
/// carry ascriptions and builtins carry explicit `@[..]` instantiations, so
/// reparsing and elaborating yields a structurally equal term.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t, Ctx::Top);
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    /// Anywhere a lambda may appear unparenthesized.
    Top,
    /// Function position of an application.
    Head,
    /// Argument position: atoms only.
    Arg,
}

fn write_term(out: &mut String, t: &Term, ctx: Ctx) {
    match t {
        Term::Var(x, _) => out.push_str(x),
        Term::Unit => out.push_str("()"),
        Term::Builtin(b, inst) => {
            out.push_str(b.name());
            out.push_str(" @[");
            for (i, ty) in inst.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{ty}");
            }
            out.push(']');
        }
        Term::Pair(a, b) => {
            out.push('(');
            write_term(out, a, Ctx::Top);
            out.push_str(", ");
            write_term(out, b, Ctx::Top);
            out.push(')');
        }
        Term::Inl(a, ty) | Term::Inr(a, ty) => {
            out.push_str(if matches!(t, Term::Inl(..)) {
                "(Left "
            } else {
                "(Right "
            });
            write_term(out, a, Ctx::Arg);
            let _ = write!(out, " : {ty})");
        }
        Term::List(items, elem) => {
            if let Some(k) = t.as_numeral() {
                let _ = write!(out, "{k}");
                return;
            }
            out.push_str("([");
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(out, item, Ctx::Top);
            }
            let _ = write!(out, "] : {})", Type::list(elem.clone()));
        }
        Term::App(f, a) => {
            let paren = ctx == Ctx::Arg;
            if paren {
                out.push('(');
            }
            write_term(out, f, Ctx::Head);
            out.push(' ');
            write_term(out, a, Ctx::Arg);
            if paren {
                out.push(')');
            }
        }
        Term::Lam(x, ty, body) => {
            let paren = ctx != Ctx::Top;
            if paren {
                out.push('(');
            }
            let _ = write!(out, "\\{x}:{} -> ", ty.display_binder());
            write_term(out, body, Ctx::Top);
            if paren {
                out.push(')');
            }
        }
    }
}
