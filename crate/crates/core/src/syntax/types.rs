use std::fmt;
use std::sync::Arc;

/// Types of the calculus: unit, binary products and sums, lists, and functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Type {
    Unit,
    Prod(Arc<Type>, Arc<Type>),
    Sum(Arc<Type>, Arc<Type>),
    List(Arc<Type>),
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn prod(left: Type, right: Type) -> Type {
        Type::Prod(Arc::new(left), Arc::new(right))
    }

    pub fn sum(left: Type, right: Type) -> Type {
        Type::Sum(Arc::new(left), Arc::new(right))
    }

    pub fn list(elem: Type) -> Type {
        Type::List(Arc::new(elem))
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// Unary naturals, `1*`.
    pub fn nat() -> Type {
        Type::list(Type::Unit)
    }

    /// `1+1`, with `Left ()` as true.
    pub fn bool() -> Type {
        Type::sum(Type::Unit, Type::Unit)
    }

    /// Right-associated sum of `k` units. `k = 1` gives `1`.
    ///
    /// Panics if `k == 0`: there is no empty type.
    pub fn units(k: usize) -> Type {
        assert!(k > 0, "a sum of units needs at least one summand");
        let mut ty = Type::Unit;
        for _ in 1..k {
            ty = Type::sum(Type::Unit, ty);
        }
        ty
    }

    /// Right-associated arrow `args[0] -> ... -> args[n-1] -> result`.
    pub fn arrows(args: impl IntoIterator<Item = Type>, result: Type) -> Type {
        let args: Vec<Type> = args.into_iter().collect();
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| Type::arrow(arg, acc))
    }

    pub fn is_arrow_free(&self) -> bool {
        match self {
            Type::Unit => true,
            Type::Prod(a, b) | Type::Sum(a, b) => a.is_arrow_free() && b.is_arrow_free(),
            Type::List(a) => a.is_arrow_free(),
            Type::Arrow(..) => false,
        }
    }

    /// Arrow-free and list-free: the type denotes a finite set.
    pub fn is_finite(&self) -> bool {
        match self {
            Type::Unit => true,
            Type::Prod(a, b) | Type::Sum(a, b) => a.is_finite() && b.is_finite(),
            Type::List(_) | Type::Arrow(..) => false,
        }
    }

    /// Number of inhabitants of a finite type, `None` if not finite or on overflow.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Type::Unit => Some(1),
            Type::Prod(a, b) => a.cardinality()?.checked_mul(b.cardinality()?),
            Type::Sum(a, b) => a.cardinality()?.checked_add(b.cardinality()?),
            Type::List(_) | Type::Arrow(..) => None,
        }
    }

    /// Order of the type: 0 for arrow-free types, otherwise one more than the
    /// largest order of any argument type.
    pub fn order(&self) -> usize {
        match self {
            Type::Unit => 0,
            Type::Prod(a, b) | Type::Sum(a, b) => a.order().max(b.order()),
            Type::List(a) => a.order(),
            Type::Arrow(a, b) => (a.order() + 1).max(b.order()),
        }
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

// Precedence levels used by the printer; higher binds tighter.
const PREC_ARROW: u8 = 0;
const PREC_SUM: u8 = 1;
const PREC_PROD: u8 = 2;
const PREC_POSTFIX: u8 = 3;

impl Type {
    fn precedence(&self) -> u8 {
        match self {
            Type::Arrow(..) => PREC_ARROW,
            Type::Sum(..) => PREC_SUM,
            Type::Prod(..) => PREC_PROD,
            Type::Unit | Type::List(_) => PREC_POSTFIX,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, PREC_ARROW)?;
            return f.write_str(")");
        }
        match self {
            Type::Unit => f.write_str("1"),
            Type::List(a) => {
                a.fmt_at(f, PREC_POSTFIX)?;
                f.write_str("*")
            }
            Type::Prod(a, b) => {
                a.fmt_at(f, PREC_PROD + 1)?;
                f.write_str(" x ")?;
                b.fmt_at(f, PREC_PROD)
            }
            Type::Sum(a, b) => {
                a.fmt_at(f, PREC_SUM + 1)?;
                f.write_str("+")?;
                b.fmt_at(f, PREC_SUM)
            }
            Type::Arrow(a, b) => {
                a.fmt_at(f, PREC_ARROW + 1)?;
                f.write_str(" -> ")?;
                b.fmt_at(f, PREC_ARROW)
            }
        }
    }

    /// Formats the type so that it can stand as a lambda binder annotation,
    /// where a top-level arrow would be read as the lambda's own arrow.
    pub fn display_binder(&self) -> String {
        match self {
            Type::Arrow(..) => format!("({self})"),
            _ => self.to_string(),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, PREC_ARROW)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reduction_type() {
        let ty = Type::arrow(
            Type::prod(
                Type::nat(),
                Type::arrow(Type::prod(Type::nat(), Type::nat()), Type::units(3)),
            ),
            Type::bool(),
        );
        assert_eq!(ty.to_string(), "1* x (1* x 1* -> 1+1+1) -> 1+1");
        assert_eq!(ty.order(), 2);
    }

    #[test]
    fn display_parenthesizes_left_operands() {
        let left_sum = Type::sum(Type::bool(), Type::Unit);
        assert_eq!(left_sum.to_string(), "(1+1)+1");
        assert_eq!(Type::list(Type::bool()).to_string(), "(1+1)*");
        assert_eq!(Type::list(Type::nat()).to_string(), "1**");
        let left_arrow = Type::arrow(Type::arrow(Type::Unit, Type::Unit), Type::Unit);
        assert_eq!(left_arrow.to_string(), "(1 -> 1) -> 1");
        assert_eq!(
            Type::prod(Type::bool(), Type::Unit).to_string(),
            "(1+1) x 1"
        );
        assert_eq!(
            Type::sum(Type::prod(Type::Unit, Type::Unit), Type::Unit).to_string(),
            "1 x 1+1"
        );
    }

    #[test]
    fn predicates() {
        assert!(Type::bool().is_finite());
        assert!(Type::nat().is_arrow_free());
        assert!(!Type::nat().is_finite());
        assert!(!Type::arrow(Type::Unit, Type::Unit).is_arrow_free());
        assert_eq!(Type::units(5).cardinality(), Some(5));
        assert_eq!(
            Type::prod(Type::units(3), Type::bool()).cardinality(),
            Some(6)
        );
        assert_eq!(Type::units(1), Type::Unit);
    }
}
