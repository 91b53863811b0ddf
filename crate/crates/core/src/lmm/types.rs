use std::fmt;

/// λ̄μμ̃* types. `Neg` is kept as written; comparisons go through
/// [`canonicalize_type`], which realizes `~~A = A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LmmType {
    Atom(String),
    Arrow(Box<LmmType>, Box<LmmType>),
    Neg(Box<LmmType>),
}

impl LmmType {
    pub fn atom(name: impl Into<String>) -> Self {
        LmmType::Atom(name.into())
    }

    pub fn arrow(a: LmmType, b: LmmType) -> Self {
        LmmType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn neg(a: LmmType) -> Self {
        LmmType::Neg(Box::new(a))
    }

    /// Negation that cancels an outer negation instead of stacking.
    pub fn negated(&self) -> LmmType {
        match self {
            LmmType::Neg(a) => (**a).clone(),
            other => LmmType::neg(other.clone()),
        }
    }
}

pub fn canonicalize_type(a: &LmmType) -> LmmType {
    match a {
        LmmType::Atom(_) => a.clone(),
        LmmType::Arrow(x, y) => LmmType::arrow(canonicalize_type(x), canonicalize_type(y)),
        LmmType::Neg(inner) => canonicalize_type(inner).negated(),
    }
}

pub fn type_eq(a: &LmmType, b: &LmmType) -> bool {
    a == b || canonicalize_type(a) == canonicalize_type(b)
}

/// Number of arrows.
pub fn cxty_lmm_type(a: &LmmType) -> usize {
    match a {
        LmmType::Atom(_) => 0,
        LmmType::Arrow(x, y) => 1 + cxty_lmm_type(x) + cxty_lmm_type(y),
        LmmType::Neg(x) => cxty_lmm_type(x),
    }
}

impl fmt::Display for LmmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LmmType::Atom(n) => write!(f, "{n}"),
            LmmType::Neg(a) => match **a {
                LmmType::Arrow(..) => write!(f, "~({a})"),
                _ => write!(f, "~{a}"),
            },
            LmmType::Arrow(a, b) => match **a {
                LmmType::Arrow(..) => write!(f, "({a}) -> {b}"),
                _ => write!(f, "{a} -> {b}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> LmmType {
        LmmType::atom("a")
    }
    fn b() -> LmmType {
        LmmType::atom("b")
    }

    #[test]
    fn double_negation_cancels() {
        assert_eq!(canonicalize_type(&LmmType::neg(LmmType::neg(a()))), a());
        assert_eq!(
            canonicalize_type(&LmmType::arrow(a(), LmmType::neg(LmmType::neg(b())))),
            LmmType::arrow(a(), b())
        );
        assert_eq!(canonicalize_type(&a()), a());
        let t = LmmType::neg(LmmType::neg(LmmType::neg(LmmType::arrow(a(), b()))));
        assert_eq!(canonicalize_type(&t), LmmType::neg(LmmType::arrow(a(), b())));
    }

    #[test]
    fn complexity_counts_arrows() {
        let t = LmmType::neg(LmmType::arrow(LmmType::arrow(a(), b()), LmmType::neg(a())));
        assert_eq!(cxty_lmm_type(&t), 2);
        assert_eq!(cxty_lmm_type(&canonicalize_type(&t)), 2);
    }

    #[test]
    fn display() {
        let t = LmmType::arrow(LmmType::arrow(a(), b()), LmmType::neg(LmmType::arrow(a(), b())));
        assert_eq!(t.to_string(), "(a -> b) -> ~(a -> b)");
    }
}
