use std::fmt;

use super::SymError;

/// λSym types. `Bottom` is only legal as the type of a whole command; the
/// m-types are everything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymType {
    Atom(String),
    NegAtom(String),
    And(Box<SymType>, Box<SymType>),
    Or(Box<SymType>, Box<SymType>),
    Bottom,
}

impl SymType {
    pub fn atom(name: impl Into<String>) -> Self {
        SymType::Atom(name.into())
    }

    pub fn neg_atom(name: impl Into<String>) -> Self {
        SymType::NegAtom(name.into())
    }

    pub fn and(a: SymType, b: SymType) -> Self {
        SymType::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: SymType, b: SymType) -> Self {
        SymType::Or(Box::new(a), Box::new(b))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, SymType::Bottom)
    }

    /// An m-type contains no `Bottom` anywhere.
    pub fn is_m_type(&self) -> bool {
        match self {
            SymType::Atom(_) | SymType::NegAtom(_) => true,
            SymType::And(a, b) | SymType::Or(a, b) => a.is_m_type() && b.is_m_type(),
            SymType::Bottom => false,
        }
    }

    /// Subformulas: the type itself and, recursively, the components of ∧/∨.
    pub fn subformulas(&self) -> Vec<SymType> {
        let mut out = vec![self.clone()];
        if let SymType::And(a, b) | SymType::Or(a, b) = self {
            out.extend(a.subformulas());
            out.extend(b.subformulas());
        }
        out
    }
}

/// De Morgan dual of an m-type.
pub fn neg_type(a: &SymType) -> Result<SymType, SymError> {
    Ok(match a {
        SymType::Atom(n) => SymType::NegAtom(n.clone()),
        SymType::NegAtom(n) => SymType::Atom(n.clone()),
        SymType::And(l, r) => SymType::or(neg_type(l)?, neg_type(r)?),
        SymType::Or(l, r) => SymType::and(neg_type(l)?, neg_type(r)?),
        SymType::Bottom => return Err(SymError::NegationOfBottom),
    })
}

/// Number of ∧/∨ connectives.
pub fn cxty_type(a: &SymType) -> usize {
    match a {
        SymType::Atom(_) | SymType::NegAtom(_) | SymType::Bottom => 0,
        SymType::And(l, r) | SymType::Or(l, r) => 1 + cxty_type(l) + cxty_type(r),
    }
}

impl fmt::Display for SymType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(t: &SymType, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                SymType::And(..) | SymType::Or(..) => write!(f, "({t})"),
                _ => write!(f, "{t}"),
            }
        }
        match self {
            SymType::Atom(n) => write!(f, "{n}"),
            SymType::NegAtom(n) => write!(f, "~{n}"),
            SymType::Bottom => write!(f, "#"),
            SymType::And(a, b) => {
                operand(a, f)?;
                write!(f, " /\\ ")?;
                operand(b, f)
            }
            SymType::Or(a, b) => {
                operand(a, f)?;
                write!(f, " \\/ ")?;
                operand(b, f)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> SymType {
        SymType::atom("a")
    }
    fn b() -> SymType {
        SymType::atom("b")
    }

    #[test]
    fn negation_examples() {
        assert_eq!(neg_type(&a()).unwrap(), SymType::neg_atom("a"));
        assert_eq!(
            neg_type(&SymType::and(a(), b())).unwrap(),
            SymType::or(SymType::neg_atom("a"), SymType::neg_atom("b"))
        );
        let t = SymType::or(a(), SymType::neg_atom("b"));
        assert_eq!(neg_type(&neg_type(&t).unwrap()).unwrap(), t);
        assert_eq!(neg_type(&SymType::Bottom), Err(SymError::NegationOfBottom));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(cxty_type(&a()), 0);
        assert_eq!(cxty_type(&SymType::and(a(), SymType::or(b(), SymType::atom("c")))), 2);
    }
}
