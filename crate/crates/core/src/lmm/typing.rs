use std::collections::BTreeMap;
use std::fmt;

use super::{canonicalize_type, type_eq, LmmError, LmmTerm, LmmType};

/// Two-sided typing context: `gamma` for l-variables, `delta` for
/// r-variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LmmSequent {
    pub gamma: BTreeMap<String, LmmType>,
    pub delta: BTreeMap<String, LmmType>,
}

impl LmmSequent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_l(mut self, x: impl Into<String>, a: LmmType) -> Self {
        self.gamma.insert(x.into(), a);
        self
    }

    pub fn with_r(mut self, alpha: impl Into<String>, a: LmmType) -> Self {
        self.delta.insert(alpha.into(), a);
        self
    }
}

impl fmt::Display for LmmSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &BTreeMap<String, LmmType>| {
            m.iter().map(|(x, a)| format!("{x}:{a}")).collect::<Vec<_>>().join(", ")
        };
        write!(f, "{} ; {}", side(&self.gamma), side(&self.delta))
    }
}

/// The canonical type of an l- or r-term, or `None` for a well-typed
/// command.
pub fn typecheck_lmm(seq: &LmmSequent, u: &LmmTerm) -> Result<Option<LmmType>, LmmError> {
    if !u.well_sorted() {
        return Err(LmmError::Sort(u.to_string()));
    }
    let mut scope = Scope {
        seq,
        l: Vec::new(),
        r: Vec::new(),
    };
    scope.check(u)
}

struct Scope<'a> {
    seq: &'a LmmSequent,
    l: Vec<(&'a str, &'a LmmType)>,
    r: Vec<(&'a str, &'a LmmType)>,
}

impl<'a> Scope<'a> {
    fn lookup_l(&self, x: &str) -> Result<LmmType, LmmError> {
        self.l
            .iter()
            .rev()
            .find(|(y, _)| *y == x)
            .map(|(_, a)| (*a).clone())
            .or_else(|| self.seq.gamma.get(x).cloned())
            .map(|a| canonicalize_type(&a))
            .ok_or_else(|| LmmError::UnboundL(x.to_string()))
    }

    fn lookup_r(&self, x: &str) -> Result<LmmType, LmmError> {
        self.r
            .iter()
            .rev()
            .find(|(y, _)| *y == x)
            .map(|(_, a)| (*a).clone())
            .or_else(|| self.seq.delta.get(x).cloned())
            .map(|a| canonicalize_type(&a))
            .ok_or_else(|| LmmError::UnboundR(x.to_string()))
    }

    fn typed(&mut self, u: &'a LmmTerm) -> Result<LmmType, LmmError> {
        self.check(u)?.ok_or_else(|| LmmError::Sort(u.to_string()))
    }

    fn command(&mut self, u: &'a LmmTerm) -> Result<(), LmmError> {
        match self.check(u)? {
            None => Ok(()),
            Some(_) => Err(LmmError::Sort(u.to_string())),
        }
    }

    fn check(&mut self, u: &'a LmmTerm) -> Result<Option<LmmType>, LmmError> {
        let ty = match u {
            LmmTerm::LVar(x) => self.lookup_l(x)?,
            LmmTerm::RVar(a) => self.lookup_r(a)?,
            LmmTerm::Lam(x, a, t) => {
                self.l.push((x, a));
                let b = self.typed(t);
                self.l.pop();
                LmmType::arrow(canonicalize_type(a), b?)
            }
            LmmTerm::Mu(alpha, a, c) => {
                self.r.push((alpha, a));
                let res = self.command(c);
                self.r.pop();
                res?;
                canonicalize_type(a)
            }
            LmmTerm::MuTilde(x, a, c) => {
                self.l.push((x, a));
                let res = self.command(c);
                self.l.pop();
                res?;
                canonicalize_type(a)
            }
            LmmTerm::BarE(e) | LmmTerm::TildeT(e) => self.typed(e)?.negated(),
            LmmTerm::Cons(t, e) => {
                let a = self.typed(t)?;
                let b = self.typed(e)?;
                LmmType::arrow(a, b)
            }
            LmmTerm::Cut(t, e) => {
                let a = self.typed(t)?;
                let b = self.typed(e)?;
                if !type_eq(&a, &b) {
                    return Err(LmmError::CutMismatch { left: a, right: b });
                }
                return Ok(None);
            }
        };
        Ok(Some(ty))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> LmmType {
        LmmType::atom("a")
    }

    #[test]
    fn variables_and_mu() {
        let seq = LmmSequent::new().with_l("x", a());
        assert_eq!(typecheck_lmm(&seq, &LmmTerm::lvar("x")).unwrap(), Some(a()));
        let seq = LmmSequent::new().with_l("t", a());
        let m = LmmTerm::mu("al", a(), LmmTerm::cut(LmmTerm::lvar("t"), LmmTerm::rvar("al")));
        assert_eq!(typecheck_lmm(&seq, &m).unwrap(), Some(a()));
        let bad = LmmTerm::bar(LmmTerm::tilde(LmmTerm::lvar("x")));
        assert_eq!(typecheck_lmm(&LmmSequent::new(), &bad), Err(LmmError::UnboundL("x".into())));
    }

    #[test]
    fn cut_compares_modulo_double_negation() {
        let seq = LmmSequent::new()
            .with_l("x", LmmType::neg(LmmType::neg(a())))
            .with_r("al", a());
        let c = LmmTerm::cut(LmmTerm::lvar("x"), LmmTerm::rvar("al"));
        assert_eq!(typecheck_lmm(&seq, &c).unwrap(), None);
        let seq = seq.with_r("al", LmmType::atom("b"));
        assert!(matches!(typecheck_lmm(&seq, &c), Err(LmmError::CutMismatch { .. })));
    }

    #[test]
    fn complements_negate() {
        let seq = LmmSequent::new().with_l("x", a()).with_r("al", LmmType::neg(a()));
        let t = LmmTerm::tilde(LmmTerm::lvar("x"));
        assert_eq!(typecheck_lmm(&seq, &t).unwrap(), Some(LmmType::neg(a())));
        let b = LmmTerm::bar(LmmTerm::rvar("al"));
        assert_eq!(typecheck_lmm(&seq, &b).unwrap(), Some(a()));
        let c = LmmTerm::cut(LmmTerm::bar(LmmTerm::rvar("al")), LmmTerm::tilde(LmmTerm::lvar("x")));
        assert!(matches!(typecheck_lmm(&seq, &c), Err(LmmError::CutMismatch { .. })));
    }
}
