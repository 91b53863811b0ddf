use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use super::LmmType;
use crate::names::{fresh_name, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    /// Commands `⌊t, e⌋`.
    C,
    /// Producers.
    L,
    /// Consumers.
    R,
}

/// The two variable namespaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    L,
    R,
}

/// λ̄μμ̃* terms of all three sorts in one tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LmmTerm {
    Cut(Box<LmmTerm>, Box<LmmTerm>),
    LVar(String),
    Lam(String, LmmType, Box<LmmTerm>),
    Mu(String, LmmType, Box<LmmTerm>),
    BarE(Box<LmmTerm>),
    RVar(String),
    Cons(Box<LmmTerm>, Box<LmmTerm>),
    MuTilde(String, LmmType, Box<LmmTerm>),
    TildeT(Box<LmmTerm>),
}

impl LmmTerm {
    pub fn cut(t: LmmTerm, e: LmmTerm) -> Self {
        LmmTerm::Cut(Box::new(t), Box::new(e))
    }
    pub fn lvar(x: impl Into<String>) -> Self {
        LmmTerm::LVar(x.into())
    }
    pub fn rvar(a: impl Into<String>) -> Self {
        LmmTerm::RVar(a.into())
    }
    pub fn lam(x: impl Into<String>, ann: LmmType, t: LmmTerm) -> Self {
        LmmTerm::Lam(x.into(), ann, Box::new(t))
    }
    pub fn mu(a: impl Into<String>, ann: LmmType, c: LmmTerm) -> Self {
        LmmTerm::Mu(a.into(), ann, Box::new(c))
    }
    pub fn mutilde(x: impl Into<String>, ann: LmmType, c: LmmTerm) -> Self {
        LmmTerm::MuTilde(x.into(), ann, Box::new(c))
    }
    pub fn bar(e: LmmTerm) -> Self {
        LmmTerm::BarE(Box::new(e))
    }
    pub fn tilde(t: LmmTerm) -> Self {
        LmmTerm::TildeT(Box::new(t))
    }
    pub fn cons(t: LmmTerm, e: LmmTerm) -> Self {
        LmmTerm::Cons(Box::new(t), Box::new(e))
    }

    pub fn sort(&self) -> Sort {
        match self {
            LmmTerm::Cut(..) => Sort::C,
            LmmTerm::LVar(_) | LmmTerm::Lam(..) | LmmTerm::Mu(..) | LmmTerm::BarE(_) => Sort::L,
            LmmTerm::RVar(_) | LmmTerm::Cons(..) | LmmTerm::MuTilde(..) | LmmTerm::TildeT(_) => Sort::R,
        }
    }

    /// Sorts expected of the children, in child order.
    fn child_sorts(&self) -> &'static [Sort] {
        match self {
            LmmTerm::Cut(..) | LmmTerm::Cons(..) => &[Sort::L, Sort::R],
            LmmTerm::Lam(..) | LmmTerm::TildeT(_) => &[Sort::L],
            LmmTerm::Mu(..) | LmmTerm::MuTilde(..) => &[Sort::C],
            LmmTerm::BarE(_) => &[Sort::R],
            LmmTerm::LVar(_) | LmmTerm::RVar(_) => &[],
        }
    }

    /// Every child has the sort its position demands.
    pub fn well_sorted(&self) -> bool {
        self.children()
            .iter()
            .zip(self.child_sorts())
            .all(|(c, s)| c.sort() == *s && c.well_sorted())
    }

    pub fn children(&self) -> Vec<&LmmTerm> {
        match self {
            LmmTerm::LVar(_) | LmmTerm::RVar(_) => vec![],
            LmmTerm::Cut(a, b) | LmmTerm::Cons(a, b) => vec![a, b],
            LmmTerm::Lam(_, _, b)
            | LmmTerm::Mu(_, _, b)
            | LmmTerm::MuTilde(_, _, b)
            | LmmTerm::BarE(b)
            | LmmTerm::TildeT(b) => vec![b],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut LmmTerm> {
        match (self, i) {
            (LmmTerm::Cut(a, _) | LmmTerm::Cons(a, _), 0) => Some(a),
            (LmmTerm::Cut(_, b) | LmmTerm::Cons(_, b), 1) => Some(b),
            (
                LmmTerm::Lam(_, _, b)
                | LmmTerm::Mu(_, _, b)
                | LmmTerm::MuTilde(_, _, b)
                | LmmTerm::BarE(b)
                | LmmTerm::TildeT(b),
                0,
            ) => Some(b),
            _ => None,
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&LmmTerm> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    pub fn subterm_mut(&mut self, path: &[usize]) -> Option<&mut LmmTerm> {
        let mut cur = self;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        Some(cur)
    }

    pub fn replace_at(&self, path: &[usize], new: LmmTerm) -> Option<LmmTerm> {
        let mut out = self.clone();
        *out.subterm_mut(path)? = new;
        Some(out)
    }

    pub fn positions(&self) -> Vec<Path> {
        fn walk(m: &LmmTerm, here: &mut Path, out: &mut Vec<Path>) {
            out.push(here.clone());
            for (i, c) in m.children().into_iter().enumerate() {
                here.push(i);
                walk(c, here, out);
                here.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// The binder this node introduces, if any.
    pub fn binder(&self) -> Option<(VarKind, &str)> {
        match self {
            LmmTerm::Lam(x, _, _) | LmmTerm::MuTilde(x, _, _) => Some((VarKind::L, x)),
            LmmTerm::Mu(a, _, _) => Some((VarKind::R, a)),
            _ => None,
        }
    }

    fn var(&self) -> Option<(VarKind, &str)> {
        match self {
            LmmTerm::LVar(x) => Some((VarKind::L, x)),
            LmmTerm::RVar(a) => Some((VarKind::R, a)),
            _ => None,
        }
    }

    pub fn free_vars(&self, kind: VarKind) -> BTreeSet<String> {
        fn walk<'a>(m: &'a LmmTerm, kind: VarKind, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
            if let Some((k, x)) = m.var() {
                if k == kind && !bound.contains(&x) {
                    out.insert(x.to_string());
                }
                return;
            }
            let b = m.binder().filter(|(k, _)| *k == kind).map(|(_, x)| x);
            if let Some(x) = b {
                bound.push(x);
            }
            for c in m.children() {
                walk(c, kind, bound, out);
            }
            if b.is_some() {
                bound.pop();
            }
        }
        let mut out = BTreeSet::new();
        walk(self, kind, &mut Vec::new(), &mut out);
        out
    }

    pub fn free_l(&self) -> BTreeSet<String> {
        self.free_vars(VarKind::L)
    }

    pub fn free_r(&self) -> BTreeSet<String> {
        self.free_vars(VarKind::R)
    }

    pub fn occurs_free(&self, kind: VarKind, x: &str) -> bool {
        if let Some((k, y)) = self.var() {
            return k == kind && y == x;
        }
        if self.binder() == Some((kind, x)) {
            return false;
        }
        self.children().iter().any(|c| c.occurs_free(kind, x))
    }

    /// Every name of the given kind occurring in the term.
    pub fn all_names(&self, kind: VarKind, out: &mut BTreeSet<String>) {
        if let Some((k, x)) = self.var().or(self.binder()) {
            if k == kind {
                out.insert(x.to_string());
            }
        }
        for c in self.children() {
            c.all_names(kind, out);
        }
    }

    /// Key equal for α-equivalent terms; annotations are compared after
    /// canonicalization.
    pub fn alpha_key(&self) -> String {
        fn walk<'a>(m: &'a LmmTerm, env: &mut Vec<(VarKind, &'a str)>, out: &mut String) {
            if let Some((k, x)) = m.var() {
                match env.iter().rposition(|b| *b == (k, x)) {
                    Some(level) => write!(out, "#{level}").unwrap(),
                    None => write!(out, "{}{x};", if k == VarKind::L { '$' } else { '@' }).unwrap(),
                }
                return;
            }
            let tag = match m {
                LmmTerm::Cut(..) => "C",
                LmmTerm::Lam(..) => "L",
                LmmTerm::Mu(..) => "M",
                LmmTerm::BarE(_) => "B",
                LmmTerm::Cons(..) => "K",
                LmmTerm::MuTilde(..) => "N",
                LmmTerm::TildeT(_) => "T",
                LmmTerm::LVar(_) | LmmTerm::RVar(_) => unreachable!(),
            };
            out.push_str(tag);
            if let LmmTerm::Lam(_, a, _) | LmmTerm::Mu(_, a, _) | LmmTerm::MuTilde(_, a, _) = m {
                write!(out, "[{}]", super::canonicalize_type(a)).unwrap();
            }
            let b = m.binder();
            if let Some(b) = b {
                env.push(b);
            }
            out.push('(');
            for (i, c) in m.children().into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                walk(c, env, out);
            }
            out.push(')');
            if b.is_some() {
                env.pop();
            }
        }
        let mut out = String::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn alpha_eq(&self, other: &LmmTerm) -> bool {
        self == other || self.alpha_key() == other.alpha_key()
    }

    /// No bar/tilde formers and no negated annotations.
    pub fn is_pure(&self) -> bool {
        fn pure_type(a: &LmmType) -> bool {
            match a {
                LmmType::Atom(_) => true,
                LmmType::Arrow(x, y) => pure_type(x) && pure_type(y),
                LmmType::Neg(_) => false,
            }
        }
        match self {
            LmmTerm::BarE(_) | LmmTerm::TildeT(_) => false,
            LmmTerm::Lam(_, a, b) | LmmTerm::Mu(_, a, b) | LmmTerm::MuTilde(_, a, b) => pure_type(a) && b.is_pure(),
            _ => self.children().iter().all(|c| c.is_pure()),
        }
    }
}

pub fn is_pure_lmm(u: &LmmTerm) -> bool {
    u.is_pure()
}

/// Term complexity: variables 0; λ, μ, μ̃, bar and tilde add one; cuts and
/// conses are additive.
pub fn cxty_lmm(u: &LmmTerm) -> usize {
    let own = match u {
        LmmTerm::LVar(_) | LmmTerm::RVar(_) | LmmTerm::Cut(..) | LmmTerm::Cons(..) => 0,
        _ => 1,
    };
    own + u.children().iter().map(|c| cxty_lmm(c)).sum::<usize>()
}

/// Capture-avoiding replacement of the free `kind`-variable `x` by `n`.
pub fn subst_var(u: &LmmTerm, kind: VarKind, x: &str, n: &LmmTerm) -> LmmTerm {
    if !u.occurs_free(kind, x) {
        return u.clone();
    }
    match u {
        LmmTerm::LVar(_) | LmmTerm::RVar(_) => n.clone(),
        LmmTerm::Cut(a, b) => LmmTerm::cut(subst_var(a, kind, x, n), subst_var(b, kind, x, n)),
        LmmTerm::Cons(a, b) => LmmTerm::cons(subst_var(a, kind, x, n), subst_var(b, kind, x, n)),
        LmmTerm::BarE(b) => LmmTerm::bar(subst_var(b, kind, x, n)),
        LmmTerm::TildeT(b) => LmmTerm::tilde(subst_var(b, kind, x, n)),
        LmmTerm::Lam(y, a, body) | LmmTerm::Mu(y, a, body) | LmmTerm::MuTilde(y, a, body) => {
            let bkind = u.binder().expect("binder node").0;
            let (y, body) = if n.occurs_free(bkind, y) {
                let mut avoid = n.free_vars(bkind);
                avoid.extend(body.free_vars(bkind));
                let y2 = fresh_name(y, &avoid);
                let fresh = match bkind {
                    VarKind::L => LmmTerm::lvar(y2.clone()),
                    VarKind::R => LmmTerm::rvar(y2.clone()),
                };
                (y2, subst_var(body, bkind, y, &fresh))
            } else {
                (y.clone(), (**body).clone())
            };
            let body = Box::new(subst_var(&body, kind, x, n));
            match u {
                LmmTerm::Lam(..) => LmmTerm::Lam(y, a.clone(), body),
                LmmTerm::Mu(..) => LmmTerm::Mu(y, a.clone(), body),
                _ => LmmTerm::MuTilde(y, a.clone(), body),
            }
        }
    }
}

/// `u[x := t]` for an l-variable `x` and l-term `t`.
pub fn subst_l(u: &LmmTerm, x: &str, t: &LmmTerm) -> LmmTerm {
    debug_assert_eq!(t.sort(), Sort::L);
    subst_var(u, VarKind::L, x, t)
}

/// `u[α := e]` for an r-variable `α` and r-term `e`.
pub fn subst_r(u: &LmmTerm, alpha: &str, e: &LmmTerm) -> LmmTerm {
    debug_assert_eq!(e.sort(), Sort::R);
    subst_var(u, VarKind::R, alpha, e)
}

impl fmt::Display for LmmTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LmmTerm::Cut(t, e) => write!(f, "< {t} | {e} >"),
            LmmTerm::LVar(x) | LmmTerm::RVar(x) => write!(f, "{x}"),
            LmmTerm::Lam(x, a, t) => write!(f, "\\{x}:{a}. {t}"),
            LmmTerm::Mu(x, a, c) => write!(f, "mu {x}:{a}. {c}"),
            LmmTerm::MuTilde(x, a, c) => write!(f, "mut {x}:{a}. {c}"),
            LmmTerm::BarE(e) => write!(f, "bar({e})"),
            LmmTerm::TildeT(t) => write!(f, "tilde({t})"),
            LmmTerm::Cons(t, e) => match **t {
                LmmTerm::Lam(..) => write!(f, "({t}) . {e}"),
                _ => write!(f, "{t} . {e}"),
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

    #[test]
    fn substitution_examples() {
        let e = LmmTerm::tilde(LmmTerm::lvar("z"));
        let c = LmmTerm::cut(LmmTerm::lvar("y"), LmmTerm::rvar("al"));
        assert_eq!(subst_r(&c, "al", &e), LmmTerm::cut(LmmTerm::lvar("y"), e.clone()));

        let bound = LmmTerm::mutilde("x", a(), LmmTerm::cut(LmmTerm::lvar("x"), LmmTerm::rvar("be")));
        assert!(subst_l(&bound, "x", &LmmTerm::lvar("w")).alpha_eq(&bound));

        let twice = LmmTerm::cut(LmmTerm::lvar("x"), LmmTerm::tilde(LmmTerm::lvar("x")));
        let t = LmmTerm::bar(LmmTerm::rvar("g"));
        assert_eq!(subst_l(&twice, "x", &t), LmmTerm::cut(t.clone(), LmmTerm::tilde(t)));
    }

    #[test]
    fn substitution_avoids_capture_per_namespace() {
        // μβ.⌊x, α⌋ [α := β]: β must be renamed.
        let m = LmmTerm::mu("be", a(), LmmTerm::cut(LmmTerm::lvar("x"), LmmTerm::rvar("al")));
        let out = subst_r(&m, "al", &LmmTerm::rvar("be"));
        match &out {
            LmmTerm::Mu(b, _, body) => {
                assert_ne!(b, "be");
                assert_eq!(**body, LmmTerm::cut(LmmTerm::lvar("x"), LmmTerm::rvar("be")));
            }
            _ => panic!("{out}"),
        }
        // An l-binder named like the r-variable does not capture it.
        let m = LmmTerm::mutilde("be", a(), LmmTerm::cut(LmmTerm::lvar("be"), LmmTerm::rvar("al")));
        let out = subst_r(&m, "al", &LmmTerm::rvar("be"));
        assert_eq!(out, LmmTerm::mutilde("be", a(), LmmTerm::cut(LmmTerm::lvar("be"), LmmTerm::rvar("be"))));
    }

    #[test]
    fn purity_and_complexity() {
        let pure = LmmTerm::cut(
            LmmTerm::lam("x", a(), LmmTerm::lvar("x")),
            LmmTerm::cons(LmmTerm::lvar("y"), LmmTerm::rvar("al")),
        );
        assert!(is_pure_lmm(&pure));
        assert!(!is_pure_lmm(&LmmTerm::bar(LmmTerm::rvar("al"))));
        assert_eq!(cxty_lmm(&pure), 1);
        assert_eq!(cxty_lmm(&LmmTerm::bar(LmmTerm::tilde(LmmTerm::lvar("x")))), 2);
    }

    #[test]
    fn alpha_keys_separate_namespaces() {
        let m1 = LmmTerm::mu("al", a(), LmmTerm::cut(LmmTerm::lvar("al"), LmmTerm::rvar("al")));
        let m2 = LmmTerm::mu("be", a(), LmmTerm::cut(LmmTerm::lvar("al"), LmmTerm::rvar("be")));
        let m3 = LmmTerm::mu("be", a(), LmmTerm::cut(LmmTerm::lvar("be"), LmmTerm::rvar("be")));
        assert!(m1.alpha_eq(&m2));
        assert!(!m1.alpha_eq(&m3));
    }
}
