use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use super::SymType;
use crate::names::{fresh_name, Path};

/// Which disjunct an injection introduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }
}

/// λSym terms. `Inj` stores the disjunct it does *not* introduce and `Lam`
/// stores the type of its binder, so every typable term has a unique type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymTerm {
    Var(String),
    Pair(Box<SymTerm>, Box<SymTerm>),
    Inj(Side, SymType, Box<SymTerm>),
    Lam(String, SymType, Box<SymTerm>),
    Star(Box<SymTerm>, Box<SymTerm>),
}

impl SymTerm {
    pub fn var(x: impl Into<String>) -> Self {
        SymTerm::Var(x.into())
    }

    pub fn pair(p: SymTerm, q: SymTerm) -> Self {
        SymTerm::Pair(Box::new(p), Box::new(q))
    }

    pub fn inj(side: Side, other: SymType, body: SymTerm) -> Self {
        SymTerm::Inj(side, other, Box::new(body))
    }

    pub fn lam(x: impl Into<String>, ann: SymType, body: SymTerm) -> Self {
        SymTerm::Lam(x.into(), ann, Box::new(body))
    }

    pub fn star(p: SymTerm, q: SymTerm) -> Self {
        SymTerm::Star(Box::new(p), Box::new(q))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, SymTerm::Var(_))
    }

    pub fn children(&self) -> Vec<&SymTerm> {
        match self {
            SymTerm::Var(_) => vec![],
            SymTerm::Inj(_, _, b) | SymTerm::Lam(_, _, b) => vec![b],
            SymTerm::Pair(p, q) | SymTerm::Star(p, q) => vec![p, q],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            SymTerm::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            SymTerm::Lam(x, _, body) => {
                bound.push(x);
                body.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            SymTerm::Var(y) => y == x,
            SymTerm::Lam(y, _, body) => y != x && body.occurs_free(x),
            _ => self.children().iter().any(|c| c.occurs_free(x)),
        }
    }

    /// Number of free occurrences of `x`.
    pub fn count_free(&self, x: &str) -> usize {
        match self {
            SymTerm::Var(y) => usize::from(y == x),
            SymTerm::Lam(y, _, body) if y == x => 0,
            _ => self.children().iter().map(|c| c.count_free(x)).sum(),
        }
    }

    /// Every name occurring in the term, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            SymTerm::Var(x) => {
                out.insert(x.clone());
            }
            SymTerm::Lam(x, _, body) => {
                out.insert(x.clone());
                body.all_names(out);
            }
            _ => {
                for c in self.children() {
                    c.all_names(out);
                }
            }
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&SymTerm> {
        let Some((&first, rest)) = path.split_first() else {
            return Some(self);
        };
        let child = match (self, first) {
            (SymTerm::Pair(p, _) | SymTerm::Star(p, _), 0) => p,
            (SymTerm::Pair(_, q) | SymTerm::Star(_, q), 1) => q,
            (SymTerm::Inj(_, _, b) | SymTerm::Lam(_, _, b), 0) => b,
            _ => return None,
        };
        child.subterm(rest)
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut SymTerm> {
        match (self, i) {
            (SymTerm::Pair(p, _) | SymTerm::Star(p, _), 0) => Some(p),
            (SymTerm::Pair(_, q) | SymTerm::Star(_, q), 1) => Some(q),
            (SymTerm::Inj(_, _, b) | SymTerm::Lam(_, _, b), 0) => Some(b),
            _ => None,
        }
    }

    pub fn subterm_mut(&mut self, path: &[usize]) -> Option<&mut SymTerm> {
        let mut cur = self;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[usize], new: SymTerm) -> Option<SymTerm> {
        let mut out = self.clone();
        *out.subterm_mut(path)? = new;
        Some(out)
    }

    /// Binders crossed on the way from the root down to `path` (exclusive).
    pub fn binders_along(&self, path: &[usize]) -> Vec<&str> {
        let mut out = Vec::new();
        let mut cur = self;
        for &i in path {
            if let SymTerm::Lam(x, _, _) = cur {
                out.push(x.as_str());
            }
            match cur.children().get(i) {
                Some(c) => cur = c,
                None => break,
            }
        }
        out
    }

    /// Pre-order list of all subterm addresses.
    pub fn positions(&self) -> Vec<Path> {
        let mut out = Vec::new();
        self.walk_positions(&mut Vec::new(), &mut out);
        out
    }

    fn walk_positions(&self, here: &mut Path, out: &mut Vec<Path>) {
        out.push(here.clone());
        for (i, c) in self.children().into_iter().enumerate() {
            here.push(i);
            c.walk_positions(here, out);
            here.pop();
        }
    }

    /// Serialization in which bound names are replaced by binder depth, so
    /// two terms have equal keys iff they are α-equivalent.
    pub fn alpha_key(&self) -> String {
        let mut out = String::new();
        self.write_key(&mut Vec::new(), false, &mut out);
        out
    }

    /// Like [`alpha_key`](Self::alpha_key), but the two sides of every `Star`
    /// are put in a canonical order, so equal keys mean equal up to symmetry.
    pub fn equiv_key(&self) -> String {
        let mut out = String::new();
        self.write_key(&mut Vec::new(), true, &mut out);
        out
    }

    fn write_key<'a>(&'a self, env: &mut Vec<&'a str>, symmetric: bool, out: &mut String) {
        match self {
            SymTerm::Var(x) => match env.iter().rposition(|b| *b == x) {
                Some(level) => write!(out, "#{level}").unwrap(),
                None => write!(out, "${x};").unwrap(),
            },
            SymTerm::Pair(p, q) => {
                out.push_str("P(");
                p.write_key(env, symmetric, out);
                out.push(',');
                q.write_key(env, symmetric, out);
                out.push(')');
            }
            SymTerm::Inj(side, other, b) => {
                write!(out, "I{}[{other}](", side.index()).unwrap();
                b.write_key(env, symmetric, out);
                out.push(')');
            }
            SymTerm::Lam(x, ann, b) => {
                write!(out, "L[{ann}](").unwrap();
                env.push(x);
                b.write_key(env, symmetric, out);
                env.pop();
                out.push(')');
            }
            SymTerm::Star(p, q) => {
                let mut kp = String::new();
                let mut kq = String::new();
                p.write_key(env, symmetric, &mut kp);
                q.write_key(env, symmetric, &mut kq);
                if symmetric && kq < kp {
                    std::mem::swap(&mut kp, &mut kq);
                }
                write!(out, "S({kp},{kq})").unwrap();
            }
        }
    }

    pub fn alpha_eq(&self, other: &SymTerm) -> bool {
        self == other || self.alpha_key() == other.alpha_key()
    }
}

/// Term complexity: variables 0, pairs and cuts additive, λ and injections +1.
pub fn cxty_term(m: &SymTerm) -> usize {
    match m {
        SymTerm::Var(_) => 0,
        SymTerm::Pair(p, q) | SymTerm::Star(p, q) => cxty_term(p) + cxty_term(q),
        SymTerm::Inj(_, _, b) | SymTerm::Lam(_, _, b) => 1 + cxty_term(b),
    }
}

pub fn free_vars(m: &SymTerm) -> BTreeSet<String> {
    m.free_vars()
}

/// Equality up to swapping the arguments of `Star` nodes, and up to α.
pub fn sym_equiv(m: &SymTerm, n: &SymTerm) -> bool {
    m.equiv_key() == n.equiv_key()
}

/// Capture-avoiding `m[x := n]`.
pub fn substitute(m: &SymTerm, x: &str, n: &SymTerm) -> SymTerm {
    let mut map = BTreeMap::new();
    map.insert(x.to_string(), n.clone());
    subst_many(m, &map)
}

/// A simultaneous substitution `[x1 := N1, ..., xk := Nk]`, all images
/// sharing the declared type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimSubstitution {
    pub bindings: Vec<(String, SymTerm)>,
    pub ty: SymType,
}

impl SimSubstitution {
    pub fn new(ty: SymType) -> Self {
        SimSubstitution {
            bindings: Vec::new(),
            ty,
        }
    }

    pub fn with(mut self, x: impl Into<String>, n: SymTerm) -> Self {
        self.bindings.push((x.into(), n));
        self
    }

    pub fn domain(&self) -> Vec<&str> {
        self.bindings.iter().map(|(x, _)| x.as_str()).collect()
    }

    /// Membership in Σ_A: images are proper terms of the declared type
    /// under `ctx`.
    pub fn is_well_formed(&self, ctx: &super::SymContext) -> bool {
        self.bindings.iter().all(|(_, n)| {
            !n.is_var() && super::infer_type(ctx, n).is_ok_and(|t| t == self.ty)
        })
    }
}

pub fn apply_sim_subst(m: &SymTerm, s: &SimSubstitution) -> SymTerm {
    let mut map = BTreeMap::new();
    for (x, n) in &s.bindings {
        map.entry(x.clone()).or_insert_with(|| n.clone());
    }
    subst_many(m, &map)
}

pub(crate) fn subst_many(m: &SymTerm, map: &BTreeMap<String, SymTerm>) -> SymTerm {
    if map.is_empty() {
        return m.clone();
    }
    match m {
        SymTerm::Var(y) => map.get(y).cloned().unwrap_or_else(|| m.clone()),
        SymTerm::Pair(p, q) => SymTerm::pair(subst_many(p, map), subst_many(q, map)),
        SymTerm::Star(p, q) => SymTerm::star(subst_many(p, map), subst_many(q, map)),
        SymTerm::Inj(side, other, b) => SymTerm::inj(*side, other.clone(), subst_many(b, map)),
        SymTerm::Lam(y, ann, body) => {
            let inner: BTreeMap<String, SymTerm> = map
                .iter()
                .filter(|(x, _)| *x != y && body.occurs_free(x))
                .map(|(x, n)| (x.clone(), n.clone()))
                .collect();
            if inner.is_empty() {
                return m.clone();
            }
            let captured = inner.values().any(|n| n.occurs_free(y));
            if captured {
                let mut avoid = body.free_vars();
                for (x, n) in &inner {
                    avoid.insert(x.clone());
                    avoid.extend(n.free_vars());
                }
                let y2 = fresh_name(y, &avoid);
                let renamed = substitute(body, y, &SymTerm::Var(y2.clone()));
                SymTerm::lam(y2, ann.clone(), subst_many(&renamed, &inner))
            } else {
                SymTerm::lam(y.clone(), ann.clone(), subst_many(body, &inner))
            }
        }
    }
}

impl fmt::Display for SymTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymTerm::Var(x) => write!(f, "{x}"),
            SymTerm::Pair(p, q) => write!(f, "<{p}, {q}>"),
            SymTerm::Inj(Side::Left, other, b) => write!(f, "inl[{other}] {b}"),
            SymTerm::Inj(Side::Right, other, b) => write!(f, "inr[{other}] {b}"),
            SymTerm::Lam(x, ann, b) => write!(f, "\\{x}:{ann}. {b}"),
            SymTerm::Star(p, q) => write!(f, "({p} * {q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> SymTerm {
        SymTerm::var(x)
    }
    fn a() -> SymType {
        SymType::atom("a")
    }

    #[test]
    fn free_variable_examples() {
        assert_eq!(v("x").free_vars(), ["x".to_string()].into());
        let m = SymTerm::lam("x", a(), SymTerm::star(v("y"), v("x")));
        assert_eq!(m.free_vars(), ["y".to_string()].into());
        let m = SymTerm::pair(v("x"), SymTerm::lam("x", a(), v("x")));
        assert_eq!(m.free_vars(), ["x".to_string()].into());
    }

    #[test]
    fn substitution_examples() {
        let zz = SymTerm::pair(v("z"), v("z"));
        assert_eq!(
            substitute(&SymTerm::star(v("x"), v("y")), "x", &zz),
            SymTerm::star(zz.clone(), v("y"))
        );
        let m = SymTerm::lam("y", a(), v("x"));
        let out = substitute(&m, "x", &v("y"));
        match &out {
            SymTerm::Lam(b, _, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, v("y"));
            }
            _ => panic!("expected a lambda, got {out}"),
        }
        assert_eq!(substitute(&v("x"), "x", &zz), zz);
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let s = SimSubstitution::new(a()).with("x", v("y")).with("y", v("x"));
        let out = apply_sim_subst(&SymTerm::star(v("x"), v("y")), &s);
        assert_eq!(out, SymTerm::star(v("y"), v("x")));
        let empty = SimSubstitution::new(a());
        let m = SymTerm::lam("x", a(), SymTerm::star(v("y"), v("x")));
        assert_eq!(apply_sim_subst(&m, &empty), m);
    }

    #[test]
    fn alpha_and_symmetry() {
        let m = SymTerm::lam("x", a(), SymTerm::star(v("y"), v("x")));
        let n = SymTerm::lam("z", a(), SymTerm::star(v("y"), v("z")));
        assert!(m.alpha_eq(&n));
        assert!(!m.alpha_eq(&SymTerm::lam("y", a(), SymTerm::star(v("y"), v("y")))));
        let p = SymTerm::star(v("p"), v("q"));
        let q = SymTerm::star(v("q"), v("p"));
        assert!(sym_equiv(&p, &q));
        assert!(!p.alpha_eq(&q));
        assert!(sym_equiv(&SymTerm::pair(p.clone(), v("r")), &SymTerm::pair(q, v("r"))));
        assert!(sym_equiv(&p, &p));
    }

    #[test]
    fn complexity_of_terms() {
        let m = SymTerm::lam("x", a(), SymTerm::star(v("y"), SymTerm::inj(Side::Left, a(), v("x"))));
        assert_eq!(cxty_term(&m), 2);
        assert_eq!(cxty_term(&SymTerm::pair(v("x"), v("y"))), 0);
    }
}
