use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{neg_type, Side, SymError, SymTerm, SymType};
use crate::names::Path;

/// Typing context: each variable bound to an m-type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymContext(pub BTreeMap<String, SymType>);

impl SymContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &str) -> Option<&SymType> {
        self.0.get(x)
    }

    pub fn insert(&mut self, x: impl Into<String>, ty: SymType) -> Option<SymType> {
        self.0.insert(x.into(), ty)
    }

    pub fn with(mut self, x: impl Into<String>, ty: SymType) -> Self {
        self.insert(x, ty);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &SymType)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The context restricted to the given names.
    pub fn restrict(&self, names: &BTreeSet<String>) -> Self {
        SymContext(
            self.0
                .iter()
                .filter(|(k, _)| names.contains(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for SymContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}:{t}")?;
        }
        Ok(())
    }
}

impl FromIterator<(String, SymType)> for SymContext {
    fn from_iter<I: IntoIterator<Item = (String, SymType)>>(iter: I) -> Self {
        SymContext(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymTypingRule {
    Var,
    Pair,
    Inj(Side),
    Lam,
    Star,
}

/// A typing derivation; each node records the rule, its local context,
/// subject and conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymDerivation {
    pub rule: SymTypingRule,
    pub ctx: SymContext,
    pub subject: SymTerm,
    pub ty: SymType,
    pub premises: Vec<SymDerivation>,
}

impl SymDerivation {
    /// Every type mentioned anywhere in the derivation.
    pub fn types(&self) -> BTreeSet<SymType> {
        let mut out = BTreeSet::new();
        self.collect_types(&mut out);
        out
    }

    fn collect_types(&self, out: &mut BTreeSet<SymType>) {
        out.insert(self.ty.clone());
        out.extend(self.ctx.0.values().cloned());
        match &self.subject {
            SymTerm::Lam(_, ann, _) => {
                out.insert(ann.clone());
            }
            SymTerm::Inj(_, other, _) => {
                out.insert(other.clone());
            }
            _ => {}
        }
        for p in &self.premises {
            p.collect_types(out);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }
}

fn require_m_type(t: &SymType) -> Result<(), SymError> {
    if t.is_m_type() {
        Ok(())
    } else {
        Err(SymError::BottomInMPosition(t.clone()))
    }
}

/// Typechecks `m` and returns its unique type with the derivation.
pub fn typecheck_sym(ctx: &SymContext, m: &SymTerm) -> Result<(SymType, SymDerivation), SymError> {
    let d = derive(ctx, m)?;
    Ok((d.ty.clone(), d))
}

fn derive(ctx: &SymContext, m: &SymTerm) -> Result<SymDerivation, SymError> {
    let node = |rule, ty, premises| SymDerivation {
        rule,
        ctx: ctx.clone(),
        subject: m.clone(),
        ty,
        premises,
    };
    match m {
        SymTerm::Var(x) => {
            let t = ctx.get(x).ok_or_else(|| SymError::Unbound(x.clone()))?;
            require_m_type(t)?;
            Ok(node(SymTypingRule::Var, t.clone(), vec![]))
        }
        SymTerm::Pair(p, q) => {
            let dp = derive(ctx, p)?;
            let dq = derive(ctx, q)?;
            require_m_type(&dp.ty)?;
            require_m_type(&dq.ty)?;
            let t = SymType::and(dp.ty.clone(), dq.ty.clone());
            Ok(node(SymTypingRule::Pair, t, vec![dp, dq]))
        }
        SymTerm::Inj(side, other, body) => {
            require_m_type(other)?;
            let db = derive(ctx, body)?;
            require_m_type(&db.ty)?;
            let t = match side {
                Side::Left => SymType::or(db.ty.clone(), other.clone()),
                Side::Right => SymType::or(other.clone(), db.ty.clone()),
            };
            Ok(node(SymTypingRule::Inj(*side), t, vec![db]))
        }
        SymTerm::Lam(x, ann, body) => {
            require_m_type(ann)?;
            let inner = ctx.clone().with(x.clone(), ann.clone());
            let db = derive(&inner, body)?;
            if !db.ty.is_bottom() {
                return Err(SymError::LamBodyNotBottom {
                    binder: x.clone(),
                    found: db.ty.clone(),
                });
            }
            Ok(node(SymTypingRule::Lam, neg_type(ann)?, vec![db]))
        }
        SymTerm::Star(p, q) => {
            let dp = derive(ctx, p)?;
            let dq = derive(ctx, q)?;
            check_star(&dp.ty, &dq.ty)?;
            Ok(node(SymTypingRule::Star, SymType::Bottom, vec![dp, dq]))
        }
    }
}

fn check_star(left: &SymType, right: &SymType) -> Result<(), SymError> {
    require_m_type(left)?;
    require_m_type(right)?;
    if *left == neg_type(right)? {
        Ok(())
    } else {
        Err(SymError::StarMismatch {
            left: left.clone(),
            right: right.clone(),
        })
    }
}

/// The type of `m` without building a derivation.
pub fn infer_type(ctx: &SymContext, m: &SymTerm) -> Result<SymType, SymError> {
    let mut scope: Vec<(&str, &SymType)> = Vec::new();
    infer_scoped(ctx, &mut scope, m)
}

fn infer_scoped<'a>(
    ctx: &SymContext,
    scope: &mut Vec<(&'a str, &'a SymType)>,
    m: &'a SymTerm,
) -> Result<SymType, SymError> {
    match m {
        SymTerm::Var(x) => {
            let t = match scope.iter().rev().find(|(y, _)| y == x) {
                Some((_, t)) => (*t).clone(),
                None => ctx.get(x).cloned().ok_or_else(|| SymError::Unbound(x.clone()))?,
            };
            require_m_type(&t)?;
            Ok(t)
        }
        SymTerm::Pair(p, q) => {
            let tp = infer_scoped(ctx, scope, p)?;
            let tq = infer_scoped(ctx, scope, q)?;
            require_m_type(&tp)?;
            require_m_type(&tq)?;
            Ok(SymType::and(tp, tq))
        }
        SymTerm::Inj(side, other, body) => {
            require_m_type(other)?;
            let tb = infer_scoped(ctx, scope, body)?;
            require_m_type(&tb)?;
            Ok(match side {
                Side::Left => SymType::or(tb, other.clone()),
                Side::Right => SymType::or(other.clone(), tb),
            })
        }
        SymTerm::Lam(x, ann, body) => {
            require_m_type(ann)?;
            scope.push((x, ann));
            let tb = infer_scoped(ctx, scope, body);
            scope.pop();
            let tb = tb?;
            if !tb.is_bottom() {
                return Err(SymError::LamBodyNotBottom {
                    binder: x.clone(),
                    found: tb,
                });
            }
            neg_type(ann)
        }
        SymTerm::Star(p, q) => {
            let tp = infer_scoped(ctx, scope, p)?;
            let tq = infer_scoped(ctx, scope, q)?;
            check_star(&tp, &tq)?;
            Ok(SymType::Bottom)
        }
    }
}

/// Type of every subterm of a well-typed term, in pre-order with addresses.
pub fn subterm_types(ctx: &SymContext, m: &SymTerm) -> Result<Vec<(Path, SymType)>, SymError> {
    let mut out = Vec::new();
    let mut scope = Vec::new();
    walk_types(ctx, &mut scope, m, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn walk_types<'a>(
    ctx: &SymContext,
    scope: &mut Vec<(&'a str, &'a SymType)>,
    m: &'a SymTerm,
    here: &mut Path,
    out: &mut Vec<(Path, SymType)>,
) -> Result<(), SymError> {
    let t = infer_scoped(ctx, scope, m)?;
    out.push((here.clone(), t));
    let bound = if let SymTerm::Lam(x, ann, _) = m {
        scope.push((x, ann));
        true
    } else {
        false
    };
    let mut res = Ok(());
    for (i, c) in m.children().into_iter().enumerate() {
        here.push(i);
        res = walk_types(ctx, scope, c, here, out);
        here.pop();
        if res.is_err() {
            break;
        }
    }
    if bound {
        scope.pop();
    }
    res
}

/// Subformula closure of a sequent: every subformula of the context types
/// and of the conclusion, closed under negation, together with `⊥`.
pub fn subformula_closure(ctx: &SymContext, conclusion: &SymType) -> BTreeSet<SymType> {
    let mut out = BTreeSet::new();
    let roots = ctx.0.values().chain(std::iter::once(conclusion));
    for t in roots {
        for s in t.subformulas() {
            if let Ok(n) = neg_type(&s) {
                out.insert(n);
            }
            out.insert(s);
        }
    }
    out.insert(SymType::Bottom);
    out
}

/// `true` when every type in the derivation lies in the subformula closure
/// of its end sequent.
pub fn subformula_report(d: &SymDerivation) -> bool {
    let closure = subformula_closure(&d.ctx, &d.ty);
    d.types().iter().all(|t| closure.contains(t))
}

/// The types of `d` falling outside the closure, for diagnostics.
pub fn subformula_violations(d: &SymDerivation) -> Vec<SymType> {
    let closure = subformula_closure(&d.ctx, &d.ty);
    d.types().into_iter().filter(|t| !closure.contains(t)).collect()
}
