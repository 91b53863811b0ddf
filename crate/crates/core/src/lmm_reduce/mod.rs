//! Cut elimination for λ̄μμ̃*, with explicit resolution of the μ/μ̃ overlap.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::lmm::{subst_l, subst_r, LmmTerm, VarKind};
use crate::names::{fresh_name, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LmmRule {
    Lambda,
    Mu,
    MuTilde,
    SL,
    SR,
    Cl1L,
    Cl1R,
    Cl2,
}

impl LmmRule {
    pub const ALL: [LmmRule; 8] = [
        LmmRule::Lambda,
        LmmRule::Mu,
        LmmRule::MuTilde,
        LmmRule::SL,
        LmmRule::SR,
        LmmRule::Cl1L,
        LmmRule::Cl1R,
        LmmRule::Cl2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LmmRule::Lambda => "lambda",
            LmmRule::Mu => "mu",
            LmmRule::MuTilde => "mutilde",
            LmmRule::SL => "s_l",
            LmmRule::SR => "s_r",
            LmmRule::Cl1L => "cl1l",
            LmmRule::Cl1R => "cl1r",
            LmmRule::Cl2 => "cl2",
        }
    }

    pub fn from_name(s: &str) -> Option<LmmRule> {
        LmmRule::ALL.into_iter().find(|r| r.name() == s)
    }

    /// The complement rules, which the e-translation maps to equivalences.
    pub fn is_cl(self) -> bool {
        matches!(self, LmmRule::Cl1L | LmmRule::Cl1R | LmmRule::Cl2)
    }
}

impl fmt::Display for LmmRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LmmRedexOccurrence {
    pub path: Path,
    pub rule: LmmRule,
}

impl LmmRedexOccurrence {
    pub fn new(path: Path, rule: LmmRule) -> Self {
        LmmRedexOccurrence { path, rule }
    }
}

impl fmt::Display for LmmRedexOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.rule, self.path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no {rule} redex at {path:?}")]
pub struct StaleLmmOccurrence {
    pub rule: LmmRule,
    pub path: Path,
}

/// Rules whose left-hand side matches at the root of `u`, in rule order.
pub fn local_lmm_redexes(u: &LmmTerm) -> Vec<LmmRule> {
    let mut out = Vec::new();
    match u {
        LmmTerm::Cut(t, e) => {
            if matches!((&**t, &**e), (LmmTerm::Lam(..), LmmTerm::Cons(..))) {
                out.push(LmmRule::Lambda);
            }
            if let LmmTerm::Mu(..) = **t {
                out.push(LmmRule::Mu);
            }
            if let LmmTerm::MuTilde(..) = **e {
                out.push(LmmRule::MuTilde);
            }
            if matches!((&**t, &**e), (LmmTerm::BarE(_), LmmTerm::TildeT(_))) {
                out.push(LmmRule::Cl2);
            }
        }
        LmmTerm::Mu(alpha, _, c) => {
            if let LmmTerm::Cut(t, e) = &**c {
                if matches!(&**e, LmmTerm::RVar(b) if b == alpha) && !t.occurs_free(VarKind::R, alpha) {
                    out.push(LmmRule::SL);
                }
            }
        }
        LmmTerm::MuTilde(x, _, c) => {
            if let LmmTerm::Cut(t, e) = &**c {
                if matches!(&**t, LmmTerm::LVar(y) if y == x) && !e.occurs_free(VarKind::L, x) {
                    out.push(LmmRule::SR);
                }
            }
        }
        LmmTerm::BarE(e) if matches!(**e, LmmTerm::TildeT(_)) => out.push(LmmRule::Cl1L),
        LmmTerm::TildeT(t) if matches!(**t, LmmTerm::BarE(_)) => out.push(LmmRule::Cl1R),
        _ => {}
    }
    out
}

/// All redex occurrences in pre-order, restricted to `rules`.
pub fn find_redexes_lmm(u: &LmmTerm, rules: &[LmmRule]) -> Vec<LmmRedexOccurrence> {
    let mut out = Vec::new();
    for path in u.positions() {
        let sub = u.subterm(&path).expect("position exists");
        for rule in local_lmm_redexes(sub) {
            if rules.contains(&rule) {
                out.push(LmmRedexOccurrence::new(path.clone(), rule));
            }
        }
    }
    out
}

/// Contracts the `rule` redex at the root of `u`.
pub fn contract_lmm(u: &LmmTerm, rule: LmmRule) -> Option<LmmTerm> {
    if !local_lmm_redexes(u).contains(&rule) {
        return None;
    }
    Some(match (rule, u) {
        (LmmRule::Lambda, LmmTerm::Cut(l, r)) => {
            let (LmmTerm::Lam(x, a, t), LmmTerm::Cons(t2, e)) = (&**l, &**r) else {
                return None;
            };
            let (x, t) = if e.occurs_free(VarKind::L, x) {
                let mut avoid: BTreeSet<String> = e.free_l();
                avoid.extend(t.free_l());
                let x2 = fresh_name(x, &avoid);
                let t = subst_l(t, x, &LmmTerm::lvar(x2.clone()));
                (x2, t)
            } else {
                (x.clone(), (**t).clone())
            };
            LmmTerm::cut((**t2).clone(), LmmTerm::mutilde(x, a.clone(), LmmTerm::cut(t, (**e).clone())))
        }
        (LmmRule::Mu, LmmTerm::Cut(l, e)) => {
            let LmmTerm::Mu(alpha, _, p) = &**l else { return None };
            subst_r(p, alpha, e)
        }
        (LmmRule::MuTilde, LmmTerm::Cut(t, r)) => {
            let LmmTerm::MuTilde(x, _, p) = &**r else { return None };
            subst_l(p, x, t)
        }
        (LmmRule::SL, LmmTerm::Mu(_, _, c)) | (LmmRule::SR, LmmTerm::MuTilde(_, _, c)) => {
            let LmmTerm::Cut(t, e) = &**c else { return None };
            if rule == LmmRule::SL {
                (**t).clone()
            } else {
                (**e).clone()
            }
        }
        (LmmRule::Cl1L, LmmTerm::BarE(inner)) | (LmmRule::Cl1R, LmmTerm::TildeT(inner)) => {
            match &**inner {
                LmmTerm::TildeT(x) | LmmTerm::BarE(x) => (**x).clone(),
                _ => return None,
            }
        }
        (LmmRule::Cl2, LmmTerm::Cut(l, r)) => {
            let (LmmTerm::BarE(e), LmmTerm::TildeT(t)) = (&**l, &**r) else {
                return None;
            };
            LmmTerm::cut((**t).clone(), (**e).clone())
        }
        _ => return None,
    })
}

pub fn reduce_at_lmm(u: &LmmTerm, occ: &LmmRedexOccurrence) -> Result<LmmTerm, StaleLmmOccurrence> {
    let stale = || StaleLmmOccurrence {
        rule: occ.rule,
        path: occ.path.clone(),
    };
    let sub = u.subterm(&occ.path).ok_or_else(stale)?;
    let new = contract_lmm(sub, occ.rule).ok_or_else(stale)?;
    u.replace_at(&occ.path, new).ok_or_else(stale)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmmStep {
    pub occ: LmmRedexOccurrence,
    pub result: LmmTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmmTrace {
    pub start: LmmTerm,
    pub steps: Vec<LmmStep>,
}

impl LmmTrace {
    pub fn new(start: LmmTerm) -> Self {
        LmmTrace {
            start,
            steps: Vec::new(),
        }
    }

    pub fn replay(start: LmmTerm, occs: &[LmmRedexOccurrence]) -> Result<Self, StaleLmmOccurrence> {
        let mut tr = LmmTrace::new(start);
        for occ in occs {
            tr.step(occ.clone())?;
        }
        Ok(tr)
    }

    pub fn end(&self) -> &LmmTerm {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&mut self, occ: LmmRedexOccurrence) -> Result<&LmmTerm, StaleLmmOccurrence> {
        let result = reduce_at_lmm(self.end(), &occ)?;
        self.steps.push(LmmStep { occ, result });
        Ok(self.end())
    }

    pub fn rules(&self) -> Vec<LmmRule> {
        self.steps.iter().map(|s| s.occ.rule).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    json!({
                        "rule": s.occ.rule.name(),
                        "path": s.occ.path,
                        "term": s.result.to_string(),
                    })
                })
                .collect(),
        )
    }
}

/// How the next redex is chosen. The priority strategies contract the
/// leftmost-outermost redex and, when one cut is both a μ and a μ̃ redex,
/// fire the named rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LmmStrategy {
    PriorityMu,
    #[default]
    PriorityMuTilde,
    Random(u64),
}

impl LmmStrategy {
    pub fn parse(s: &str, seed: u64) -> Option<LmmStrategy> {
        match s {
            "mu" | "priority-mu" => Some(LmmStrategy::PriorityMu),
            "mutilde" | "priority-mutilde" => Some(LmmStrategy::PriorityMuTilde),
            "random" => Some(LmmStrategy::Random(seed)),
            _ => None,
        }
    }
}

fn choose(occs: &[LmmRedexOccurrence], strategy: LmmStrategy, rng: &mut ChaCha8Rng) -> Option<LmmRedexOccurrence> {
    let first = occs.first()?;
    let at_first = occs.iter().filter(|o| o.path == first.path);
    let pick = match strategy {
        LmmStrategy::PriorityMu => at_first.clone().find(|o| o.rule == LmmRule::Mu),
        LmmStrategy::PriorityMuTilde => at_first.clone().find(|o| o.rule == LmmRule::MuTilde),
        LmmStrategy::Random(_) => return occs.choose(rng).cloned(),
    };
    Some(pick.unwrap_or(first).clone())
}

#[derive(Clone, Debug)]
pub struct LmmNormalization {
    pub trace: LmmTrace,
    pub exhausted: bool,
}

pub fn normalize_lmm(u: &LmmTerm, strategy: LmmStrategy, fuel: usize) -> LmmNormalization {
    let seed = match strategy {
        LmmStrategy::Random(s) => s,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = LmmTrace::new(u.clone());
    loop {
        let occs = find_redexes_lmm(trace.end(), &LmmRule::ALL);
        let Some(occ) = choose(&occs, strategy, &mut rng) else {
            return LmmNormalization { trace, exhausted: false };
        };
        if trace.len() >= fuel {
            return LmmNormalization { trace, exhausted: true };
        }
        trace.step(occ).expect("chosen among current redexes");
    }
}
