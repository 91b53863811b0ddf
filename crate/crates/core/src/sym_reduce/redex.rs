use std::fmt;

use thiserror::Error;

use crate::names::{join, Path};
use crate::sym::{infer_type, substitute, Side, SymContext, SymError, SymTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymRule {
    Beta,
    BetaBot,
    Eta,
    EtaBot,
    Pi,
    PiBot,
    Triv,
}

impl SymRule {
    pub const ALL: [SymRule; 7] = [
        SymRule::Beta,
        SymRule::BetaBot,
        SymRule::Eta,
        SymRule::EtaBot,
        SymRule::Pi,
        SymRule::PiBot,
        SymRule::Triv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SymRule::Beta => "beta",
            SymRule::BetaBot => "beta_bot",
            SymRule::Eta => "eta",
            SymRule::EtaBot => "eta_bot",
            SymRule::Pi => "pi",
            SymRule::PiBot => "pi_bot",
            SymRule::Triv => "triv",
        }
    }

    pub fn from_name(s: &str) -> Option<SymRule> {
        SymRule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn is_betapi(self) -> bool {
        matches!(self, SymRule::Beta | SymRule::BetaBot | SymRule::Pi | SymRule::PiBot)
    }

    pub fn is_eta(self) -> bool {
        matches!(self, SymRule::Eta | SymRule::EtaBot)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for SymRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of enabled rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleSet(u8);

impl RuleSet {
    pub const BETA_PI: RuleSet = RuleSet(0b11_0011);
    pub const ETA: RuleSet = RuleSet(0b00_1100);
    /// β, β⊥, π, π⊥, η, η⊥.
    pub const BETA_PI_ETA: RuleSet = RuleSet(0b11_1111);
    pub const TRIV: RuleSet = RuleSet(0b100_0000);
    pub const ALL: RuleSet = RuleSet(0b111_1111);

    pub fn of(rules: &[SymRule]) -> RuleSet {
        RuleSet(rules.iter().fold(0, |acc, r| acc | r.bit()))
    }

    pub fn contains(self, r: SymRule) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn union(self, other: RuleSet) -> RuleSet {
        RuleSet(self.0 | other.0)
    }

    pub fn rules(self) -> impl Iterator<Item = SymRule> {
        SymRule::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

/// A rule applied at an address. For `Triv`, `focus` addresses the kept
/// subterm relative to `path`; it is empty for every other rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RedexOccurrence {
    pub path: Path,
    pub rule: SymRule,
    pub linear: bool,
    pub focus: Path,
}

impl RedexOccurrence {
    pub fn new(path: Path, rule: SymRule) -> Self {
        RedexOccurrence {
            path,
            rule,
            linear: false,
            focus: Vec::new(),
        }
    }

    pub fn triv(path: Path, focus: Path) -> Self {
        RedexOccurrence {
            path,
            rule: SymRule::Triv,
            linear: false,
            focus,
        }
    }
}

impl fmt::Display for RedexOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.rule, self.path)?;
        if self.rule == SymRule::Triv {
            write!(f, " keeping {:?}", self.focus)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("no {rule} redex at {path:?}")]
    Stale { rule: SymRule, path: Path },
    #[error("the triv rule needs a typing context")]
    TrivWithoutTyping,
    #[error("term is not typable: {0}")]
    Untyped(#[from] SymError),
}

/// The rule matching the subterm at the root of `m`, other than `Triv`.
pub(crate) fn local_redexes(m: &SymTerm, rules: RuleSet, out: &mut Vec<(SymRule, bool)>) {
    match m {
        SymTerm::Star(p, q) => {
            if rules.contains(SymRule::Beta) {
                if let SymTerm::Lam(x, _, body) = &**p {
                    out.push((SymRule::Beta, body.count_free(x) <= 1));
                }
            }
            if rules.contains(SymRule::BetaBot) {
                if let SymTerm::Lam(x, _, body) = &**q {
                    out.push((SymRule::BetaBot, body.count_free(x) <= 1));
                }
            }
            if rules.contains(SymRule::Pi)
                && matches!((&**p, &**q), (SymTerm::Pair(..), SymTerm::Inj(..)))
            {
                out.push((SymRule::Pi, false));
            }
            if rules.contains(SymRule::PiBot)
                && matches!((&**p, &**q), (SymTerm::Inj(..), SymTerm::Pair(..)))
            {
                out.push((SymRule::PiBot, false));
            }
        }
        SymTerm::Lam(x, _, body) => {
            if let SymTerm::Star(p, q) = &**body {
                if rules.contains(SymRule::Eta) && matches!(&**q, SymTerm::Var(y) if y == x) && !p.occurs_free(x) {
                    out.push((SymRule::Eta, false));
                }
                if rules.contains(SymRule::EtaBot) && matches!(&**p, SymTerm::Var(y) if y == x) && !q.occurs_free(x) {
                    out.push((SymRule::EtaBot, false));
                }
            }
        }
        _ => {}
    }
}

/// Relative addresses of the `Star` subterms strictly inside the `Star` `e`
/// that may be kept by a Triv step: no binder between captures their free
/// variables.
fn triv_foci(e: &SymTerm) -> Vec<Path> {
    let mut out = Vec::new();
    let mut binders = Vec::new();
    for (i, c) in e.children().into_iter().enumerate() {
        triv_walk(c, &mut vec![i], &mut binders, &mut out);
    }
    out
}

fn triv_walk<'a>(m: &'a SymTerm, here: &mut Path, binders: &mut Vec<&'a str>, out: &mut Vec<Path>) {
    if let SymTerm::Star(..) = m {
        if binders.is_empty() || !binders.iter().any(|b| m.occurs_free(b)) {
            out.push(here.clone());
        }
    }
    let bound = if let SymTerm::Lam(x, _, _) = m {
        binders.push(x);
        true
    } else {
        false
    };
    for (i, c) in m.children().into_iter().enumerate() {
        here.push(i);
        triv_walk(c, here, binders, out);
        here.pop();
    }
    if bound {
        binders.pop();
    }
}

/// All redex occurrences of the selected rules in pre-order (outermost and
/// leftmost first); at one address the order is β, β⊥, η, η⊥, π, π⊥, Triv.
///
/// Triv needs a typing context: `m` is typechecked under it, after which
/// the ⊥-typed subterms are exactly the `Star` nodes.
pub fn find_redexes(
    m: &SymTerm,
    typing: Option<&SymContext>,
    rules: RuleSet,
) -> Result<Vec<RedexOccurrence>, ReduceError> {
    let with_triv = rules.contains(SymRule::Triv);
    if with_triv {
        let ctx = typing.ok_or(ReduceError::TrivWithoutTyping)?;
        infer_type(ctx, m)?;
    }
    let mut out = Vec::new();
    let mut local = Vec::new();
    for path in m.positions() {
        let sub = m.subterm(&path).expect("position exists");
        local.clear();
        local_redexes(sub, rules, &mut local);
        for &(rule, linear) in &local {
            out.push(RedexOccurrence {
                path: path.clone(),
                rule,
                linear,
                focus: Vec::new(),
            });
        }
        if with_triv && matches!(sub, SymTerm::Star(..)) {
            for focus in triv_foci(sub) {
                out.push(RedexOccurrence::triv(path.clone(), focus));
            }
        }
    }
    Ok(out)
}

/// Like [`find_redexes`] for rules not involving Triv; never fails.
pub fn find_redexes_untyped(m: &SymTerm, rules: RuleSet) -> Vec<RedexOccurrence> {
    let rules = RuleSet(rules.0 & !RuleSet::TRIV.0);
    find_redexes(m, None, rules).expect("no typing needed")
}

/// Contracts the redex of rule `rule` at the root of `m`.
pub fn contract(m: &SymTerm, rule: SymRule, focus: &[usize]) -> Option<SymTerm> {
    let stale = || None;
    match (rule, m) {
        (SymRule::Beta, SymTerm::Star(p, q)) => match &**p {
            SymTerm::Lam(x, _, body) => Some(substitute(body, x, q)),
            _ => stale(),
        },
        (SymRule::BetaBot, SymTerm::Star(q, p)) => match &**p {
            SymTerm::Lam(x, _, body) => Some(substitute(body, x, q)),
            _ => stale(),
        },
        (SymRule::Eta, SymTerm::Lam(x, _, body)) => match &**body {
            SymTerm::Star(p, v) if matches!(&**v, SymTerm::Var(y) if y == x) && !p.occurs_free(x) => {
                Some((**p).clone())
            }
            _ => stale(),
        },
        (SymRule::EtaBot, SymTerm::Lam(x, _, body)) => match &**body {
            SymTerm::Star(v, p) if matches!(&**v, SymTerm::Var(y) if y == x) && !p.occurs_free(x) => {
                Some((**p).clone())
            }
            _ => stale(),
        },
        (SymRule::Pi, SymTerm::Star(p, q)) => match (&**p, &**q) {
            (SymTerm::Pair(p1, p2), SymTerm::Inj(side, _, body)) => {
                let pi = if *side == Side::Left { p1 } else { p2 };
                Some(SymTerm::Star(pi.clone(), body.clone()))
            }
            _ => stale(),
        },
        (SymRule::PiBot, SymTerm::Star(q, p)) => match (&**q, &**p) {
            (SymTerm::Inj(side, _, body), SymTerm::Pair(p1, p2)) => {
                let pi = if *side == Side::Left { p1 } else { p2 };
                Some(SymTerm::Star(body.clone(), pi.clone()))
            }
            _ => stale(),
        },
        (SymRule::Triv, SymTerm::Star(..)) if !focus.is_empty() => {
            let kept = m.subterm(focus)?;
            let SymTerm::Star(..) = kept else { return stale() };
            let binders = m.binders_along(focus);
            if binders.iter().any(|b| kept.occurs_free(b)) {
                return stale();
            }
            Some(kept.clone())
        }
        _ => stale(),
    }
}

/// The occurrence of `rule` at `path`, if the subterm there is such a redex.
pub fn occurrence_at(m: &SymTerm, path: &[usize], rule: SymRule) -> Option<RedexOccurrence> {
    let sub = m.subterm(path)?;
    let mut local = Vec::new();
    local_redexes(sub, RuleSet::of(&[rule]), &mut local);
    local.first().map(|&(rule, linear)| RedexOccurrence {
        path: path.to_vec(),
        rule,
        linear,
        focus: Vec::new(),
    })
}

/// One reduction step at `occ`.
pub fn reduce_at(m: &SymTerm, occ: &RedexOccurrence) -> Result<SymTerm, ReduceError> {
    let stale = || ReduceError::Stale {
        rule: occ.rule,
        path: occ.path.clone(),
    };
    let sub = m.subterm(&occ.path).ok_or_else(stale)?;
    let new = contract(sub, occ.rule, &occ.focus).ok_or_else(stale)?;
    m.replace_at(&occ.path, new).ok_or_else(stale)
}

/// The address of the kept subterm of a Triv occurrence, from the root.
pub fn triv_target(occ: &RedexOccurrence) -> Path {
    join(&occ.path, &occ.focus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{parse_sym_context, parse_sym_term, typecheck_sym};

    fn t(s: &str) -> SymTerm {
        parse_sym_term(s).unwrap()
    }

    #[test]
    fn beta_at_root_is_linear() {
        let m = t("((\\x:a. (y * x)) * z)");
        let all = find_redexes_untyped(&m, RuleSet::ALL);
        assert_eq!(all[1], RedexOccurrence::new(vec![0], SymRule::Eta));
        let occs = find_redexes_untyped(&m, RuleSet::BETA_PI);
        assert_eq!(occs.len(), 1);
        assert_eq!(occs[0].rule, SymRule::Beta);
        assert!(occs[0].linear);
        assert_eq!(reduce_at(&m, &occs[0]).unwrap(), t("(y * z)"));
    }

    #[test]
    fn pi_selects_component() {
        let m = t("(<p, q> * inr[a] r)");
        let occs = find_redexes_untyped(&m, RuleSet::ALL);
        assert_eq!(occs, vec![RedexOccurrence::new(vec![], SymRule::Pi)]);
        assert_eq!(reduce_at(&m, &occs[0]).unwrap(), t("(q * r)"));
        let m = t("(inl[a] r * <p, q>)");
        let occ = RedexOccurrence::new(vec![], SymRule::PiBot);
        assert_eq!(reduce_at(&m, &occ).unwrap(), t("(r * p)"));
    }

    #[test]
    fn eta_strips_binder() {
        let m = t("\\x:a. (y * x)");
        let occ = RedexOccurrence::new(vec![], SymRule::Eta);
        assert_eq!(find_redexes_untyped(&m, RuleSet::ALL), vec![occ.clone()]);
        assert_eq!(reduce_at(&m, &occ).unwrap(), t("y"));
        assert!(find_redexes_untyped(&t("\\x:a. (x * x)"), RuleSet::ETA).is_empty());
    }

    #[test]
    fn triv_respects_binders() {
        let ctx = parse_sym_context("y:a, z:~c, w:c").unwrap();
        let m = t("(y * \\x:a. (z * w))");
        assert!(typecheck_sym(&ctx, &m).is_ok());
        let occs = find_redexes(&m, Some(&ctx), RuleSet::ALL).unwrap();
        assert_eq!(occs[0], RedexOccurrence { linear: true, ..RedexOccurrence::new(vec![], SymRule::BetaBot) });
        let occs = find_redexes(&m, Some(&ctx), RuleSet::TRIV).unwrap();
        assert_eq!(occs, vec![RedexOccurrence::triv(vec![], vec![1, 0])]);
        assert_eq!(reduce_at(&m, &occs[0]).unwrap(), t("(z * w)"));

        let ctx = parse_sym_context("y:a, z:~a").unwrap();
        let m = t("(y * \\x:a. (z * x))");
        let occs = find_redexes(&m, Some(&ctx), RuleSet::TRIV).unwrap();
        assert!(occs.is_empty());
        assert_eq!(
            find_redexes(&m, None, RuleSet::ALL),
            Err(ReduceError::TrivWithoutTyping)
        );
    }

    #[test]
    fn stale_occurrences_are_rejected() {
        let m = t("(y * z)");
        assert!(reduce_at(&m, &RedexOccurrence::new(vec![], SymRule::Beta)).is_err());
        assert!(reduce_at(&m, &RedexOccurrence::new(vec![0, 1], SymRule::Beta)).is_err());
    }

    #[test]
    fn both_beta_rules_on_lambda_pairs() {
        let m = t("((\\x:a. (y * x)) * \\w:~a. (w * z))");
        let rules: Vec<_> = find_redexes_untyped(&m, RuleSet::BETA_PI)
            .into_iter()
            .filter(|o| o.path.is_empty())
            .map(|o| o.rule)
            .collect();
        assert_eq!(rules, vec![SymRule::Beta, SymRule::BetaBot]);
    }
}
