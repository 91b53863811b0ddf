use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use super::redex::occurrence_at;
use super::{find_redexes, reduce_at, RedexOccurrence, ReduceError, ReductionTrace, RuleSet, SymRule};
use crate::names::{is_prefix, join};
use crate::sym::{cxty_term, SymContext, SymTerm};

/// Upper bound on terms visited by one fallback search.
const SEARCH_BUDGET: usize = 4_000;
/// Upper bound on commutations performed by one postponement.
const MAX_SWAPS: usize = 10_000;

#[derive(Debug, Clone, Error)]
pub enum PostponeError {
    #[error("trace does not have the required shape: {0}")]
    Shape(String),
    #[error("no reordering found for steps {index} and {}: {reason}", index + 1)]
    Stuck { index: usize, reason: String },
    /// The best reordering found only reaches the end term up to symmetry
    /// of the cut; `trace` is that reordering.
    #[error("reordering reaches the end term only up to symmetry")]
    OnlyUpToSymmetry { trace: ReductionTrace },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

#[derive(Clone, Debug)]
pub struct Postponed {
    pub trace: ReductionTrace,
    /// Some commutation needed the bounded search instead of a direct case.
    pub used_search: bool,
}

/// The occurrence of `rule` at `path`, with its linearity flag filled in.
/// Whether `rule` looks at the shape of child `child` of its redex.
fn inspects(rule: SymRule, child: usize) -> bool {
    match rule {
        SymRule::Beta => child == 0,
        SymRule::BetaBot => child == 1,
        SymRule::Pi | SymRule::PiBot => true,
        _ => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Exact,
    UpToSymmetry,
}

fn goal_key(m: &SymTerm, goal: Goal) -> String {
    match goal {
        Goal::Exact => m.alpha_key(),
        Goal::UpToSymmetry => m.equiv_key(),
    }
}

/// Search for a sequence of `rules` steps (η-rules or Triv, which strictly
/// decrease complexity) leading from `from` to `target`.
fn perm_search(
    from: &SymTerm,
    target: &SymTerm,
    rules: RuleSet,
    typing: Option<&SymContext>,
    goal: Goal,
) -> Option<Vec<RedexOccurrence>> {
    let target_key = goal_key(target, goal);
    let target_cx = cxty_term(target);
    let mut dead = HashSet::new();
    let mut budget = SEARCH_BUDGET;
    fn go(
        m: &SymTerm,
        target_key: &str,
        target_cx: usize,
        rules: RuleSet,
        typing: Option<&SymContext>,
        goal: Goal,
        dead: &mut HashSet<String>,
        budget: &mut usize,
    ) -> Option<Vec<RedexOccurrence>> {
        let key = goal_key(m, goal);
        if key == target_key {
            return Some(Vec::new());
        }
        if cxty_term(m) <= target_cx || dead.contains(&key) || *budget == 0 {
            return None;
        }
        *budget -= 1;
        for occ in find_redexes(m, typing, rules).ok()? {
            let next = reduce_at(m, &occ).ok()?;
            if let Some(mut rest) = go(&next, target_key, target_cx, rules, typing, goal, dead, budget) {
                rest.insert(0, occ);
                return Some(rest);
            }
        }
        dead.insert(key);
        None
    }
    go(from, &target_key, target_cx, rules, typing, goal, &mut dead, &mut budget)
}

/// Breadth-first search for `principal`⁺ followed by `permutation`* from
/// `u` to `w`, with at most `depth` principal steps.
fn fallback_search(
    u: &SymTerm,
    w: &SymTerm,
    principal: RuleSet,
    permutation: RuleSet,
    typing: Option<&SymContext>,
    depth: usize,
    goal: Goal,
) -> Option<Vec<RedexOccurrence>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((u.clone(), Vec::<RedexOccurrence>::new()));
    seen.insert(u.alpha_key());
    let mut budget = SEARCH_BUDGET;
    while let Some((m, path)) = queue.pop_front() {
        if !path.is_empty() {
            if let Some(rest) = perm_search(&m, w, permutation, typing, goal) {
                return Some(path.into_iter().chain(rest).collect());
            }
        }
        if path.len() >= depth || budget == 0 {
            continue;
        }
        budget -= 1;
        for occ in find_redexes(&m, typing, principal).ok()? {
            let next = reduce_at(&m, &occ).ok()?;
            if seen.insert(next.alpha_key()) {
                let mut p = path.clone();
                p.push(occ);
                queue.push_back((next, p));
            }
        }
    }
    None
}

/// Principal-step prefixes to try first when commuting an η/η⊥ step at
/// `e.path` with the βπ step `b`.
fn eta_candidates(u: &SymTerm, e: &RedexOccurrence, b: &RedexOccurrence) -> Vec<Vec<RedexOccurrence>> {
    let (p, s) = (&e.path, &b.path);
    let kept = if e.rule == SymRule::Eta { 0 } else { 1 };
    if is_prefix(p, s) {
        let a = join(&join(p, &[0, kept]), &s[p.len()..]);
        return occurrence_at(u, &a, b.rule).map(|o| vec![vec![o]]).unwrap_or_default();
    }
    if !is_prefix(s, p) {
        return occurrence_at(u, s, b.rule).map(|o| vec![vec![o]]).unwrap_or_default();
    }
    let t = &p[s.len()..];
    if !(t.len() == 1 && inspects(b.rule, t[0])) {
        return occurrence_at(u, s, b.rule).map(|o| vec![vec![o]]).unwrap_or_default();
    }
    // The η-expanded term is itself a λ taking part in the redex: contract
    // it first, then the redex it leaves behind.
    let first_rule = if t[0] == 0 { SymRule::Beta } else { SymRule::BetaBot };
    let Some(first) = occurrence_at(u, s, first_rule) else {
        return Vec::new();
    };
    let Ok(u1) = reduce_at(u, &first) else {
        return Vec::new();
    };
    let mut order = vec![b.rule];
    order.extend(RuleSet::BETA_PI.rules().filter(|r| *r != b.rule));
    order
        .into_iter()
        .filter_map(|r| occurrence_at(&u1, s, r))
        .map(|second| vec![first.clone(), second])
        .collect()
}

/// Principal-step prefixes to try first when commuting a Triv step with
/// the βπη step `b`.
fn triv_candidates(u: &SymTerm, tv: &RedexOccurrence, b: &RedexOccurrence) -> Vec<Vec<RedexOccurrence>> {
    let (q, s) = (&tv.path, &b.path);
    let target = if is_prefix(q, s) {
        join(&join(q, &tv.focus), &s[q.len()..])
    } else {
        s.clone()
    };
    occurrence_at(u, &target, b.rule).map(|o| vec![vec![o]]).unwrap_or_default()
}

struct Commuter<'a> {
    principal: RuleSet,
    permutation: RuleSet,
    typing: Option<&'a SymContext>,
    candidates: fn(&SymTerm, &RedexOccurrence, &RedexOccurrence) -> Vec<Vec<RedexOccurrence>>,
}

enum Swap {
    Direct(Vec<RedexOccurrence>),
    Searched(Vec<RedexOccurrence>),
    Symmetric(Vec<RedexOccurrence>),
    None,
}

impl Commuter<'_> {
    /// Rewrites `u -perm-> v -principal-> w` into principal⁺ permutation*.
    fn swap(&self, u: &SymTerm, perm: &RedexOccurrence, princ: &RedexOccurrence, w: &SymTerm) -> Swap {
        let candidates = (self.candidates)(u, perm, princ);
        for goal in [Goal::Exact, Goal::UpToSymmetry] {
            for prefix in &candidates {
                let Ok(tr) = ReductionTrace::replay(u.clone(), prefix) else {
                    continue;
                };
                if let Some(rest) = perm_search(tr.end(), w, self.permutation, self.typing, goal) {
                    let all = prefix.iter().cloned().chain(rest).collect();
                    return match goal {
                        Goal::Exact => Swap::Direct(all),
                        Goal::UpToSymmetry => Swap::Symmetric(all),
                    };
                }
            }
            let depth = 4 + cxty_term(u);
            if let Some(all) = fallback_search(u, w, self.principal, self.permutation, self.typing, depth, goal) {
                return match goal {
                    Goal::Exact => Swap::Searched(all),
                    Goal::UpToSymmetry => Swap::Symmetric(all),
                };
            }
        }
        Swap::None
    }

    /// Searches the whole trace at once when a local swap fails: an
    /// earlier permutation step may be what rules out the exact endpoint.
    fn global(&self, trace: &ReductionTrace) -> Option<Postponed> {
        let depth = 4 + cxty_term(&trace.start);
        let all = fallback_search(&trace.start, trace.end(), self.principal, self.permutation, self.typing, depth, Goal::Exact)?;
        let out = ReductionTrace::replay(trace.start.clone(), &all).ok()?;
        Some(Postponed {
            trace: out,
            used_search: true,
        })
    }

    fn run(&self, trace: &ReductionTrace, is_perm: impl Fn(SymRule) -> bool) -> Result<Postponed, PostponeError> {
        let mut occs = trace.occurrences();
        let mut used_search = false;
        for _ in 0..MAX_SWAPS {
            let Some(i) = (0..occs.len().saturating_sub(1))
                .find(|&i| is_perm(occs[i].rule) && !is_perm(occs[i + 1].rule))
            else {
                let out = ReductionTrace::replay(trace.start.clone(), &occs)?;
                return Ok(Postponed {
                    trace: out,
                    used_search,
                });
            };
            let prefix = ReductionTrace::replay(trace.start.clone(), &occs[..i + 2])?;
            let u = prefix.term_at(i).clone();
            let w = prefix.end().clone();
            match self.swap(&u, &occs[i], &occs[i + 1], &w) {
                Swap::Direct(new) => {
                    occs.splice(i..i + 2, new);
                }
                Swap::Searched(new) => {
                    used_search = true;
                    occs.splice(i..i + 2, new);
                }
                Swap::Symmetric(new) => {
                    if let Some(found) = self.global(trace) {
                        return Ok(found);
                    }
                    let mut head = occs[..i].to_vec();
                    head.extend(new);
                    let trace = ReductionTrace::replay(trace.start.clone(), &head)?;
                    return Err(PostponeError::OnlyUpToSymmetry { trace });
                }
                Swap::None => {
                    if let Some(found) = self.global(trace) {
                        return Ok(found);
                    }
                    return Err(PostponeError::Stuck {
                        index: i,
                        reason: format!("{} followed by {}", occs[i], occs[i + 1]),
                    });
                }
            }
        }
        Err(PostponeError::Stuck {
            index: 0,
            reason: "too many commutations".into(),
        })
    }
}

fn check_shape(trace: &ReductionTrace, is_perm: impl Fn(SymRule) -> bool, allowed: RuleSet, what: &str) -> Result<(), PostponeError> {
    let rules = trace.rules();
    if let Some(r) = rules.iter().find(|r| !allowed.contains(**r)) {
        return Err(PostponeError::Shape(format!("unexpected {r} step")));
    }
    let k = rules.iter().position(|r| !is_perm(*r)).ok_or_else(|| {
        PostponeError::Shape(format!("no {what} step after the prefix"))
    })?;
    if rules[k..].iter().any(|r| is_perm(*r)) {
        return Err(PostponeError::Shape("prefix steps after the principal part".into()));
    }
    if !trace.is_consistent() {
        return Err(PostponeError::Shape("recorded results do not match the steps".into()));
    }
    Ok(())
}

/// Reorders `U →*η V →⁺βπ W` into `U →⁺βπ V' →*η W` with the same endpoints
/// up to α.
pub fn postpone_e(trace: &ReductionTrace) -> Result<Postponed, PostponeError> {
    check_shape(trace, SymRule::is_eta, RuleSet::BETA_PI_ETA, "βπ")?;
    Commuter {
        principal: RuleSet::BETA_PI,
        permutation: RuleSet::ETA,
        typing: None,
        candidates: eta_candidates,
    }
    .run(trace, SymRule::is_eta)
}

/// Reorders `U →*Triv V →⁺βπη W` into `U →⁺βπη V' →*Triv W`.
pub fn postpone_triv(trace: &ReductionTrace, ctx: &SymContext) -> Result<Postponed, PostponeError> {
    let is_triv = |r: SymRule| r == SymRule::Triv;
    check_shape(trace, is_triv, RuleSet::ALL, "βπη")?;
    Commuter {
        principal: RuleSet::BETA_PI_ETA,
        permutation: RuleSet::TRIV,
        typing: Some(ctx),
        candidates: triv_candidates,
    }
    .run(trace, is_triv)
}

/// Bound on reordering a trace whose principal part is one linear β step:
/// the reordered trace is no longer than the original.
pub fn beta0_bound_holds(input: &ReductionTrace, output: &ReductionTrace) -> Option<bool> {
    let principal: Vec<_> = input.steps.iter().filter(|s| s.occ.rule.is_betapi()).collect();
    match principal.as_slice() {
        [only] if matches!(only.occ.rule, SymRule::Beta | SymRule::BetaBot) && only.occ.linear => {
            Some(output.len() <= input.len())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{parse_sym_context, parse_sym_term};

    fn t(s: &str) -> SymTerm {
        parse_sym_term(s).unwrap()
    }

    #[test]
    fn eta_then_beta_becomes_two_betas() {
        // ((λx.((λy.(y * z)) * x)) * w) →η ((λy.(y * z)) * w) →β (w * z)
        let u = t("((\\x:~a. ((\\y:~a. (y * z)) * x)) * w)");
        let tr = ReductionTrace::replay(
            u,
            &[
                RedexOccurrence::new(vec![0], SymRule::Eta),
                RedexOccurrence { linear: true, ..RedexOccurrence::new(vec![], SymRule::Beta) },
            ],
        )
        .unwrap();
        let out = postpone_e(&tr).unwrap();
        assert!(out.trace.end().alpha_eq(tr.end()));
        assert_eq!(out.trace.rules(), vec![SymRule::Beta, SymRule::Beta]);
        assert!(out.trace.steps[0].occ.linear);
        assert_eq!(beta0_bound_holds(&tr, &out.trace), Some(true));
    }

    #[test]
    fn pure_principal_trace_is_unchanged() {
        let u = t("((\\x:a. (y * x)) * z)");
        let tr = ReductionTrace::replay(u, &[RedexOccurrence::new(vec![], SymRule::Beta)]).unwrap();
        let out = postpone_e(&tr).unwrap();
        assert_eq!(out.trace.occurrences(), tr.occurrences());
    }

    #[test]
    fn eta_created_projection_with_swapped_sides() {
        // The η-step turns λx.(inl z * x) into inl z, creating a π redex
        // (⟨p, q⟩ * inl z). Contracting the β⊥ redex of the original term
        // instead yields (inl z * ⟨p, q⟩), whose π⊥ reduct (z * p) is the
        // mirror image of (p * z).
        let u = t("(<p, q> * \\x:a /\\ b. (inl[~b] z * x))");
        let tr = ReductionTrace::replay(
            u,
            &[RedexOccurrence::new(vec![1], SymRule::Eta), RedexOccurrence::new(vec![], SymRule::Pi)],
        )
        .unwrap();
        assert_eq!(*tr.end(), t("(p * z)"));
        match postpone_e(&tr) {
            Err(PostponeError::OnlyUpToSymmetry { trace }) => assert_eq!(*trace.end(), t("(z * p)")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_is_checked() {
        let u = t("\\x:a. (y * x)");
        let tr = ReductionTrace::replay(u, &[RedexOccurrence::new(vec![], SymRule::Eta)]).unwrap();
        assert!(matches!(postpone_e(&tr), Err(PostponeError::Shape(_))));
    }

    #[test]
    fn triv_inside_beta_argument() {
        let ctx = parse_sym_context("y:a, z:~c, w:c, v:~a").unwrap();
        // (λx.(x * v) * λu.(y * λs.(z * w)))  Triv inside the argument, then β.
        let u = t("((\\x:~a. (x * v)) * \\u:~a. (y * \\s:a. (z * w)))");
        let tr = ReductionTrace::replay(
            u,
            &[
                RedexOccurrence::triv(vec![1, 0], vec![1, 0]),
                RedexOccurrence { linear: true, ..RedexOccurrence::new(vec![], SymRule::Beta) },
            ],
        )
        .unwrap();
        let out = postpone_triv(&tr, &ctx).unwrap();
        assert!(out.trace.end().alpha_eq(tr.end()));
        assert_eq!(out.trace.rules().last(), Some(&SymRule::Triv));
    }

    #[test]
    fn triv_created_eta_redex_is_not_postponable() {
        // λx.(inl[~b] λs.(p * x) * w) →Triv λx.(p * x) →η p, and the start
        // term has no βπη redex at all.
        let ctx = parse_sym_context("p:~a, w:a /\\ b").unwrap();
        let u = t("\\x:a. (inl[~b] \\s:a. (p * x) * w)");
        assert!(crate::sym::typecheck_sym(&ctx, &u).is_ok());
        let tr = ReductionTrace::replay(
            u,
            &[RedexOccurrence::triv(vec![0], vec![0, 0, 0]), RedexOccurrence::new(vec![], SymRule::Eta)],
        )
        .unwrap();
        assert_eq!(*tr.end(), t("p"));
        assert!(matches!(postpone_triv(&tr, &ctx), Err(PostponeError::Stuck { .. })));
    }
}
