use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};

use super::{big_t, context_e, context_f, e_path, f_path, term_e, term_f, type_e, type_f, BridgeError};
use crate::lmm::{subst_l, subst_r, type_eq, typecheck_lmm, LmmSequent, LmmTerm, Sort};
use crate::lmm_reduce::{find_redexes_lmm, reduce_at_lmm, LmmRedexOccurrence, LmmRule, LmmTrace};
use crate::names::{barred, join, Path};
use crate::sym::{infer_type, neg_type, substitute, sym_equiv, Side, SymContext, SymTerm, SymType};
use crate::sym_reduce::{
    find_redexes, occurrence_at, reduce_at, RedexOccurrence, ReductionTrace, RuleSet, SymRule,
};

/// Default number of visited terms for the breadth-first fallback.
pub const SEARCH_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimStatus {
    Pass,
    /// The target is reached only after swapping the two sides of a cut.
    PassUpToSymmetry,
    Fail,
}

impl SimStatus {
    pub fn name(self) -> &'static str {
        match self {
            SimStatus::Pass => "pass",
            SimStatus::PassUpToSymmetry => "pass-up-to-symmetry",
            SimStatus::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub enum SimWitness {
    Sym(ReductionTrace),
    Lmm(LmmTrace),
    Equivalence { left: SymTerm, right: SymTerm },
    Missing,
}

impl SimWitness {
    fn to_json(&self) -> Value {
        match self {
            SimWitness::Sym(t) => json!({ "start": t.start.to_string(), "trace": t.to_json() }),
            SimWitness::Lmm(t) => json!({ "start": t.start.to_string(), "trace": t.to_json() }),
            SimWitness::Equivalence { left, right } => {
                json!({ "equivalence": [left.to_string(), right.to_string()] })
            }
            SimWitness::Missing => Value::Null,
        }
    }
}

/// Outcome of checking that one source step is matched on the other side.
#[derive(Clone, Debug)]
pub struct SimVerdict {
    pub rule: String,
    pub status: SimStatus,
    pub witness: SimWitness,
    /// Whether the witness is the chain read off the proof rather than a
    /// search result.
    pub guided: bool,
    pub note: String,
}

impl SimVerdict {
    /// Length of the witness trace; 0 for an equivalence or a failure.
    pub fn steps(&self) -> usize {
        match &self.witness {
            SimWitness::Sym(t) => t.len(),
            SimWitness::Lmm(t) => t.len(),
            _ => 0,
        }
    }

    pub fn to_json(&self, theorem: &str, sample: usize) -> Value {
        json!({
            "theorem": theorem,
            "sample": sample,
            "rule": self.rule,
            "status": self.status.name(),
            "guided": self.guided,
            "note": self.note,
            "witness": self.witness.to_json(),
        })
    }
}

fn replay_sym(start: &SymTerm, chain: &[(Path, SymRule)]) -> Option<ReductionTrace> {
    let mut trace = ReductionTrace::new(start.clone());
    for (path, rule) in chain {
        let occ = occurrence_at(trace.end(), path, *rule)?;
        trace.step(occ).ok()?;
    }
    Some(trace)
}

fn replay_lmm(start: &LmmTerm, chain: &[(Path, LmmRule)]) -> Option<LmmTrace> {
    let occs: Vec<_> = chain.iter().map(|(p, r)| LmmRedexOccurrence::new(p.clone(), *r)).collect();
    LmmTrace::replay(start.clone(), &occs).ok()
}

/// Breadth-first search for a nonempty path from `start` to a term whose
/// key is `goal`, visiting at most `budget` terms.
fn bfs<T: Clone, O: Clone>(
    start: &T,
    goal: &str,
    budget: usize,
    key: impl Fn(&T) -> String,
    succ: impl Fn(&T) -> Vec<(O, T)>,
) -> Option<Vec<O>> {
    let mut parent: HashMap<String, Option<(String, O)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(key(start), None);
    queue.push_back(start.clone());
    let rebuild = |parent: &HashMap<String, Option<(String, O)>>, last: String, occ: O| {
        let mut path = vec![occ];
        let mut cur = last;
        while let Some(Some((prev, o))) = parent.get(&cur) {
            path.push(o.clone());
            cur = prev.clone();
        }
        path.reverse();
        path
    };
    while let Some(t) = queue.pop_front() {
        let k = key(&t);
        for (occ, next) in succ(&t) {
            let nk = key(&next);
            if nk == goal {
                return Some(rebuild(&parent, k, occ));
            }
            if parent.len() >= budget || parent.contains_key(&nk) {
                continue;
            }
            parent.insert(nk, Some((k.clone(), occ)));
            queue.push_back(next);
        }
    }
    None
}

fn search_sym(start: &SymTerm, goal: &SymTerm, ctx: Option<&SymContext>, budget: usize) -> Option<ReductionTrace> {
    let rules = if ctx.is_some() { RuleSet::ALL } else { RuleSet::BETA_PI_ETA };
    let occs = bfs(start, &goal.alpha_key(), budget, SymTerm::alpha_key, |m| {
        find_redexes(m, ctx, rules)
            .unwrap_or_default()
            .into_iter()
            .filter_map(|o| reduce_at(m, &o).ok().map(|n| (o, n)))
            .collect()
    })?;
    ReductionTrace::replay(start.clone(), &occs).ok()
}

fn search_lmm(start: &LmmTerm, goal: &LmmTerm, budget: usize) -> Option<LmmTrace> {
    let occs = bfs(start, &goal.alpha_key(), budget, LmmTerm::alpha_key, |u| {
        find_redexes_lmm(u, &LmmRule::ALL)
            .into_iter()
            .filter_map(|o| reduce_at_lmm(u, &o).ok().map(|n| (o, n)))
            .collect()
    })?;
    LmmTrace::replay(start.clone(), &occs).ok()
}

fn at(r: &[usize], suffix: &[usize]) -> Path {
    join(r, suffix)
}

/// Checks that the λ̄μμ̃* step `occ` on `v` is matched in λSym: by a
/// nonempty trace from `vᵉ` to `wᵉ`, or for the bar/tilde rules by
/// `vᵉ ~ wᵉ`.
pub fn check_sim_e(
    seq: &LmmSequent,
    v: &LmmTerm,
    occ: &LmmRedexOccurrence,
    budget: usize,
) -> Result<SimVerdict, BridgeError> {
    let w = reduce_at_lmm(v, occ)?;
    let x = term_e(seq, v)?;
    let y = term_e(seq, &w)?;
    let rule = occ.rule.name().to_string();
    if occ.rule.is_cl() {
        let ok = sym_equiv(&x, &y);
        return Ok(SimVerdict {
            rule,
            status: if ok { SimStatus::Pass } else { SimStatus::Fail },
            witness: SimWitness::Equivalence { left: x, right: y },
            guided: true,
            note: String::new(),
        });
    }
    let r = e_path(v, &occ.path).expect("redex path lies in the term");
    let chain: Vec<(Path, SymRule)> = match occ.rule {
        LmmRule::Lambda => vec![
            (r.clone(), SymRule::BetaBot),
            (at(&r, &[1, 0]), SymRule::Pi),
            (at(&r, &[1]), SymRule::Eta),
            (at(&r, &[0, 0, 0, 0]), SymRule::Pi),
            (at(&r, &[0, 0, 0]), SymRule::Eta),
        ],
        LmmRule::Mu => vec![(r, SymRule::BetaBot)],
        LmmRule::MuTilde => vec![(r, SymRule::Beta)],
        LmmRule::SL => vec![(r, SymRule::EtaBot)],
        LmmRule::SR => vec![(r, SymRule::Eta)],
        _ => unreachable!("bar/tilde rules handled above"),
    };
    if let Some(trace) = replay_sym(&x, &chain) {
        if trace.end().alpha_eq(&y) {
            return Ok(SimVerdict {
                rule,
                status: SimStatus::Pass,
                witness: SimWitness::Sym(trace),
                guided: true,
                note: String::new(),
            });
        }
    }
    let ctx = context_e(seq)?;
    Ok(match search_sym(&x, &y, Some(&ctx), budget) {
        Some(trace) => SimVerdict {
            rule,
            status: SimStatus::Pass,
            witness: SimWitness::Sym(trace),
            guided: false,
            note: "proof chain did not apply; found by search".into(),
        },
        None => SimVerdict {
            rule,
            status: SimStatus::Fail,
            witness: SimWitness::Missing,
            guided: false,
            note: format!("no trace from {x} to {y} within {budget} visited terms"),
        },
    })
}

/// Checks that the λSym step `occ` on `m` is matched by a nonempty
/// λ̄μμ̃* trace from `mᶠ` to `nᶠ`.
pub fn check_sim_f(
    ctx: &SymContext,
    m: &SymTerm,
    occ: &RedexOccurrence,
    budget: usize,
) -> Result<SimVerdict, BridgeError> {
    let n = reduce_at(m, occ)?;
    let x = term_f(ctx, m)?;
    let y = term_f(ctx, &n)?;
    let r = f_path(m, &occ.path).expect("redex path lies in the term");
    let redex = m.subterm(&occ.path).expect("redex path lies in the term");
    let inj_side = |i: usize| match redex.subterm(&[i]) {
        Some(SymTerm::Inj(side, ..)) => *side,
        _ => Side::Left,
    };
    let chain: Vec<(Path, LmmRule)> = match occ.rule {
        SymRule::Beta => vec![(at(&r, &[1]), LmmRule::Cl1R), (r.clone(), LmmRule::MuTilde)],
        SymRule::BetaBot => vec![(r.clone(), LmmRule::Cl2), (r.clone(), LmmRule::MuTilde)],
        SymRule::Pi | SymRule::PiBot => {
            let (first, side) = if occ.rule == SymRule::Pi {
                ((at(&r, &[1]), LmmRule::Cl1R), inj_side(1))
            } else {
                ((r.clone(), LmmRule::Cl2), inj_side(0))
            };
            let mut c = vec![first, (r.clone(), LmmRule::Lambda), (r.clone(), LmmRule::MuTilde)];
            if side == Side::Left {
                c.push((r.clone(), LmmRule::Mu));
            }
            c
        }
        SymRule::Eta => vec![(at(&r, &[0]), LmmRule::SR), (r.clone(), LmmRule::Cl1L)],
        SymRule::EtaBot => vec![(at(&r, &[0, 0]), LmmRule::Cl2), (at(&r, &[0]), LmmRule::SR)],
        SymRule::Triv => Vec::new(),
    };
    let rule = occ.rule.name().to_string();
    let guided = if chain.is_empty() { None } else { replay_lmm(&x, &chain) };
    if let Some(trace) = &guided {
        if trace.end().alpha_eq(&y) {
            return Ok(SimVerdict {
                rule,
                status: SimStatus::Pass,
                witness: SimWitness::Lmm(trace.clone()),
                guided: true,
                note: String::new(),
            });
        }
    }
    if let Some(trace) = search_lmm(&x, &y, budget) {
        return Ok(SimVerdict {
            rule,
            status: SimStatus::Pass,
            witness: SimWitness::Lmm(trace),
            guided: false,
            note: "proof chain did not apply; found by search".into(),
        });
    }
    if occ.rule == SymRule::PiBot {
        if let (Some(trace), Some(SymTerm::Star(a, b))) = (&guided, n.subterm(&occ.path)) {
            let swapped = n
                .replace_at(&occ.path, SymTerm::star((**b).clone(), (**a).clone()))
                .expect("path exists");
            if trace.end().alpha_eq(&term_f(ctx, &swapped)?) {
                return Ok(SimVerdict {
                    rule,
                    status: SimStatus::PassUpToSymmetry,
                    witness: SimWitness::Lmm(trace.clone()),
                    guided: true,
                    note: "reaches the image of the reduct with its cut swapped".into(),
                });
            }
        }
    }
    Ok(SimVerdict {
        rule,
        status: SimStatus::Fail,
        witness: SimWitness::Missing,
        guided: false,
        note: format!("no trace from {x} to {y} within {budget} visited terms"),
    })
}

fn fe_chain(m: &SymTerm, base: &[usize], out: &mut Vec<(Path, SymRule)>) {
    match m {
        SymTerm::Var(_) => {}
        SymTerm::Star(p, q) | SymTerm::Pair(p, q) => {
            fe_chain(p, &at(base, &[0]), out);
            fe_chain(q, &at(base, &[1]), out);
        }
        SymTerm::Lam(_, _, body) => fe_chain(body, &at(base, &[0]), out),
        SymTerm::Inj(side, _, body) => {
            let head: [(&[usize], SymRule); 4] = match side {
                Side::Left => [
                    (&[0, 0, 0], SymRule::BetaBot),
                    (&[0, 0], SymRule::EtaBot),
                    (&[0], SymRule::BetaBot),
                    (&[], SymRule::EtaBot),
                ],
                Side::Right => [
                    (&[0, 0, 0], SymRule::Beta),
                    (&[0], SymRule::Beta),
                    (&[], SymRule::EtaBot),
                    (&[], SymRule::Triv),
                ],
            };
            for (suffix, rule) in head {
                if rule != SymRule::Triv {
                    out.push((at(base, suffix), rule));
                }
            }
            fe_chain(body, &at(base, &[0]), out);
        }
    }
}

/// A λSym trace from `mᶠᵉ` back to `m` with at most `max_steps` steps.
pub fn roundtrip_fe(ctx: &SymContext, m: &SymTerm, max_steps: usize) -> Result<Option<ReductionTrace>, BridgeError> {
    let start = term_e(&context_f(ctx)?, &term_f(ctx, m)?)?;
    let mut chain = Vec::new();
    fe_chain(m, &[], &mut chain);
    if let Some(trace) = replay_sym(&start, &chain) {
        if trace.end().alpha_eq(m) {
            return Ok((trace.len() <= max_steps).then_some(trace));
        }
    }
    if start.alpha_eq(m) {
        return Ok(Some(ReductionTrace::new(start)));
    }
    Ok(search_sym(&start, m, None, SEARCH_BUDGET).filter(|t| t.len() <= max_steps))
}

fn ef_chain(u: &LmmTerm, base: &[usize], out: &mut Vec<(Path, LmmRule)>) {
    match u {
        LmmTerm::LVar(_) | LmmTerm::RVar(_) => {}
        LmmTerm::Lam(_, _, v) => {
            out.push((at(base, &[0, 0, 1]), LmmRule::Cl1R));
            out.push((at(base, &[0, 0]), LmmRule::MuTilde));
            ef_chain(v, &at(base, &[0, 0, 0]), out);
        }
        LmmTerm::Mu(_, _, p) | LmmTerm::MuTilde(_, _, p) => ef_chain(p, &at(base, &[0, 0]), out),
        LmmTerm::BarE(inner) | LmmTerm::TildeT(inner) => ef_chain(inner, base, out),
        LmmTerm::Cut(t, e) => {
            ef_chain(t, &at(base, &[0]), out);
            ef_chain(e, &at(base, &[1, 0]), out);
        }
        LmmTerm::Cons(t, e) => {
            ef_chain(t, &at(base, &[0, 0]), out);
            ef_chain(e, &at(base, &[0, 1, 0]), out);
        }
    }
}

/// A λ̄μμ̃* trace from `uᵉᶠ` to `T(u)`.
pub fn roundtrip_ef(seq: &LmmSequent, u: &LmmTerm, budget: usize) -> Result<Option<LmmTrace>, BridgeError> {
    let start = term_f(&context_e(seq)?, &term_e(seq, u)?)?;
    let target = big_t(seq, u)?;
    let mut chain = Vec::new();
    ef_chain(u, &[], &mut chain);
    if let Some(trace) = replay_lmm(&start, &chain) {
        if trace.end().alpha_eq(&target) {
            return Ok(Some(trace));
        }
    }
    if start.alpha_eq(&target) {
        return Ok(Some(LmmTrace::new(start)));
    }
    Ok(search_lmm(&start, &target, budget))
}

/// `(u[x:=t])ᵉ` and `uᵉ[x:=tᵉ]` are α-equal. `t` must have the type of `x`.
pub fn check_subst_e_l(seq: &LmmSequent, u: &LmmTerm, x: &str, t: &LmmTerm) -> Result<bool, BridgeError> {
    let lhs = term_e(seq, &subst_l(u, x, t))?;
    let rhs = substitute(&term_e(seq, u)?, x, &term_e(seq, t)?);
    Ok(lhs.alpha_eq(&rhs))
}

/// `(u[α:=e])ᵉ` and `uᵉ[!α:=eᵉ]` are α-equal. `e` must have the type of `α`.
pub fn check_subst_e_r(seq: &LmmSequent, u: &LmmTerm, alpha: &str, e: &LmmTerm) -> Result<bool, BridgeError> {
    let lhs = term_e(seq, &subst_r(u, alpha, e))?;
    let rhs = substitute(&term_e(seq, u)?, &barred(alpha), &term_e(seq, e)?);
    Ok(lhs.alpha_eq(&rhs))
}

/// `(M[x:=N])ᶠ` and `Mᶠ[x:=Nᶠ]` are α-equal. `n` must have the type of `x`.
pub fn check_subst_f(ctx: &SymContext, m: &SymTerm, x: &str, n: &SymTerm) -> Result<bool, BridgeError> {
    let lhs = term_f(ctx, &substitute(m, x, n))?;
    let rhs = subst_l(&term_f(ctx, m)?, x, &term_f(ctx, n)?);
    Ok(lhs.alpha_eq(&rhs))
}

/// The image of a typed λ̄μμ̃* term typechecks under `context_e`: l-terms
/// of type `A` at `Aᵉ`, r-terms at `~(Aᵉ)`, commands at `#`.
pub fn transport_e(seq: &LmmSequent, u: &LmmTerm) -> Result<bool, BridgeError> {
    let ty = typecheck_lmm(seq, u)?;
    let expected = match (u.sort(), ty) {
        (Sort::L, Some(a)) => type_e(&a),
        (Sort::R, Some(a)) => neg_type(&type_e(&a))?,
        _ => SymType::Bottom,
    };
    let ctx = context_e(seq)?;
    Ok(infer_type(&ctx, &term_e(seq, u)?).map(|t| t == expected).unwrap_or(false))
}

/// The image of a typed λSym term typechecks under `context_f`: m-typed
/// terms as l-terms of type `Aᶠ`, `#`-typed terms as commands.
pub fn transport_f(ctx: &SymContext, m: &SymTerm) -> Result<bool, BridgeError> {
    let ty = infer_type(ctx, m)?;
    let seq = context_f(ctx)?;
    let u = term_f(ctx, m)?;
    let got = match typecheck_lmm(&seq, &u) {
        Ok(t) => t,
        Err(_) => return Ok(false),
    };
    Ok(match (ty, got) {
        (SymType::Bottom, None) => u.sort() == Sort::C,
        (a, Some(b)) if !a.is_bottom() => u.sort() == Sort::L && type_eq(&type_f(&a)?, &b),
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmm::{parse_lmm_sequent, parse_lmm_term};
    use crate::sym::{parse_sym_context, parse_sym_term};
    use crate::sym_reduce::find_redexes_untyped;

    fn lmm_step(seq: &LmmSequent, src: &str, rule: LmmRule) -> SimVerdict {
        let v = parse_lmm_term(src).unwrap();
        let occ = find_redexes_lmm(&v, &[rule]).into_iter().next().expect("redex present");
        check_sim_e(seq, &v, &occ, SEARCH_BUDGET).unwrap()
    }

    #[test]
    fn sim_e_mu_is_one_beta_bot() {
        let seq = parse_lmm_sequent("y:a", "ga:a").unwrap();
        let v = lmm_step(&seq, "< mu al:a. < y | al > | ga >", LmmRule::Mu);
        assert_eq!(v.status, SimStatus::Pass);
        let SimWitness::Sym(t) = &v.witness else { panic!() };
        assert_eq!(t.rules(), vec![SymRule::BetaBot]);
    }

    #[test]
    fn sim_e_s_l_is_one_eta_bot() {
        let seq = parse_lmm_sequent("y:a", "").unwrap();
        let v = lmm_step(&seq, "mu al:a. < y | al >", LmmRule::SL);
        assert_eq!(v.status, SimStatus::Pass);
        let SimWitness::Sym(t) = &v.witness else { panic!() };
        assert_eq!(t.rules(), vec![SymRule::EtaBot]);
    }

    #[test]
    fn sim_e_lambda_chain() {
        let seq = parse_lmm_sequent("x:a, w:b", "ga:b").unwrap();
        let v = lmm_step(&seq, "< \\z:a. w | x . ga >", LmmRule::Lambda);
        assert_eq!(v.status, SimStatus::Pass);
        assert!(v.guided);
        assert_eq!(v.steps(), 5);
    }

    #[test]
    fn sim_e_cl2_is_an_equivalence() {
        let seq = parse_lmm_sequent("x:a", "ga:a").unwrap();
        let v = lmm_step(&seq, "< bar(ga) | tilde(x) >", LmmRule::Cl2);
        assert_eq!(v.status, SimStatus::Pass);
        assert!(matches!(v.witness, SimWitness::Equivalence { .. }));
    }

    fn sym_step(ctx: &str, src: &str, rule: SymRule) -> SimVerdict {
        let ctx = parse_sym_context(ctx).unwrap();
        let m = parse_sym_term(src).unwrap();
        let occ = find_redexes_untyped(&m, RuleSet::of(&[rule])).into_iter().next().expect("redex present");
        check_sim_f(&ctx, &m, &occ, SEARCH_BUDGET).unwrap()
    }

    fn lmm_rules(v: &SimVerdict) -> Vec<LmmRule> {
        match &v.witness {
            SimWitness::Lmm(t) => t.rules(),
            _ => panic!("no trace"),
        }
    }

    #[test]
    fn sim_f_beta_and_beta_bot() {
        let v = sym_step("y:~a, z:a", "(\\x:a. (y * x) * z)", SymRule::Beta);
        assert_eq!(v.status, SimStatus::Pass);
        assert_eq!(lmm_rules(&v), vec![LmmRule::Cl1R, LmmRule::MuTilde]);
        let v = sym_step("y:~a, z:a", "(z * \\x:a. (x * y))", SymRule::BetaBot);
        assert_eq!(v.status, SimStatus::Pass);
        assert_eq!(lmm_rules(&v), vec![LmmRule::Cl2, LmmRule::MuTilde]);
    }

    #[test]
    fn sim_f_pi_chains() {
        let v = sym_step("p:a, q:b, r:~a", "(<p, q> * inl[~b] r)", SymRule::Pi);
        assert_eq!(v.status, SimStatus::Pass);
        assert_eq!(lmm_rules(&v), vec![LmmRule::Cl1R, LmmRule::Lambda, LmmRule::MuTilde, LmmRule::Mu]);
        let v = sym_step("p:a, q:b, r:~b", "(<p, q> * inr[~a] r)", SymRule::Pi);
        assert_eq!(v.status, SimStatus::Pass);
        assert_eq!(lmm_rules(&v), vec![LmmRule::Cl1R, LmmRule::Lambda, LmmRule::MuTilde]);
    }

    #[test]
    fn sim_f_pi_bot_only_up_to_symmetry() {
        let v = sym_step("p:a, q:b, r:~a", "(inl[~b] r * <p, q>)", SymRule::PiBot);
        assert_eq!(v.status, SimStatus::PassUpToSymmetry);
    }

    #[test]
    fn sim_f_eta_and_eta_bot() {
        let v = sym_step("y:~a", "\\x:a. (y * x)", SymRule::Eta);
        assert_eq!(lmm_rules(&v), vec![LmmRule::SR, LmmRule::Cl1L]);
        let v = sym_step("p:a, q:b", "\\x:~a \\/ ~b. (x * <p, q>)", SymRule::EtaBot);
        assert_eq!(lmm_rules(&v), vec![LmmRule::Cl2, LmmRule::SR]);
        // With a variable body the image is a normal form different from y.
        let v = sym_step("y:a", "\\x:~a. (x * y)", SymRule::EtaBot);
        assert_eq!(v.status, SimStatus::Fail);
    }

    #[test]
    fn roundtrip_fe_examples() {
        let ctx = parse_sym_context("p:a, q:~b, r:b").unwrap();
        for (src, steps) in [("p", 0), ("<p, q>", 0), ("inl[b] p", 4), ("inr[a] r", 3), ("inl[~a] inr[a] r", 7)] {
            let m = parse_sym_term(src).unwrap();
            let t = roundtrip_fe(&ctx, &m, 100).unwrap().unwrap_or_else(|| panic!("{src}"));
            assert_eq!(t.len(), steps, "{src}");
            assert!(t.end().alpha_eq(&m));
        }
    }

    #[test]
    fn roundtrip_ef_examples() {
        let seq = parse_lmm_sequent("x:a, y:~a", "ga:a").unwrap();
        for (src, steps) in [("x", 0), ("mut z:a. < z | ga >", 0), ("\\z:a. x", 2), ("< \\z:a. z | x . ga >", 2)] {
            let u = parse_lmm_term(src).unwrap();
            let t = roundtrip_ef(&seq, &u, SEARCH_BUDGET).unwrap().unwrap_or_else(|| panic!("{src}"));
            assert_eq!(t.len(), steps, "{src}");
        }
    }

    #[test]
    fn substitution_lemmas() {
        let seq = parse_lmm_sequent("x:a, t:a, y:~a", "ga:a, de:a").unwrap();
        let u = parse_lmm_term("< \\z:a. x | x . ga >").unwrap();
        let t = parse_lmm_term("mu be:a. < t | be >").unwrap();
        assert!(check_subst_e_l(&seq, &u, "x", &t).unwrap());
        let e = parse_lmm_term("mut z:a. < z | de >").unwrap();
        assert!(check_subst_e_r(&seq, &u, "ga", &e).unwrap());
        let ctx = parse_sym_context("x:a /\\ b, y:~a \\/ ~b, p:a, q:b").unwrap();
        let m = parse_sym_term("\\k:a. (y * x)").unwrap();
        let n = parse_sym_term("<p, q>").unwrap();
        assert!(check_subst_f(&ctx, &m, "x", &n).unwrap());
    }

    #[test]
    fn transport() {
        let seq = parse_lmm_sequent("x:a, y:~a", "ga:a").unwrap();
        for src in ["x", "mut z:a. < z | ga >", "x . ga", "< x | ga >", "\\z:a. x", "mu be:a. < x | ga >"] {
            assert!(transport_e(&seq, &parse_lmm_term(src).unwrap()).unwrap(), "{src}");
        }
        let ctx = parse_sym_context("p:a, q:~a, r:b").unwrap();
        for src in ["(p * q)", "inl[b] p", "<p, r>", "\\x:a. (q * x)"] {
            assert!(transport_f(&ctx, &parse_sym_term(src).unwrap()).unwrap(), "{src}");
        }
    }
}
