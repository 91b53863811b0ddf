use symlog_core::lmm::{parse_lmm_term, LmmTerm};
use symlog_core::lmm_reduce::{find_redexes_lmm, normalize_lmm, LmmRule, LmmStrategy};
use symlog_core::sym::{parse_sym_context, parse_sym_term, typecheck_sym, SymContext, SymTerm};
use symlog_core::sym_reduce::{is_normal, normalize, NormalStatus, RuleSet, Strategy, SymRule};
use symlog_core::testgen::{GenConfig, LmmGen, SymGen};

fn sym(ctx: &str, m: &str) -> (SymContext, SymTerm) {
    (parse_sym_context(ctx).unwrap(), parse_sym_term(m).unwrap())
}

fn lmm(u: &str) -> LmmTerm {
    parse_lmm_term(u).unwrap()
}

#[test]
fn variable_has_an_empty_trace() {
    let (ctx, m) = sym("x:a", "x");
    let n = normalize(&m, Some(&ctx), Strategy::LeftmostOutermost, 10).unwrap();
    assert_eq!(n.status, NormalStatus::Normal);
    assert!(n.trace.is_empty());
}

#[test]
fn projection_takes_one_step() {
    let (ctx, m) = sym("p:a, q:b, r:~b", "(<p, q> * inr[~a] r)");
    let n = normalize(&m, Some(&ctx), Strategy::LeftmostOutermost, 10).unwrap();
    assert_eq!(n.status, NormalStatus::Normal);
    assert_eq!(n.trace.rules(), vec![SymRule::Pi]);
    assert!(n.trace.end().alpha_eq(&parse_sym_term("(q * r)").unwrap()));
}

#[test]
fn both_cut_orientations_of_a_lambda_pair_normalize() {
    // Each λ can be consumed by β or β⊥; both strategies reach a cut of y and z.
    let (ctx, m) = sym("y:a, z:~a", r"(\x:a. (x * z) * \w:~a. (y * w))");
    for st in [Strategy::LeftmostOutermost, Strategy::RightmostInnermost] {
        let n = normalize(&m, Some(&ctx), st, 10).unwrap();
        assert_eq!(n.status, NormalStatus::Normal);
        assert_eq!(n.trace.len(), 2);
        assert!(is_normal(n.trace.end(), Some(&ctx), RuleSet::ALL).unwrap());
    }
}

#[test]
fn fuel_exhaustion_is_reported() {
    let (ctx, m) = sym("y:~a, z:a", r"(\x:a. (y * x) * z)");
    let n = normalize(&m, Some(&ctx), Strategy::LeftmostOutermost, 0).unwrap();
    assert_eq!(n.status, NormalStatus::FuelExhausted);
    assert!(n.trace.is_empty());
}

#[test]
fn generated_sym_terms_normalize_under_every_strategy() {
    let mut g = SymGen::new(GenConfig::new(77, 20));
    for i in 0..60 {
        let (ctx, m, ty) = g.sample();
        for st in [Strategy::LeftmostOutermost, Strategy::RightmostInnermost, Strategy::Random(i)] {
            let n = normalize(&m, Some(&ctx), st, 100_000).unwrap();
            assert_eq!(n.status, NormalStatus::Normal, "{m}");
            let nf = n.trace.end();
            assert!(is_normal(nf, Some(&ctx), RuleSet::ALL).unwrap(), "{m} ends at {nf}");
            assert_eq!(typecheck_sym(&ctx, nf).unwrap().0, ty);
        }
    }
}

#[test]
fn random_strategy_is_seeded() {
    let mut g = SymGen::new(GenConfig::new(5, 20));
    for _ in 0..20 {
        let (ctx, m, _) = g.sample();
        let a = normalize(&m, Some(&ctx), Strategy::Random(9), 1000).unwrap();
        let b = normalize(&m, Some(&ctx), Strategy::Random(9), 1000).unwrap();
        assert_eq!(a.trace.to_json(), b.trace.to_json());
    }
}

#[test]
fn critical_pair_diverges() {
    let c = lmm("< mu al:a. < y | be > | mut x:a. < z | ga > >");
    let by_mu = normalize_lmm(&c, LmmStrategy::PriorityMu, 100);
    let by_mutilde = normalize_lmm(&c, LmmStrategy::PriorityMuTilde, 100);
    assert_eq!(by_mu.trace.rules(), vec![LmmRule::Mu]);
    assert_eq!(by_mutilde.trace.rules(), vec![LmmRule::MuTilde]);
    assert!(!by_mu.trace.end().alpha_eq(by_mutilde.trace.end()));
}

#[test]
fn generated_lmm_terms_normalize() {
    let mut g = LmmGen::new(GenConfig::new(31, 20));
    for i in 0..60 {
        let (_, u) = g.sample();
        for st in [LmmStrategy::PriorityMu, LmmStrategy::PriorityMuTilde, LmmStrategy::Random(i)] {
            let n = normalize_lmm(&u, st, 100_000);
            assert!(!n.exhausted, "{u}");
            assert!(find_redexes_lmm(n.trace.end(), &LmmRule::ALL).is_empty());
        }
    }
}
