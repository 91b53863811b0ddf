use proptest::prelude::*;

use symlog_core::bridge::{
    check_sim_e, context_e, context_f, term_e, term_f, transport_e, transport_f, type_e, type_f,
    type_f_respects_negation, SimStatus, SEARCH_BUDGET,
};
use symlog_core::lmm::{parse_lmm_as, typecheck_lmm, type_eq};
use symlog_core::lmm_reduce::{find_redexes_lmm, reduce_at_lmm, LmmRule};
use symlog_core::sym::{neg_type, parse_sym_term, typecheck_sym, SymType};
use symlog_core::sym_reduce::{find_redexes, reduce_at, RuleSet};
use symlog_core::testgen::{GenConfig, LmmGen, SymGen};

fn sym_sample(seed: u64, size: usize) -> (symlog_core::sym::SymContext, symlog_core::sym::SymTerm, SymType) {
    SymGen::new(GenConfig::new(seed, size)).sample()
}

fn lmm_sample(seed: u64, size: usize) -> (symlog_core::lmm::LmmSequent, symlog_core::lmm::LmmTerm) {
    LmmGen::new(GenConfig::new(seed, size)).sample()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sym_print_parse_roundtrip(seed in any::<u64>(), size in 1usize..25) {
        let (_, m, _) = sym_sample(seed, size);
        let back = parse_sym_term(&m.to_string()).unwrap();
        prop_assert!(back.alpha_eq(&m), "{} reparsed as {}", m, back);
    }

    #[test]
    fn lmm_print_parse_roundtrip(seed in any::<u64>(), size in 1usize..25) {
        let (_, u) = lmm_sample(seed, size);
        let back = parse_lmm_as(&u.to_string(), u.sort()).unwrap();
        prop_assert!(back.alpha_eq(&u), "{} reparsed as {}", u, back);
    }

    #[test]
    fn generated_terms_have_their_type(seed in any::<u64>(), size in 1usize..25) {
        let (ctx, m, ty) = sym_sample(seed, size);
        let (got, _) = typecheck_sym(&ctx, &m).unwrap();
        prop_assert_eq!(got, ty);
        let (seq, u) = lmm_sample(seed, size);
        prop_assert!(typecheck_lmm(&seq, &u).is_ok());
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), size in 1usize..25) {
        let (c1, m1, t1) = sym_sample(seed, size);
        let (c2, m2, t2) = sym_sample(seed, size);
        prop_assert_eq!(c1.to_string(), c2.to_string());
        prop_assert_eq!(m1, m2);
        prop_assert_eq!(t1, t2);
        let (s1, u1) = lmm_sample(seed, size);
        let (s2, u2) = lmm_sample(seed, size);
        prop_assert_eq!(s1.to_string(), s2.to_string());
        prop_assert_eq!(u1, u2);
    }

    #[test]
    fn every_sym_step_preserves_type(seed in any::<u64>(), size in 1usize..20) {
        let (ctx, m, ty) = sym_sample(seed, size);
        for occ in find_redexes(&m, Some(&ctx), RuleSet::ALL).unwrap() {
            let n = reduce_at(&m, &occ).unwrap();
            let (got, _) = typecheck_sym(&ctx, &n).unwrap();
            prop_assert_eq!(&got, &ty, "{} --{}--> {}", m, occ, n);
        }
    }

    #[test]
    fn every_lmm_step_preserves_type(seed in any::<u64>(), size in 1usize..20) {
        let (seq, u) = lmm_sample(seed, size);
        let ty = typecheck_lmm(&seq, &u).unwrap();
        for occ in find_redexes_lmm(&u, &LmmRule::ALL) {
            let v = reduce_at_lmm(&u, &occ).unwrap();
            let got = typecheck_lmm(&seq, &v).unwrap();
            let same = match (&ty, &got) {
                (Some(a), Some(b)) => type_eq(a, b),
                (None, None) => true,
                _ => false,
            };
            prop_assert!(same, "{} --{}--> {}", u, occ, v);
        }
    }

    #[test]
    fn negation_is_an_involution(seed in any::<u64>(), depth in 0usize..5) {
        let a = SymGen::new(GenConfig::new(seed, 20)).gen_type(depth);
        prop_assume!(a != SymType::Bottom);
        let na = neg_type(&a).unwrap();
        prop_assert_ne!(&na, &a);
        prop_assert_eq!(neg_type(&na).unwrap(), a.clone());
        prop_assert!(type_f_respects_negation(&a));
    }

    #[test]
    fn type_translations_round_trip(seed in any::<u64>(), depth in 0usize..5) {
        let a = SymGen::new(GenConfig::new(seed, 20)).gen_type(depth);
        prop_assume!(a != SymType::Bottom);
        prop_assert_eq!(type_e(&type_f(&a).unwrap()), a);
    }

    #[test]
    fn translations_transport_typing(seed in any::<u64>(), size in 1usize..20) {
        let (ctx, m, _) = sym_sample(seed, size);
        prop_assert!(transport_f(&ctx, &m).unwrap());
        let u = term_f(&ctx, &m).unwrap();
        prop_assert!(typecheck_lmm(&context_f(&ctx).unwrap(), &u).is_ok());

        let (seq, v) = lmm_sample(seed, size);
        prop_assert!(transport_e(&seq, &v).unwrap());
        let n = term_e(&seq, &v).unwrap();
        prop_assert!(typecheck_sym(&context_e(&seq).unwrap(), &n).is_ok());
    }

    #[test]
    fn every_lmm_step_is_simulated(seed in any::<u64>(), size in 1usize..14) {
        let (seq, u) = lmm_sample(seed, size);
        for occ in find_redexes_lmm(&u, &LmmRule::ALL) {
            let v = check_sim_e(&seq, &u, &occ, SEARCH_BUDGET).unwrap();
            prop_assert_eq!(v.status, SimStatus::Pass, "{} at {}: {}", u, occ, v.note);
        }
    }
}
