use super::{contract, LongestSearch, RuleSet, SnStatus, SymRule};
use super::redex::local_redexes;
use crate::sym::SymTerm;

/// Redexes `R_1, ..., R_n`, each expected to occur in the one-step reduct
/// of the previous one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoomInSequence {
    pub redexes: Vec<SymTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoomReport {
    pub structural: bool,
    pub minimal: Minimality,
}

fn root_reducts(r: &SymTerm) -> Vec<SymTerm> {
    let mut local = Vec::new();
    local_redexes(r, RuleSet::BETA_PI, &mut local);
    local
        .into_iter()
        .filter_map(|(rule, _): (SymRule, bool)| contract(r, rule, &[]))
        .collect()
}

fn occurs_in(needle: &SymTerm, hay: &SymTerm) -> bool {
    let key = needle.alpha_key();
    hay.positions()
        .iter()
        .any(|p| hay.subterm(p).is_some_and(|s| s.alpha_key() == key))
}

/// Structural validity of a zoom-in sequence and, within `sn_budget`,
/// minimality: every `R_i = (P_i * Q_i)` has strongly normalizing `P_i`
/// and `Q_i` while `R_i` itself is not strongly normalizing.
pub fn validate_zoomin(seq: &ZoomInSequence, sn_budget: usize) -> ZoomReport {
    let rs = &seq.redexes;
    let structural = !rs.is_empty()
        && rs.iter().all(|r| !root_reducts(r).is_empty())
        && rs
            .windows(2)
            .all(|w| root_reducts(&w[0]).iter().any(|red| occurs_in(&w[1], red)));
    let mut search = LongestSearch::new();
    let mut minimal = Minimality::Pass;
    for r in rs {
        let SymTerm::Star(p, q) = r else {
            minimal = Minimality::Fail;
            break;
        };
        let mut verdicts = Vec::new();
        for part in [&**p, &**q] {
            verdicts.push(match search.run(part, sn_budget).status {
                SnStatus::Normalizing => Minimality::Pass,
                SnStatus::CycleFound => Minimality::Fail,
                SnStatus::FuelExhausted => Minimality::Inconclusive,
            });
        }
        verdicts.push(match search.run(r, sn_budget).status {
            SnStatus::Normalizing => Minimality::Fail,
            SnStatus::CycleFound => Minimality::Pass,
            SnStatus::FuelExhausted => Minimality::Inconclusive,
        });
        if verdicts.contains(&Minimality::Fail) {
            minimal = Minimality::Fail;
            break;
        }
        if verdicts.contains(&Minimality::Inconclusive) {
            minimal = Minimality::Inconclusive;
        }
    }
    ZoomReport { structural, minimal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::parse_sym_term;

    fn t(s: &str) -> SymTerm {
        parse_sym_term(s).unwrap()
    }

    #[test]
    fn singleton_is_structural() {
        let seq = ZoomInSequence {
            redexes: vec![t("((\\x:a. (y * x)) * z)")],
        };
        let rep = validate_zoomin(&seq, 1000);
        assert!(rep.structural);
        assert_eq!(rep.minimal, Minimality::Fail);
    }

    #[test]
    fn chained_betas() {
        let r1 = t("((\\x:a. ((\\w:a. (y * w)) * x)) * z)");
        let r2 = t("((\\w:a. (y * w)) * z)");
        let seq = ZoomInSequence { redexes: vec![r1.clone(), r2.clone()] };
        assert!(validate_zoomin(&seq, 1000).structural);
        let seq = ZoomInSequence { redexes: vec![r2, r1] };
        assert!(!validate_zoomin(&seq, 1000).structural);
    }

    #[test]
    fn looping_redex_is_minimal() {
        let omega = t("((\\x:a. (x * x)) * \\x:a. (x * x))");
        let seq = ZoomInSequence { redexes: vec![omega.clone(), omega] };
        let rep = validate_zoomin(&seq, 1000);
        assert!(rep.structural);
        assert_eq!(rep.minimal, Minimality::Pass);
    }
}
