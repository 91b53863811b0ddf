use std::collections::{HashMap, HashSet};

use super::{find_redexes_untyped, reduce_at, RedexOccurrence, ReductionTrace, RuleSet};
use crate::sym::{cxty_term, SymTerm};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnStatus {
    Normalizing,
    FuelExhausted,
    CycleFound,
}

impl SnStatus {
    pub fn name(self) -> &'static str {
        match self {
            SnStatus::Normalizing => "normalizing",
            SnStatus::FuelExhausted => "fuel-exhausted",
            SnStatus::CycleFound => "cycle-found",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SnReport {
    pub status: SnStatus,
    /// Length of the longest βπ-reduction, when the search completed.
    pub eta: Option<usize>,
    pub cxty: usize,
    /// A longest reduction (when normalizing) or a path into a cycle.
    pub witness: Option<ReductionTrace>,
    /// Distinct terms expanded by this search.
    pub visited: usize,
}

#[derive(Clone, Debug)]
struct Entry {
    eta: usize,
    best: Option<RedexOccurrence>,
}

/// Exhaustive longest-βπ-path search with a memo table that can be reused
/// across queries. Terms are identified up to α.
#[derive(Default)]
pub struct LongestSearch {
    memo: HashMap<String, Entry>,
}

struct Frame {
    key: String,
    succs: Vec<(RedexOccurrence, SymTerm)>,
    next: usize,
    eta: usize,
    best: Option<RedexOccurrence>,
}

enum Outcome {
    Done,
    Exhausted,
    Cycle(Vec<RedexOccurrence>),
}

impl LongestSearch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn known(&self, m: &SymTerm) -> Option<usize> {
        self.memo.get(&m.alpha_key()).map(|e| e.eta)
    }

    /// `budget` bounds the number of new terms expanded by this query.
    pub fn run(&mut self, m: &SymTerm, budget: usize) -> SnReport {
        let cxty = cxty_term(m);
        let (outcome, visited) = self.search(m, budget);
        match outcome {
            Outcome::Done => {
                let eta = self.memo[&m.alpha_key()].eta;
                let witness = self.witness(m);
                SnReport {
                    status: SnStatus::Normalizing,
                    eta: Some(eta),
                    cxty,
                    witness: Some(witness),
                    visited,
                }
            }
            Outcome::Exhausted => SnReport {
                status: SnStatus::FuelExhausted,
                eta: None,
                cxty,
                witness: None,
                visited,
            },
            Outcome::Cycle(path) => SnReport {
                status: SnStatus::CycleFound,
                eta: None,
                cxty,
                witness: ReductionTrace::replay(m.clone(), &path).ok(),
                visited,
            },
        }
    }

    fn expand(m: &SymTerm) -> Vec<(RedexOccurrence, SymTerm)> {
        find_redexes_untyped(m, RuleSet::BETA_PI)
            .into_iter()
            .map(|occ| {
                let next = reduce_at(m, &occ).expect("occurrence found on this term");
                (occ, next)
            })
            .collect()
    }

    fn search(&mut self, root: &SymTerm, budget: usize) -> (Outcome, usize) {
        let root_key = root.alpha_key();
        if self.memo.contains_key(&root_key) {
            return (Outcome::Done, 0);
        }
        let mut visited = 1;
        let mut on_stack: HashSet<String> = HashSet::new();
        on_stack.insert(root_key.clone());
        let mut stack = vec![Frame {
            key: root_key,
            succs: Self::expand(root),
            next: 0,
            eta: 0,
            best: None,
        }];
        while let Some(top) = stack.last_mut() {
            if top.next == top.succs.len() {
                let frame = stack.pop().expect("non-empty");
                on_stack.remove(&frame.key);
                let eta = frame.eta;
                let (key, best) = (frame.key, frame.best);
                self.memo.insert(key, Entry { eta, best });
                if let Some(parent) = stack.last_mut() {
                    let occ = parent.succs[parent.next].0.clone();
                    parent.next += 1;
                    if eta + 1 > parent.eta || parent.best.is_none() {
                        parent.eta = eta + 1;
                        parent.best = Some(occ);
                    }
                }
                continue;
            }
            let (occ, next) = &top.succs[top.next];
            let key = next.alpha_key();
            if let Some(e) = self.memo.get(&key) {
                let (eta, occ) = (e.eta, occ.clone());
                if eta + 1 > top.eta || top.best.is_none() {
                    top.eta = eta + 1;
                    top.best = Some(occ);
                }
                top.next += 1;
                continue;
            }
            if on_stack.contains(&key) {
                let mut path: Vec<RedexOccurrence> =
                    stack.iter().map(|f| f.succs[f.next].0.clone()).collect();
                path.truncate(stack.len());
                return (Outcome::Cycle(path), visited);
            }
            if visited >= budget {
                return (Outcome::Exhausted, visited);
            }
            visited += 1;
            let succs = Self::expand(next);
            on_stack.insert(key.clone());
            stack.push(Frame {
                key,
                succs,
                next: 0,
                eta: 0,
                best: None,
            });
        }
        (Outcome::Done, visited)
    }

    fn witness(&self, m: &SymTerm) -> ReductionTrace {
        let mut trace = ReductionTrace::new(m.clone());
        while let Some(Entry { best: Some(occ), .. }) = self.memo.get(&trace.end().alpha_key()) {
            trace.step(occ.clone()).expect("memoized step replays on α-variants");
        }
        trace
    }
}

/// η_βπ of `m` by exhaustive search, expanding at most `budget` terms.
pub fn longest_reduction_betapi(m: &SymTerm, budget: usize) -> SnReport {
    LongestSearch::new().run(m, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::parse_sym_term;

    fn eta(s: &str) -> Option<usize> {
        longest_reduction_betapi(&parse_sym_term(s).unwrap(), DEFAULT_BUDGET).eta
    }

    #[test]
    fn small_examples() {
        assert_eq!(eta("x"), Some(0));
        assert_eq!(eta("((\\x:a. (y * x)) * z)"), Some(1));
        assert_eq!(eta("((\\x:a. (y * x)) * \\w:~a. (w * z))"), Some(2));
    }

    #[test]
    fn witness_has_longest_length() {
        let m = parse_sym_term("((\\x:a. (y * x)) * \\w:~a. (w * z))").unwrap();
        let r = longest_reduction_betapi(&m, DEFAULT_BUDGET);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.is_consistent());
    }

    #[test]
    fn untyped_self_application_cycles() {
        // (λx.(x ⋆ x)) ⋆ (λx.(x ⋆ x)) reduces to itself.
        let m = parse_sym_term("((\\x:a. (x * x)) * \\x:a. (x * x))").unwrap();
        let r = longest_reduction_betapi(&m, 1000);
        assert_eq!(r.status, SnStatus::CycleFound);
        assert!(r.witness.is_some());
    }

    #[test]
    fn budget_is_reported() {
        let m = parse_sym_term("((\\x:a. (y * x)) * \\w:~a. (w * z))").unwrap();
        assert_eq!(longest_reduction_betapi(&m, 1).status, SnStatus::FuelExhausted);
    }
}
