use serde_json::{json, Value};

use super::{reduce_at, RedexOccurrence, ReduceError, SymRule};
use crate::sym::SymTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub occ: RedexOccurrence,
    pub result: SymTerm,
}

/// A reduction sequence: a start term and the steps taken from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: SymTerm,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn new(start: SymTerm) -> Self {
        ReductionTrace {
            start,
            steps: Vec::new(),
        }
    }

    /// Builds a trace by replaying `occs` from `start`.
    pub fn replay(start: SymTerm, occs: &[RedexOccurrence]) -> Result<Self, ReduceError> {
        let mut tr = ReductionTrace::new(start);
        for occ in occs {
            tr.step(occ.clone())?;
        }
        Ok(tr)
    }

    pub fn end(&self) -> &SymTerm {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies `occ` to the current end and records the step.
    pub fn step(&mut self, occ: RedexOccurrence) -> Result<&SymTerm, ReduceError> {
        let result = reduce_at(self.end(), &occ)?;
        self.steps.push(TraceStep { occ, result });
        Ok(self.end())
    }

    pub fn push(&mut self, occ: RedexOccurrence, result: SymTerm) {
        self.steps.push(TraceStep { occ, result });
    }

    pub fn rules(&self) -> Vec<SymRule> {
        self.steps.iter().map(|s| s.occ.rule).collect()
    }

    pub fn occurrences(&self) -> Vec<RedexOccurrence> {
        self.steps.iter().map(|s| s.occ.clone()).collect()
    }

    /// The term before step `i` (so `term_at(len())` is the end).
    pub fn term_at(&self, i: usize) -> &SymTerm {
        if i == 0 {
            &self.start
        } else {
            &self.steps[i - 1].result
        }
    }

    /// Every recorded result is what its occurrence produces.
    pub fn is_consistent(&self) -> bool {
        let mut cur = &self.start;
        for s in &self.steps {
            match reduce_at(cur, &s.occ) {
                Ok(next) if next == s.result => cur = &s.result,
                _ => return false,
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    let mut v = json!({
                        "rule": s.occ.rule.name(),
                        "path": s.occ.path,
                        "term": s.result.to_string(),
                    });
                    if s.occ.rule == SymRule::Triv {
                        v["focus"] = json!(s.occ.focus);
                    }
                    v
                })
                .collect(),
        )
    }
}
