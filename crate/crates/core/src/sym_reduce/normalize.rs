use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{find_redexes, ReduceError, ReductionTrace, RedexOccurrence, RuleSet};
use crate::names::is_prefix;
use crate::sym::{SymContext, SymTerm};

pub const DEFAULT_FUEL: usize = 100_000;

/// Normalization fuel: `SYMLOG_FUEL` if set, else [`DEFAULT_FUEL`].
pub fn default_fuel() -> usize {
    std::env::var("SYMLOG_FUEL")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_FUEL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    RightmostInnermost,
    Random(u64),
}

impl Strategy {
    pub fn parse(s: &str, seed: u64) -> Option<Strategy> {
        match s {
            "lo" | "leftmost-outermost" => Some(Strategy::LeftmostOutermost),
            "ri" | "rightmost-innermost" => Some(Strategy::RightmostInnermost),
            "random" => Some(Strategy::Random(seed)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalStatus {
    Normal,
    FuelExhausted,
}

#[derive(Clone, Debug)]
pub struct Normalization {
    pub trace: ReductionTrace,
    pub status: NormalStatus,
}

/// Picks the occurrence a strategy contracts next; `occs` is in pre-order.
pub(crate) fn choose<'a>(
    occs: &'a [RedexOccurrence],
    strategy: Strategy,
    rng: &mut ChaCha8Rng,
) -> Option<&'a RedexOccurrence> {
    match strategy {
        Strategy::LeftmostOutermost => occs.first(),
        Strategy::RightmostInnermost => occs
            .iter()
            .filter(|o| {
                !occs
                    .iter()
                    .any(|d| d.path.len() > o.path.len() && is_prefix(&o.path, &d.path))
            })
            .max_by(|a, b| a.path.cmp(&b.path)),
        Strategy::Random(_) => occs.choose(rng),
    }
}

/// Reduces until no redex is enabled or `fuel` steps were taken. With a
/// typing context every rule is enabled, Triv included; without one, Triv
/// is left out.
pub fn normalize(
    m: &SymTerm,
    typing: Option<&SymContext>,
    strategy: Strategy,
    fuel: usize,
) -> Result<Normalization, ReduceError> {
    let rules = if typing.is_some() {
        RuleSet::ALL
    } else {
        RuleSet::BETA_PI_ETA
    };
    normalize_with(m, typing, rules, strategy, fuel)
}

pub fn normalize_with(
    m: &SymTerm,
    typing: Option<&SymContext>,
    rules: RuleSet,
    strategy: Strategy,
    fuel: usize,
) -> Result<Normalization, ReduceError> {
    let seed = match strategy {
        Strategy::Random(s) => s,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = ReductionTrace::new(m.clone());
    loop {
        let occs = find_redexes(trace.end(), typing, rules)?;
        let Some(occ) = choose(&occs, strategy, &mut rng) else {
            return Ok(Normalization {
                trace,
                status: NormalStatus::Normal,
            });
        };
        if trace.len() >= fuel {
            return Ok(Normalization {
                trace,
                status: NormalStatus::FuelExhausted,
            });
        }
        let occ = occ.clone();
        trace.step(occ)?;
    }
}

pub fn is_normal(m: &SymTerm, typing: Option<&SymContext>, rules: RuleSet) -> Result<bool, ReduceError> {
    Ok(find_redexes(m, typing, rules)?.is_empty())
}
