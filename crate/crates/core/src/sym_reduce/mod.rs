//! Redexes, reduction strategies and the reduction-sequence tools of the
//! symmetric calculus.

mod longest;
mod normalize;
mod postpone;
mod redex;
mod trace;
mod zoom;

pub use longest::{longest_reduction_betapi, LongestSearch, SnReport, SnStatus, DEFAULT_BUDGET};
pub use normalize::{default_fuel, is_normal, normalize, normalize_with, NormalStatus, Normalization, Strategy, DEFAULT_FUEL};
pub use postpone::{beta0_bound_holds, postpone_e, postpone_triv, PostponeError, Postponed};
pub use redex::{
    contract, find_redexes, find_redexes_untyped, occurrence_at, reduce_at, triv_target, RedexOccurrence, ReduceError, RuleSet,
    SymRule,
};
pub use trace::{ReductionTrace, TraceStep};
pub use zoom::{validate_zoomin, Minimality, ZoomInSequence, ZoomReport};
