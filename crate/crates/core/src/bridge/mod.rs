//! The translations between the two calculi and executable checks for the
//! results relating them.

mod bigt;
mod check;
mod translate_e;
mod translate_f;

use thiserror::Error;

use crate::lmm::LmmError;
use crate::lmm_reduce::StaleLmmOccurrence;
use crate::sym::SymError;
use crate::sym_reduce::ReduceError;

pub use bigt::big_t;
pub use check::{
    check_sim_e, check_sim_f, check_subst_e_l, check_subst_e_r, check_subst_f, roundtrip_ef, roundtrip_fe,
    transport_e, transport_f, SimStatus, SimVerdict, SimWitness, SEARCH_BUDGET,
};
pub use translate_e::{context_e, e_path, projection, term_e, type_e};
pub use translate_f::{context_f, f_path, term_f, type_f, type_f_respects_negation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("ill-typed input: {0}")]
    Untyped(String),
    #[error("# has no λ̄μμ̃* counterpart")]
    BottomType,
    #[error("translated context binds `{0}` twice")]
    NameCollision(String),
    #[error(transparent)]
    StaleSym(#[from] ReduceError),
    #[error(transparent)]
    StaleLmm(#[from] StaleLmmOccurrence),
}

impl From<SymError> for BridgeError {
    fn from(e: SymError) -> Self {
        BridgeError::Untyped(e.to_string())
    }
}

impl From<LmmError> for BridgeError {
    fn from(e: LmmError) -> Self {
        BridgeError::Untyped(e.to_string())
    }
}
