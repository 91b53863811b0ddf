//! The λ̄μμ̃* sequent calculus: types, three-sorted terms, typing and
//! substitution.

mod parse;
mod term;
mod types;
mod typing;

use thiserror::Error;

pub use parse::{
    parse_lmm_as, parse_lmm_as_with, parse_lmm_bindings, parse_lmm_sequent, parse_lmm_term, parse_lmm_type,
};
pub use term::{cxty_lmm, is_pure_lmm, subst_l, subst_r, subst_var, LmmTerm, Sort, VarKind};
pub use types::{canonicalize_type, cxty_lmm_type, type_eq, LmmType};
pub use typing::{typecheck_lmm, LmmSequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmmError {
    #[error("unbound l-variable `{0}`")]
    UnboundL(String),
    #[error("unbound r-variable `{0}`")]
    UnboundR(String),
    #[error("cut between {left} and {right}")]
    CutMismatch { left: LmmType, right: LmmType },
    #[error("ill-sorted term `{0}`")]
    Sort(String),
}
