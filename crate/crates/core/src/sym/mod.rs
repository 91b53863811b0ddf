//! The symmetric calculus: types, terms, typing and substitution.

mod parse;
mod term;
mod types;
mod typing;

use thiserror::Error;

pub use parse::{parse_sym_context, parse_sym_term, parse_sym_term_with, parse_sym_type};
pub use term::{
    apply_sim_subst, cxty_term, free_vars, substitute, sym_equiv, Side, SimSubstitution, SymTerm,
};
pub use types::{cxty_type, neg_type, SymType};
pub use typing::{
    infer_type, subformula_closure, subformula_report, subformula_violations, subterm_types,
    typecheck_sym, SymContext, SymDerivation, SymTypingRule,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("negation is defined on m-types only")]
    NegationOfBottom,
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("body of \\{binder} has type {found}, expected #")]
    LamBodyNotBottom { binder: String, found: SymType },
    #[error("cut between {left} and {right}: left is not the negation of right")]
    StarMismatch { left: SymType, right: SymType },
    #[error("# used where an m-type is required (found {0})")]
    BottomInMPosition(SymType),
}
