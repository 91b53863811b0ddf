//! Typecheckers, reduction engines and translations for a symmetric
//! classical λ-calculus and the λ̄μμ̃* sequent calculus.

pub mod bridge;
pub mod lexer;
pub mod lmm;
pub mod lmm_reduce;
pub mod names;
pub mod sym;
pub mod sym_reduce;
pub mod testgen;
pub mod verify;
