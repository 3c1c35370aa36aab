//! Proof checking and proof execution for a minimal intuitionistic
//! predicate logic with shift/reset delimited control, instantiated over
//! arithmetic in finite types.
//!
//! The crate is organized as:
//!
//! - [`syntax`]: sorts, individual terms, formulas and proof terms, with
//!   substitution, alpha-equivalence and an s-expression reader/printer.
//! - [`arith`]: the arithmetic signature (equality axioms, induction,
//!   unique countable choice), the defined standard library (ifelse, min,
//!   bit-string operations), bracket abstraction and term normalization.
//! - [`check`]: the bidirectional proof checker with the reset-marker
//!   discipline, parameterized by a closed Sigma formula.
//! - [`eval`]: the call-by-value machine with shift/reset, witness
//!   extraction, and a CPS translation used as an independent semantics.
//! - [`fixtures`]: proof terms for double-negation shift, the minimal
//!   enumerable/decidable principle, and open induction on Cantor space,
//!   together with the cover harness and a brute-force bar oracle.

pub mod arith;
pub mod check;
pub mod eval;
pub mod fixtures;
pub mod syntax;

pub use syntax::{Formula, IndTerm, ProofTerm, Sort};
