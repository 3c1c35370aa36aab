//! Syntax kernel: sorts, individual terms, formulas, proof terms, and the
//! s-expression reader and printer for all of them.

pub mod formula;
pub mod parse;
pub mod proof;
pub mod sort;
pub mod term;

pub use formula::Formula;
pub use parse::{parse_file, parse_formula, parse_proof, parse_term, Declarations, ParseError};
pub use proof::ProofTerm;
pub use sort::Sort;
pub use term::{ChoiceId, IndTerm};
