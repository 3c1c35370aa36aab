//! The arithmetic layer: string coding, the defined standard library with
//! term normalization, bracket abstraction, Cantor-space terms and
//! formulas, and the axiom signature with its trusted lemma table.

pub mod bracket;
pub mod cantor;
pub mod encode;
pub mod signature;
pub mod stdlib;

pub use bracket::{bracket_abstract, term_sort};
pub use encode::{decode_string, encode_string};
pub use signature::{axiom, lemma_table, validate_lemma, AxiomEntry, RuntimeTag};
pub use stdlib::{normalize_term, normalize_with, ChoiceAnswer, ChoiceResolver, NoChoices, NormError};
