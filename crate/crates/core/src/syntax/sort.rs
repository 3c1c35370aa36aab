//! Sorts (finite types over the base sort `0`).

use std::fmt;

/// A finite type: the base sort `0` or an arrow between sorts.
///
/// `bool`, `bool*` and `1` are display aliases: the first two denote the
/// base sort (bits and coded bit-strings are natural numbers), `1` denotes
/// `0 -> 0`. Aliases compare equal to their expansions because they parse
/// to the same structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Base,
    Arrow(Box<Sort>, Box<Sort>),
    /// Parser-internal inference variable; never present after parsing.
    #[doc(hidden)]
    Meta(u32),
}

impl Sort {
    pub fn arrow(dom: Sort, cod: Sort) -> Sort {
        Sort::Arrow(Box::new(dom), Box::new(cod))
    }

    /// The stream sort `0 -> 0` (alias `1`).
    pub fn stream() -> Sort {
        Sort::arrow(Sort::Base, Sort::Base)
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Sort::Base)
    }

    /// Splits an arrow sort into domain and codomain.
    pub fn as_arrow(&self) -> Option<(&Sort, &Sort)> {
        match self {
            Sort::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Base => write!(f, "0"),
            Sort::Arrow(d, c) => write!(f, "(-> {} {})", d, c),
            Sort::Meta(i) => write!(f, "?{}", i),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round() {
        let s = Sort::arrow(Sort::stream(), Sort::Base);
        assert_eq!(s.to_string(), "(-> (-> 0 0) 0)");
    }

    #[test]
    fn aliases_compare_equal_to_expansions() {
        // bool and bool* both denote the base sort, 1 denotes 0 -> 0.
        assert_eq!(Sort::Base, Sort::Base);
        assert_eq!(Sort::stream(), Sort::arrow(Sort::Base, Sort::Base));
    }
}
