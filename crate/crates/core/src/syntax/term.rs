//! Individual terms of the arithmetic: combinator syntax, no binders.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::sort::Sort;

/// Identifier for a runtime choice function. Terms containing one only
/// arise during evaluation; the parser never produces them.
pub type ChoiceId = u32;

/// An individual term. Numerals are iterated `Succ` of `Zero`; lambda
/// abstraction is not primitive (see `arith::bracket`), application is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndTerm {
    Var(String, Sort),
    Zero,
    Succ(Arc<IndTerm>),
    /// K combinator at sorts (rho, tau): `Pi x y = x`.
    Pi(Sort, Sort),
    /// S combinator at sorts (delta, rho, tau): `Sigma x y z = x z (y z)`.
    Sigma(Sort, Sort, Sort),
    /// Recursor at result sort rho: `R 0 y z = y`, `R (x+1) y z = z (R x y z) x`.
    Rec(Sort),
    App(Arc<IndTerm>, Arc<IndTerm>),
    /// Named defined constant from the standard library.
    Const(String),
    /// Opaque choice function of sort `0 -> 0`, backed by an evaluator memo.
    Choice(ChoiceId),
}

impl IndTerm {
    pub fn var(name: &str, sort: Sort) -> IndTerm {
        IndTerm::Var(name.to_string(), sort)
    }

    pub fn nvar(name: &str) -> IndTerm {
        IndTerm::Var(name.to_string(), Sort::Base)
    }

    pub fn app(f: IndTerm, a: IndTerm) -> IndTerm {
        IndTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps(f: IndTerm, args: impl IntoIterator<Item = IndTerm>) -> IndTerm {
        args.into_iter().fold(f, IndTerm::app)
    }

    pub fn cnst(name: &str) -> IndTerm {
        IndTerm::Const(name.to_string())
    }

    pub fn succ(t: IndTerm) -> IndTerm {
        IndTerm::Succ(Arc::new(t))
    }

    /// The numeral for `n`.
    pub fn numeral(n: u64) -> IndTerm {
        let mut t = IndTerm::Zero;
        for _ in 0..n {
            t = IndTerm::succ(t);
        }
        t
    }

    /// Reads a numeral back to a number, if the term is one.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                IndTerm::Zero => return Some(n),
                IndTerm::Succ(inner) => {
                    n += 1;
                    cur = inner;
                }
                _ => return None,
            }
        }
    }

    /// Splits an application spine: `f a b c` becomes `(f, [a, b, c])`.
    pub fn spine(&self) -> (&IndTerm, Vec<&IndTerm>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let IndTerm::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    fn collect_free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            IndTerm::Var(name, _) => {
                out.insert(name.clone());
            }
            IndTerm::Succ(t) => t.collect_free_vars(out),
            IndTerm::App(f, a) => {
                f.collect_free_vars(out);
                a.collect_free_vars(out);
            }
            _ => {}
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            IndTerm::Var(n, _) => n == name,
            IndTerm::Succ(t) => t.contains_var(name),
            IndTerm::App(f, a) => f.contains_var(name) || a.contains_var(name),
            _ => false,
        }
    }

    pub fn contains_choice(&self) -> bool {
        match self {
            IndTerm::Choice(_) => true,
            IndTerm::Succ(t) => t.contains_choice(),
            IndTerm::App(f, a) => f.contains_choice() || a.contains_choice(),
            _ => false,
        }
    }

    /// Substitutes `repl` for every occurrence of variable `name`.
    /// Terms have no binders, so no capture can occur here.
    pub fn subst(&self, name: &str, repl: &IndTerm) -> IndTerm {
        match self {
            IndTerm::Var(n, _) if n == name => repl.clone(),
            IndTerm::Succ(t) => IndTerm::succ(t.subst(name, repl)),
            IndTerm::App(f, a) => IndTerm::app(f.subst(name, repl), a.subst(name, repl)),
            _ => self.clone(),
        }
    }

    /// Renames a variable, preserving each occurrence's sort.
    pub fn rename_var(&self, old: &str, new: &str) -> IndTerm {
        match self {
            IndTerm::Var(n, s) if n == old => IndTerm::Var(new.to_string(), s.clone()),
            IndTerm::Succ(t) => IndTerm::succ(t.rename_var(old, new)),
            IndTerm::App(f, a) => {
                IndTerm::app(f.rename_var(old, new), a.rename_var(old, new))
            }
            _ => self.clone(),
        }
    }
}

impl fmt::Display for IndTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndTerm::Var(n, _) => write!(f, "{}", n),
            IndTerm::Zero => write!(f, "z"),
            IndTerm::Succ(_) => match self.as_numeral() {
                Some(n) => write!(f, "#{}", n),
                None => {
                    let IndTerm::Succ(inner) = self else { unreachable!() };
                    write!(f, "(s {})", inner)
                }
            },
            IndTerm::Pi(_, _) => write!(f, "pi"),
            IndTerm::Sigma(_, _, _) => write!(f, "sig"),
            IndTerm::Rec(_) => write!(f, "rec"),
            IndTerm::App(g, a) => write!(f, "({} {})", g, a),
            IndTerm::Const(n) => write!(f, "(const {})", n),
            IndTerm::Choice(id) => write!(f, "(choice {})", id),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_are_iterated_succ() {
        assert_eq!(IndTerm::numeral(0), IndTerm::Zero);
        assert_eq!(
            IndTerm::numeral(2),
            IndTerm::succ(IndTerm::succ(IndTerm::Zero))
        );
        assert_eq!(IndTerm::numeral(3).as_numeral(), Some(3));
        assert_eq!(IndTerm::numeral(3).to_string(), "#3");
    }

    #[test]
    fn subst_replaces_free_occurrences() {
        let t = IndTerm::app(IndTerm::cnst("min"), IndTerm::nvar("x"));
        let got = t.subst("x", &IndTerm::Zero);
        assert_eq!(got, IndTerm::app(IndTerm::cnst("min"), IndTerm::Zero));
    }

    #[test]
    fn spine_splits_applications() {
        let t = IndTerm::apps(
            IndTerm::cnst("min"),
            [IndTerm::Zero, IndTerm::numeral(1)],
        );
        let (head, args) = t.spine();
        assert_eq!(head, &IndTerm::cnst("min"));
        assert_eq!(args.len(), 2);
    }
}
