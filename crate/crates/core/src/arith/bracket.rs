//! Bracket abstraction: lambda terms as combinators.
//!
//! `bracket_abstract(x, t)` builds a term `f` of Pi/Sigma applications such
//! that `f s` and `t[x := s]` have the same normal form for every `s`.

use crate::syntax::term::IndTerm;
use crate::syntax::Sort;

/// Infers the sort of a term from the sorts carried by its parts.
/// Fails on sort-incorrect applications and on unknown constants.
pub fn term_sort(t: &IndTerm) -> Result<Sort, String> {
    match t {
        IndTerm::Var(_, s) => Ok(s.clone()),
        IndTerm::Zero => Ok(Sort::Base),
        IndTerm::Succ(inner) => {
            let s = term_sort(inner)?;
            if s.is_base() {
                Ok(Sort::Base)
            } else {
                Err(format!("successor of a term of sort {}", s))
            }
        }
        IndTerm::Pi(r, t2) => Ok(Sort::arrow(r.clone(), Sort::arrow(t2.clone(), r.clone()))),
        IndTerm::Sigma(d, r, t2) => Ok(Sort::arrow(
            Sort::arrow(d.clone(), Sort::arrow(r.clone(), t2.clone())),
            Sort::arrow(
                Sort::arrow(d.clone(), r.clone()),
                Sort::arrow(d.clone(), t2.clone()),
            ),
        )),
        IndTerm::Rec(r) => Ok(Sort::arrow(
            Sort::Base,
            Sort::arrow(
                r.clone(),
                Sort::arrow(
                    Sort::arrow(r.clone(), Sort::arrow(Sort::Base, r.clone())),
                    r.clone(),
                ),
            ),
        )),
        IndTerm::App(f, a) => {
            let sf = term_sort(f)?;
            let sa = term_sort(a)?;
            match sf.as_arrow() {
                Some((dom, cod)) if *dom == sa => Ok(cod.clone()),
                Some((dom, _)) => Err(format!(
                    "application sort mismatch: function expects {}, argument has {}",
                    dom, sa
                )),
                None => Err(format!("applied a term of base sort: {}", f)),
            }
        }
        IndTerm::Const(name) => crate::arith::stdlib::const_sort(name)
            .ok_or_else(|| format!("unknown constant `{}`", name)),
        IndTerm::Choice(_) => Ok(Sort::stream()),
    }
}

fn komb(xsort: &Sort, t: IndTerm, tsort: &Sort) -> IndTerm {
    IndTerm::app(IndTerm::Pi(tsort.clone(), xsort.clone()), t)
}

fn identity(xsort: &Sort) -> IndTerm {
    // S K K at the right sorts.
    let s = xsort.clone();
    IndTerm::apps(
        IndTerm::Sigma(s.clone(), Sort::arrow(s.clone(), s.clone()), s.clone()),
        [
            IndTerm::Pi(s.clone(), Sort::arrow(s.clone(), s.clone())),
            IndTerm::Pi(s.clone(), s.clone()),
        ],
    )
}

/// Abstracts `x` (of sort `xsort`) out of `t`.
pub fn bracket_abstract(x: &str, xsort: &Sort, t: &IndTerm) -> Result<IndTerm, String> {
    if !t.contains_var(x) {
        let ts = term_sort(t)?;
        return Ok(komb(xsort, t.clone(), &ts));
    }
    match t {
        IndTerm::Var(n, s) if n == x => {
            if s != xsort {
                return Err(format!(
                    "variable `{}` occurs at sort {} but is abstracted at {}",
                    x, s, xsort
                ));
            }
            Ok(identity(xsort))
        }
        IndTerm::Succ(inner) => {
            // Route through the succ constant so the bit under the
            // successor can be abstracted.
            let as_app = IndTerm::app(IndTerm::cnst("succ"), (**inner).clone());
            bracket_abstract(x, xsort, &as_app)
        }
        IndTerm::App(f, a) => {
            // Eta: lambda x. f x  is just  f  when x is not free in f.
            if a.as_ref() == &IndTerm::Var(x.to_string(), xsort.clone()) && !f.contains_var(x) {
                return Ok((**f).clone());
            }
            let sf = term_sort(f)?;
            let sa = term_sort(a)?;
            let (_, cod) = sf
                .as_arrow()
                .ok_or_else(|| format!("applied a term of base sort: {}", f))?;
            let af = bracket_abstract(x, xsort, f)?;
            let aa = bracket_abstract(x, xsort, a)?;
            Ok(IndTerm::apps(
                IndTerm::Sigma(xsort.clone(), sa, cod.clone()),
                [af, aa],
            ))
        }
        _ => unreachable!("contains_var covered the remaining cases"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::stdlib::normalize_term;
    use crate::syntax::term::IndTerm as T;

    fn apply_norm(f: &IndTerm, a: IndTerm) -> IndTerm {
        normalize_term(&T::app(f.clone(), a)).unwrap()
    }

    #[test]
    fn identity_law() {
        let id = bracket_abstract("x", &Sort::Base, &T::nvar("x")).unwrap();
        assert_eq!(apply_norm(&id, T::numeral(5)), T::numeral(5));
    }

    #[test]
    fn constant_law() {
        let k0 = bracket_abstract("x", &Sort::Base, &T::Zero).unwrap();
        assert_eq!(apply_norm(&k0, T::numeral(7)), T::Zero);
    }

    #[test]
    fn beta_on_successor() {
        // lambda x. x+1 applied to 2 is 3.
        let f = bracket_abstract("x", &Sort::Base, &T::succ(T::nvar("x"))).unwrap();
        assert_eq!(apply_norm(&f, T::numeral(2)), T::numeral(3));
    }

    #[test]
    fn random_small_terms_agree_with_substitution() {
        // Deterministic pseudo-random generation of small base-sorted terms
        // over the variable x and a couple of constants.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        fn gen(r: u64, depth: u32, next: &mut impl FnMut() -> u64) -> IndTerm {
            if depth == 0 {
                match r % 3 {
                    0 => T::nvar("x"),
                    1 => T::Zero,
                    _ => T::numeral(r % 4),
                }
            } else {
                match r % 5 {
                    0 => T::nvar("x"),
                    1 => T::succ(gen(next(), depth - 1, next)),
                    2 => T::apps(
                        T::cnst("min"),
                        [gen(next(), depth - 1, next), gen(next(), depth - 1, next)],
                    ),
                    3 => T::apps(
                        T::cnst("concat"),
                        [gen(next(), depth - 1, next), gen(next(), depth - 1, next)],
                    ),
                    _ => T::apps(
                        T::cnst("ifelse"),
                        [
                            gen(next(), depth - 1, next),
                            gen(next(), depth - 1, next),
                            gen(next(), depth - 1, next),
                        ],
                    ),
                }
            }
        }
        for i in 0..100 {
            let t = gen(next(), 2 + (i % 2), &mut next);
            let f = bracket_abstract("x", &Sort::Base, &t).unwrap();
            let s = T::numeral(next() % 6);
            let via_comb = apply_norm(&f, s.clone());
            let via_subst = normalize_term(&t.subst("x", &s)).unwrap();
            assert_eq!(via_comb, via_subst, "term {t}");
        }
    }
}
