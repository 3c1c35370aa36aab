//! Formulas over the arithmetic signature.

use std::collections::BTreeSet;
use std::fmt;

use super::sort::Sort;
use super::term::IndTerm;

/// A formula. Equality is the only predicate and holds between terms of
/// sort 0. `BForallStr` is a bounded universal quantifier over bit-strings
/// of a given length; the bound variable ranges over string codes (sort 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(IndTerm, IndTerm),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Sort, Box<Formula>),
    Exists(String, Sort, Box<Formula>),
    BForallStr(String, IndTerm, Box<Formula>),
}

impl Formula {
    pub fn eq(l: IndTerm, r: IndTerm) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn forall(x: &str, sort: Sort, body: Formula) -> Formula {
        Formula::Forall(x.to_string(), sort, Box::new(body))
    }

    pub fn exists(x: &str, sort: Sort, body: Formula) -> Formula {
        Formula::Exists(x.to_string(), sort, Box::new(body))
    }

    pub fn bforall_str(q: &str, len: IndTerm, body: Formula) -> Formula {
        Formula::BForallStr(q.to_string(), len, Box::new(body))
    }

    /// True iff the formula is a Sigma formula: no implication and no
    /// unbounded universal quantifier anywhere. A bounded string quantifier
    /// is Sigma-preserving.
    pub fn is_sigma(&self) -> bool {
        match self {
            Formula::Eq(_, _) => true,
            Formula::And(l, r) | Formula::Or(l, r) => l.is_sigma() && r.is_sigma(),
            Formula::Imp(_, _) | Formula::Forall(_, _, _) => false,
            Formula::Exists(_, _, b) => b.is_sigma(),
            Formula::BForallStr(_, _, b) => b.is_sigma(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    fn collect_free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(l, r) => {
                out.extend(l.free_vars());
                out.extend(r.free_vars());
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_free_vars(out);
                r.collect_free_vars(out);
            }
            Formula::Forall(x, _, b) | Formula::Exists(x, _, b) => {
                let mut inner = BTreeSet::new();
                b.collect_free_vars(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
            Formula::BForallStr(q, len, b) => {
                out.extend(len.free_vars());
                let mut inner = BTreeSet::new();
                b.collect_free_vars(&mut inner);
                inner.remove(q);
                out.extend(inner);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Capture-avoiding substitution of term `t` for individual variable `x`.
    pub fn subst(&self, x: &str, t: &IndTerm) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(l.subst(x, t), r.subst(x, t)),
            Formula::And(l, r) => Formula::and(l.subst(x, t), r.subst(x, t)),
            Formula::Or(l, r) => Formula::or(l.subst(x, t), r.subst(x, t)),
            Formula::Imp(l, r) => Formula::imp(l.subst(x, t), r.subst(x, t)),
            Formula::Forall(y, sort, b) => {
                let (y2, b2) = subst_under_binder(y, sort.clone(), b, x, t);
                Formula::Forall(y2, sort.clone(), Box::new(b2))
            }
            Formula::Exists(y, sort, b) => {
                let (y2, b2) = subst_under_binder(y, sort.clone(), b, x, t);
                Formula::Exists(y2, sort.clone(), Box::new(b2))
            }
            Formula::BForallStr(q, len, b) => {
                let len2 = len.subst(x, t);
                let (q2, b2) = subst_under_binder(q, Sort::Base, b, x, t);
                Formula::BForallStr(q2, len2, Box::new(b2))
            }
        }
    }

    /// Alpha-equivalence: equality up to consistent renaming of bound
    /// variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq_at(self, other, &mut Vec::new())
    }

    /// Renames free occurrences of a variable, preserving occurrence sorts.
    /// `new` must be fresh for the formula.
    pub fn rename_var(&self, old: &str, new: &str) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(l.rename_var(old, new), r.rename_var(old, new)),
            Formula::And(l, r) => Formula::and(l.rename_var(old, new), r.rename_var(old, new)),
            Formula::Or(l, r) => Formula::or(l.rename_var(old, new), r.rename_var(old, new)),
            Formula::Imp(l, r) => Formula::imp(l.rename_var(old, new), r.rename_var(old, new)),
            Formula::Forall(y, s, b) if y != old => {
                Formula::Forall(y.clone(), s.clone(), Box::new(b.rename_var(old, new)))
            }
            Formula::Exists(y, s, b) if y != old => {
                Formula::Exists(y.clone(), s.clone(), Box::new(b.rename_var(old, new)))
            }
            Formula::BForallStr(q, len, b) => {
                let len = len.rename_var(old, new);
                if q == old {
                    Formula::BForallStr(q.clone(), len, b.clone())
                } else {
                    Formula::BForallStr(q.clone(), len, Box::new(b.rename_var(old, new)))
                }
            }
            _ => self.clone(),
        }
    }
}

/// Picks a name based on `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
    let stem = if stem.is_empty() { "x" } else { stem };
    for i in 1.. {
        let cand = format!("{}{}", stem, i);
        if !avoid.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

fn subst_under_binder(
    bound: &str,
    sort: Sort,
    body: &Formula,
    x: &str,
    t: &IndTerm,
) -> (String, Formula) {
    if bound == x {
        // The substituted variable is shadowed here.
        return (bound.to_string(), body.clone());
    }
    if t.contains_var(bound) && body.free_vars().contains(x) {
        // Rename the binder to avoid capturing a free variable of `t`.
        let mut avoid = body.free_vars();
        avoid.extend(t.free_vars());
        avoid.insert(x.to_string());
        let fresh = fresh_name(bound, &avoid);
        let renamed = body.subst(bound, &IndTerm::Var(fresh.clone(), sort));
        (fresh, renamed.subst(x, t))
    } else {
        (bound.to_string(), body.subst(x, t))
    }
}

fn bound_lookup(pairs: &[(String, String)], l: &str, r: &str) -> Option<bool> {
    // Walk innermost binders first; a hit on either side must match both.
    for (a, b) in pairs.iter().rev() {
        let hit_l = a == l;
        let hit_r = b == r;
        if hit_l || hit_r {
            return Some(hit_l && hit_r);
        }
    }
    None
}

pub(crate) fn alpha_eq_term(l: &IndTerm, r: &IndTerm, bound: &mut Vec<(String, String)>) -> bool {
    match (l, r) {
        (IndTerm::Var(a, sa), IndTerm::Var(b, sb)) => match bound_lookup(bound, a, b) {
            Some(ok) => ok && sa == sb,
            None => a == b && sa == sb,
        },
        (IndTerm::Succ(a), IndTerm::Succ(b)) => alpha_eq_term(a, b, bound),
        (IndTerm::App(f, a), IndTerm::App(g, b)) => {
            alpha_eq_term(f, g, bound) && alpha_eq_term(a, b, bound)
        }
        _ => l == r,
    }
}

pub(crate) fn alpha_eq_at(l: &Formula, r: &Formula, bound: &mut Vec<(String, String)>) -> bool {
    match (l, r) {
        (Formula::Eq(a, b), Formula::Eq(c, d)) => {
            alpha_eq_term(a, c, bound) && alpha_eq_term(b, d, bound)
        }
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d)) => {
            alpha_eq_at(a, c, bound) && alpha_eq_at(b, d, bound)
        }
        (Formula::Forall(x, sx, a), Formula::Forall(y, sy, b))
        | (Formula::Exists(x, sx, a), Formula::Exists(y, sy, b)) => {
            if sx != sy {
                return false;
            }
            bound.push((x.clone(), y.clone()));
            let ok = alpha_eq_at(a, b, bound);
            bound.pop();
            ok
        }
        (Formula::BForallStr(x, lx, a), Formula::BForallStr(y, ly, b)) => {
            if !alpha_eq_term(lx, ly, bound) {
                return false;
            }
            bound.push((x.clone(), y.clone()));
            let ok = alpha_eq_at(a, b, bound);
            bound.pop();
            ok
        }
        _ => false,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(l, r) => write!(f, "(= {} {})", l, r),
            Formula::And(l, r) => write!(f, "(and {} {})", l, r),
            Formula::Or(l, r) => write!(f, "(or {} {})", l, r),
            Formula::Imp(l, r) => write!(f, "(imp {} {})", l, r),
            Formula::Forall(x, s, b) => {
                if s.is_base() {
                    write!(f, "(all {} {})", x, b)
                } else {
                    write!(f, "(all ({} {}) {})", x, s, b)
                }
            }
            Formula::Exists(x, s, b) => {
                if s.is_base() {
                    write!(f, "(ex {} {})", x, b)
                } else {
                    write!(f, "(ex ({} {}) {})", x, s, b)
                }
            }
            Formula::BForallStr(q, len, b) => write!(f, "(ballstr {} {} {})", q, len, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::IndTerm as T;

    fn ex_n_eq_zero() -> Formula {
        Formula::exists("n", Sort::Base, Formula::eq(T::nvar("n"), T::Zero))
    }

    #[test]
    fn sigma_examples() {
        // Existential over an equation is Sigma.
        assert!(ex_n_eq_zero().is_sigma());
        // Unbounded forall is not.
        let all = Formula::forall("x", Sort::Base, Formula::eq(T::nvar("x"), T::nvar("x")));
        assert!(!all.is_sigma());
        // Bounded string quantifier preserves Sigma.
        let b = Formula::exists(
            "k",
            Sort::Base,
            Formula::bforall_str(
                "q",
                T::nvar("k"),
                Formula::exists(
                    "l",
                    Sort::Base,
                    Formula::exists(
                        "m",
                        Sort::Base,
                        Formula::eq(T::nvar("l"), T::nvar("m")),
                    ),
                ),
            ),
        );
        assert!(b.is_sigma());
        // Implication anywhere breaks Sigma.
        let imp = Formula::imp(ex_n_eq_zero(), ex_n_eq_zero());
        assert!(!imp.is_sigma());
    }

    #[test]
    fn subst_simple() {
        let f = Formula::eq(T::nvar("x"), T::Zero);
        assert_eq!(f.subst("x", &T::Zero), Formula::eq(T::Zero, T::Zero));
    }

    #[test]
    fn subst_avoids_capture_exists() {
        // (ex x (= x y))[y := x]  renames the binder.
        let f = Formula::exists("x", Sort::Base, Formula::eq(T::nvar("x"), T::nvar("y")));
        let got = f.subst("y", &T::nvar("x"));
        let want = Formula::exists("x1", Sort::Base, Formula::eq(T::nvar("x1"), T::nvar("x")));
        assert!(got.alpha_eq(&want));
        // The free x must not be captured.
        assert!(got.free_vars().contains("x"));
    }

    #[test]
    fn subst_avoids_capture_forall() {
        // (all z (= z x))[x := z+1]  renames the binder.
        let f = Formula::forall("z", Sort::Base, Formula::eq(T::nvar("z"), T::nvar("x")));
        let got = f.subst("x", &T::succ(T::nvar("z")));
        let want = Formula::forall(
            "w",
            Sort::Base,
            Formula::eq(T::nvar("w"), T::succ(T::nvar("z"))),
        );
        assert!(got.alpha_eq(&want));
    }

    #[test]
    fn alpha_eq_examples() {
        let a = Formula::forall("x", Sort::Base, Formula::eq(T::nvar("x"), T::nvar("x")));
        let b = Formula::forall("y", Sort::Base, Formula::eq(T::nvar("y"), T::nvar("y")));
        assert!(a.alpha_eq(&b));

        let c = Formula::forall("x", Sort::Base, Formula::eq(T::nvar("x"), T::Zero));
        assert!(!a.alpha_eq(&c));

        // ex x all y (x = y)  vs  ex y all x (y = x)
        let d = Formula::exists(
            "x",
            Sort::Base,
            Formula::forall("y", Sort::Base, Formula::eq(T::nvar("x"), T::nvar("y"))),
        );
        let e = Formula::exists(
            "y",
            Sort::Base,
            Formula::forall("x", Sort::Base, Formula::eq(T::nvar("y"), T::nvar("x"))),
        );
        assert!(d.alpha_eq(&e));
    }

    #[test]
    fn alpha_preserves_sigma() {
        let a = ex_n_eq_zero();
        let b = Formula::exists("m", Sort::Base, Formula::eq(T::nvar("m"), T::Zero));
        assert!(a.alpha_eq(&b));
        assert_eq!(a.is_sigma(), b.is_sigma());
    }
}
