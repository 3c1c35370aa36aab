//! Annotated natural-deduction proof terms.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::{fresh_name, Formula};
use super::term::IndTerm;

/// A proof term. `Lam` carries its domain formula and `Anno` exists so that
/// checking stays syntax-directed. `EqSubst` is the explicit equality
/// rewriting node with a declared motive. `BLam` is the elaborated form of
/// a `TLam` checked against a bounded string quantifier; the parser accepts
/// it but ordinary input uses `TLam`.
///
/// Binding structure: `Lam`, `Shift`, `Case` branches and `Dest` bind
/// hypothesis names; `TLam`, `BLam` and `Dest` bind individual variables.
/// A `TLam`/`BLam` binder additionally binds a hypothesis of the same name
/// (the length fact of a bounded string quantifier), so renaming one renames
/// both uniformly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofTerm {
    HypVar(String),
    Pair(Box<ProofTerm>, Box<ProofTerm>),
    Proj1(Box<ProofTerm>),
    Proj2(Box<ProofTerm>),
    Inj1(Box<ProofTerm>),
    Inj2(Box<ProofTerm>),
    Case {
        scrut: Box<ProofTerm>,
        left_hyp: String,
        left: Box<ProofTerm>,
        right_hyp: String,
        right: Box<ProofTerm>,
    },
    Lam {
        hyp: String,
        anno: Formula,
        body: Box<ProofTerm>,
    },
    PApp(Box<ProofTerm>, Box<ProofTerm>),
    TLam {
        var: String,
        body: Box<ProofTerm>,
    },
    BLam {
        var: String,
        len: IndTerm,
        body: Box<ProofTerm>,
    },
    TApp(Box<ProofTerm>, IndTerm),
    ExIntro(IndTerm, Box<ProofTerm>),
    Dest {
        scrut: Box<ProofTerm>,
        var: String,
        hyp: String,
        body: Box<ProofTerm>,
    },
    Reset(Box<ProofTerm>),
    Shift {
        k: String,
        body: Box<ProofTerm>,
    },
    AxConst(String),
    EqSubst {
        eq: Box<ProofTerm>,
        var: String,
        motive: Formula,
        body: Box<ProofTerm>,
    },
    Anno(Box<ProofTerm>, Formula),
}

impl ProofTerm {
    pub fn hyp(name: &str) -> ProofTerm {
        ProofTerm::HypVar(name.to_string())
    }

    pub fn pair(l: ProofTerm, r: ProofTerm) -> ProofTerm {
        ProofTerm::Pair(Box::new(l), Box::new(r))
    }

    pub fn proj1(p: ProofTerm) -> ProofTerm {
        ProofTerm::Proj1(Box::new(p))
    }

    pub fn proj2(p: ProofTerm) -> ProofTerm {
        ProofTerm::Proj2(Box::new(p))
    }

    pub fn inj1(p: ProofTerm) -> ProofTerm {
        ProofTerm::Inj1(Box::new(p))
    }

    pub fn inj2(p: ProofTerm) -> ProofTerm {
        ProofTerm::Inj2(Box::new(p))
    }

    pub fn case(
        scrut: ProofTerm,
        (lh, lb): (&str, ProofTerm),
        (rh, rb): (&str, ProofTerm),
    ) -> ProofTerm {
        ProofTerm::Case {
            scrut: Box::new(scrut),
            left_hyp: lh.to_string(),
            left: Box::new(lb),
            right_hyp: rh.to_string(),
            right: Box::new(rb),
        }
    }

    pub fn lam(hyp: &str, anno: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm::Lam {
            hyp: hyp.to_string(),
            anno,
            body: Box::new(body),
        }
    }

    pub fn papp(f: ProofTerm, a: ProofTerm) -> ProofTerm {
        ProofTerm::PApp(Box::new(f), Box::new(a))
    }

    pub fn papps(f: ProofTerm, args: impl IntoIterator<Item = ProofTerm>) -> ProofTerm {
        args.into_iter().fold(f, ProofTerm::papp)
    }

    pub fn tlam(var: &str, body: ProofTerm) -> ProofTerm {
        ProofTerm::TLam {
            var: var.to_string(),
            body: Box::new(body),
        }
    }

    pub fn tapp(f: ProofTerm, t: IndTerm) -> ProofTerm {
        ProofTerm::TApp(Box::new(f), t)
    }

    pub fn exi(wit: IndTerm, p: ProofTerm) -> ProofTerm {
        ProofTerm::ExIntro(wit, Box::new(p))
    }

    pub fn dest(scrut: ProofTerm, var: &str, hyp: &str, body: ProofTerm) -> ProofTerm {
        ProofTerm::Dest {
            scrut: Box::new(scrut),
            var: var.to_string(),
            hyp: hyp.to_string(),
            body: Box::new(body),
        }
    }

    pub fn reset(p: ProofTerm) -> ProofTerm {
        ProofTerm::Reset(Box::new(p))
    }

    pub fn shift(k: &str, body: ProofTerm) -> ProofTerm {
        ProofTerm::Shift {
            k: k.to_string(),
            body: Box::new(body),
        }
    }

    pub fn ax(name: &str) -> ProofTerm {
        ProofTerm::AxConst(name.to_string())
    }

    pub fn eqsubst(eq: ProofTerm, var: &str, motive: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm::EqSubst {
            eq: Box::new(eq),
            var: var.to_string(),
            motive,
            body: Box::new(body),
        }
    }

    pub fn anno(p: ProofTerm, f: Formula) -> ProofTerm {
        ProofTerm::Anno(Box::new(p), f)
    }

    /// Free hypothesis names.
    pub fn free_hyps(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_hyps(&mut out);
        out
    }

    fn collect_free_hyps(&self, out: &mut BTreeSet<String>) {
        match self {
            ProofTerm::HypVar(a) => {
                out.insert(a.clone());
            }
            ProofTerm::Pair(l, r) | ProofTerm::PApp(l, r) => {
                l.collect_free_hyps(out);
                r.collect_free_hyps(out);
            }
            ProofTerm::Proj1(p)
            | ProofTerm::Proj2(p)
            | ProofTerm::Inj1(p)
            | ProofTerm::Inj2(p)
            | ProofTerm::Reset(p)
            | ProofTerm::Anno(p, _) => p.collect_free_hyps(out),
            ProofTerm::TApp(p, _) | ProofTerm::ExIntro(_, p) => p.collect_free_hyps(out),
            ProofTerm::Case {
                scrut,
                left_hyp,
                left,
                right_hyp,
                right,
            } => {
                scrut.collect_free_hyps(out);
                let mut l = BTreeSet::new();
                left.collect_free_hyps(&mut l);
                l.remove(left_hyp);
                out.extend(l);
                let mut r = BTreeSet::new();
                right.collect_free_hyps(&mut r);
                r.remove(right_hyp);
                out.extend(r);
            }
            ProofTerm::Lam { hyp, body, .. } => {
                let mut b = BTreeSet::new();
                body.collect_free_hyps(&mut b);
                b.remove(hyp);
                out.extend(b);
            }
            ProofTerm::TLam { var, body } | ProofTerm::BLam { var, body, .. } => {
                let mut b = BTreeSet::new();
                body.collect_free_hyps(&mut b);
                b.remove(var);
                out.extend(b);
            }
            ProofTerm::Dest {
                scrut, hyp, body, ..
            } => {
                scrut.collect_free_hyps(out);
                let mut b = BTreeSet::new();
                body.collect_free_hyps(&mut b);
                b.remove(hyp);
                out.extend(b);
            }
            ProofTerm::Shift { k, body } => {
                let mut b = BTreeSet::new();
                body.collect_free_hyps(&mut b);
                b.remove(k);
                out.extend(b);
            }
            ProofTerm::AxConst(_) => {}
            ProofTerm::EqSubst { eq, body, .. } => {
                eq.collect_free_hyps(out);
                body.collect_free_hyps(out);
            }
        }
    }

    /// Free individual variables (in embedded terms and formulas).
    pub fn free_ivars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_ivars(&mut out);
        out
    }

    fn collect_free_ivars(&self, out: &mut BTreeSet<String>) {
        match self {
            ProofTerm::HypVar(_) | ProofTerm::AxConst(_) => {}
            ProofTerm::Pair(l, r) | ProofTerm::PApp(l, r) => {
                l.collect_free_ivars(out);
                r.collect_free_ivars(out);
            }
            ProofTerm::Proj1(p)
            | ProofTerm::Proj2(p)
            | ProofTerm::Inj1(p)
            | ProofTerm::Inj2(p)
            | ProofTerm::Reset(p) => p.collect_free_ivars(out),
            ProofTerm::Anno(p, f) => {
                p.collect_free_ivars(out);
                out.extend(f.free_vars());
            }
            ProofTerm::Case {
                scrut, left, right, ..
            } => {
                scrut.collect_free_ivars(out);
                left.collect_free_ivars(out);
                right.collect_free_ivars(out);
            }
            ProofTerm::Lam { anno, body, .. } => {
                out.extend(anno.free_vars());
                body.collect_free_ivars(out);
            }
            ProofTerm::TLam { var, body } => {
                let mut b = BTreeSet::new();
                body.collect_free_ivars(&mut b);
                b.remove(var);
                out.extend(b);
            }
            ProofTerm::BLam { var, len, body } => {
                out.extend(len.free_vars());
                let mut b = BTreeSet::new();
                body.collect_free_ivars(&mut b);
                b.remove(var);
                out.extend(b);
            }
            ProofTerm::TApp(p, t) => {
                p.collect_free_ivars(out);
                out.extend(t.free_vars());
            }
            ProofTerm::ExIntro(t, p) => {
                out.extend(t.free_vars());
                p.collect_free_ivars(out);
            }
            ProofTerm::Dest {
                scrut, var, body, ..
            } => {
                scrut.collect_free_ivars(out);
                let mut b = BTreeSet::new();
                body.collect_free_ivars(&mut b);
                b.remove(var);
                out.extend(b);
            }
            ProofTerm::Shift { body, .. } => body.collect_free_ivars(out),
            ProofTerm::EqSubst {
                eq,
                var,
                motive,
                body,
            } => {
                eq.collect_free_ivars(out);
                let mut m = motive.free_vars();
                m.remove(var);
                out.extend(m);
                body.collect_free_ivars(out);
            }
        }
    }

    /// Capture-avoiding substitution of proof `q` for hypothesis `a`.
    pub fn subst_hyp(&self, a: &str, q: &ProofTerm) -> ProofTerm {
        match self {
            ProofTerm::HypVar(n) => {
                if n == a {
                    q.clone()
                } else {
                    self.clone()
                }
            }
            ProofTerm::Pair(l, r) => ProofTerm::pair(l.subst_hyp(a, q), r.subst_hyp(a, q)),
            ProofTerm::Proj1(p) => ProofTerm::proj1(p.subst_hyp(a, q)),
            ProofTerm::Proj2(p) => ProofTerm::proj2(p.subst_hyp(a, q)),
            ProofTerm::Inj1(p) => ProofTerm::inj1(p.subst_hyp(a, q)),
            ProofTerm::Inj2(p) => ProofTerm::inj2(p.subst_hyp(a, q)),
            ProofTerm::PApp(l, r) => ProofTerm::papp(l.subst_hyp(a, q), r.subst_hyp(a, q)),
            ProofTerm::Reset(p) => ProofTerm::reset(p.subst_hyp(a, q)),
            ProofTerm::Anno(p, f) => ProofTerm::anno(p.subst_hyp(a, q), f.clone()),
            ProofTerm::TApp(p, t) => ProofTerm::tapp(p.subst_hyp(a, q), t.clone()),
            ProofTerm::ExIntro(t, p) => ProofTerm::exi(t.clone(), p.subst_hyp(a, q)),
            ProofTerm::AxConst(_) => self.clone(),
            ProofTerm::Case {
                scrut,
                left_hyp,
                left,
                right_hyp,
                right,
            } => {
                let scrut = scrut.subst_hyp(a, q);
                let (lh, lb) = subst_hyp_under(left_hyp, left, a, q);
                let (rh, rb) = subst_hyp_under(right_hyp, right, a, q);
                ProofTerm::case(scrut, (&lh, lb), (&rh, rb))
            }
            ProofTerm::Lam { hyp, anno, body } => {
                let (h, b) = subst_hyp_under(hyp, body, a, q);
                ProofTerm::lam(&h, anno.clone(), b)
            }
            ProofTerm::TLam { var, body } => {
                // The binder also shadows the hypothesis namespace.
                let (v, b) = subst_hyp_under_tbinder(var, body, a, q);
                ProofTerm::tlam(&v, b)
            }
            ProofTerm::BLam { var, len, body } => {
                let (v, b) = subst_hyp_under_tbinder(var, body, a, q);
                ProofTerm::BLam {
                    var: v,
                    len: len.clone(),
                    body: Box::new(b),
                }
            }
            ProofTerm::Dest {
                scrut,
                var,
                hyp,
                body,
            } => {
                let scrut = scrut.subst_hyp(a, q);
                let (h, b) = subst_hyp_under(hyp, body, a, q);
                ProofTerm::dest(scrut, var, &h, b)
            }
            ProofTerm::Shift { k, body } => {
                let (k2, b) = subst_hyp_under(k, body, a, q);
                ProofTerm::shift(&k2, b)
            }
            ProofTerm::EqSubst {
                eq,
                var,
                motive,
                body,
            } => ProofTerm::eqsubst(
                eq.subst_hyp(a, q),
                var,
                motive.clone(),
                body.subst_hyp(a, q),
            ),
        }
    }

    /// Capture-avoiding substitution of term `t` for individual variable `x`
    /// throughout embedded terms and formulas.
    pub fn subst_ivar(&self, x: &str, t: &IndTerm) -> ProofTerm {
        match self {
            ProofTerm::HypVar(_) | ProofTerm::AxConst(_) => self.clone(),
            ProofTerm::Pair(l, r) => ProofTerm::pair(l.subst_ivar(x, t), r.subst_ivar(x, t)),
            ProofTerm::Proj1(p) => ProofTerm::proj1(p.subst_ivar(x, t)),
            ProofTerm::Proj2(p) => ProofTerm::proj2(p.subst_ivar(x, t)),
            ProofTerm::Inj1(p) => ProofTerm::inj1(p.subst_ivar(x, t)),
            ProofTerm::Inj2(p) => ProofTerm::inj2(p.subst_ivar(x, t)),
            ProofTerm::PApp(l, r) => ProofTerm::papp(l.subst_ivar(x, t), r.subst_ivar(x, t)),
            ProofTerm::Reset(p) => ProofTerm::reset(p.subst_ivar(x, t)),
            ProofTerm::Anno(p, f) => ProofTerm::anno(p.subst_ivar(x, t), f.subst(x, t)),
            ProofTerm::TApp(p, u) => ProofTerm::tapp(p.subst_ivar(x, t), u.subst(x, t)),
            ProofTerm::ExIntro(u, p) => ProofTerm::exi(u.subst(x, t), p.subst_ivar(x, t)),
            ProofTerm::Case {
                scrut,
                left_hyp,
                left,
                right_hyp,
                right,
            } => ProofTerm::case(
                scrut.subst_ivar(x, t),
                (left_hyp, left.subst_ivar(x, t)),
                (right_hyp, right.subst_ivar(x, t)),
            ),
            ProofTerm::Lam { hyp, anno, body } => {
                ProofTerm::lam(hyp, anno.subst(x, t), body.subst_ivar(x, t))
            }
            ProofTerm::TLam { var, body } => {
                let (v, b) = subst_ivar_under(var, body, x, t);
                ProofTerm::tlam(&v, b)
            }
            ProofTerm::BLam { var, len, body } => {
                let len = len.subst(x, t);
                let (v, b) = subst_ivar_under(var, body, x, t);
                ProofTerm::BLam {
                    var: v,
                    len,
                    body: Box::new(b),
                }
            }
            ProofTerm::Dest {
                scrut,
                var,
                hyp,
                body,
            } => {
                let scrut = scrut.subst_ivar(x, t);
                let (v, b) = subst_ivar_under(var, body, x, t);
                ProofTerm::dest(scrut, &v, hyp, b)
            }
            ProofTerm::Shift { k, body } => ProofTerm::shift(k, body.subst_ivar(x, t)),
            ProofTerm::EqSubst {
                eq,
                var,
                motive,
                body,
            } => {
                let eq = eq.subst_ivar(x, t);
                let body = body.subst_ivar(x, t);
                if var == x {
                    ProofTerm::eqsubst(eq, var, motive.clone(), body)
                } else if t.contains_var(var) {
                    let mut avoid = motive.free_vars();
                    avoid.extend(t.free_vars());
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(var, &avoid);
                    let motive = motive
                        .subst(var, &IndTerm::Var(fresh.clone(), crate::syntax::Sort::Base))
                        .subst(x, t);
                    ProofTerm::eqsubst(eq, &fresh, motive, body)
                } else {
                    ProofTerm::eqsubst(eq, var, motive.subst(x, t), body)
                }
            }
        }
    }

    /// Renames free occurrences of individual variable `old` to `new`
    /// throughout embedded terms and formulas, preserving occurrence sorts.
    /// `new` must be fresh for the proof term.
    pub fn rename_ivar(&self, old: &str, new: &str) -> ProofTerm {
        match self {
            ProofTerm::HypVar(_) | ProofTerm::AxConst(_) => self.clone(),
            ProofTerm::Pair(l, r) => {
                ProofTerm::pair(l.rename_ivar(old, new), r.rename_ivar(old, new))
            }
            ProofTerm::Proj1(p) => ProofTerm::proj1(p.rename_ivar(old, new)),
            ProofTerm::Proj2(p) => ProofTerm::proj2(p.rename_ivar(old, new)),
            ProofTerm::Inj1(p) => ProofTerm::inj1(p.rename_ivar(old, new)),
            ProofTerm::Inj2(p) => ProofTerm::inj2(p.rename_ivar(old, new)),
            ProofTerm::PApp(l, r) => {
                ProofTerm::papp(l.rename_ivar(old, new), r.rename_ivar(old, new))
            }
            ProofTerm::Reset(p) => ProofTerm::reset(p.rename_ivar(old, new)),
            ProofTerm::Anno(p, f) => {
                ProofTerm::anno(p.rename_ivar(old, new), f.rename_var(old, new))
            }
            ProofTerm::TApp(p, t) => {
                ProofTerm::tapp(p.rename_ivar(old, new), t.rename_var(old, new))
            }
            ProofTerm::ExIntro(t, p) => {
                ProofTerm::exi(t.rename_var(old, new), p.rename_ivar(old, new))
            }
            ProofTerm::Case {
                scrut,
                left_hyp,
                left,
                right_hyp,
                right,
            } => ProofTerm::case(
                scrut.rename_ivar(old, new),
                (left_hyp, left.rename_ivar(old, new)),
                (right_hyp, right.rename_ivar(old, new)),
            ),
            ProofTerm::Lam { hyp, anno, body } => ProofTerm::lam(
                hyp,
                anno.rename_var(old, new),
                body.rename_ivar(old, new),
            ),
            ProofTerm::TLam { var, body } => {
                if var == old {
                    self.clone()
                } else {
                    ProofTerm::tlam(var, body.rename_ivar(old, new))
                }
            }
            ProofTerm::BLam { var, len, body } => {
                let len = len.rename_var(old, new);
                let body = if var == old {
                    (**body).clone()
                } else {
                    body.rename_ivar(old, new)
                };
                ProofTerm::BLam {
                    var: var.clone(),
                    len,
                    body: Box::new(body),
                }
            }
            ProofTerm::Dest {
                scrut,
                var,
                hyp,
                body,
            } => {
                let scrut = scrut.rename_ivar(old, new);
                let body = if var == old {
                    (**body).clone()
                } else {
                    body.rename_ivar(old, new)
                };
                ProofTerm::dest(scrut, var, hyp, body)
            }
            ProofTerm::Shift { k, body } => ProofTerm::shift(k, body.rename_ivar(old, new)),
            ProofTerm::EqSubst {
                eq,
                var,
                motive,
                body,
            } => {
                let motive = if var == old {
                    motive.clone()
                } else {
                    motive.rename_var(old, new)
                };
                ProofTerm::eqsubst(
                    eq.rename_ivar(old, new),
                    var,
                    motive,
                    body.rename_ivar(old, new),
                )
            }
        }
    }

    /// Alpha-equivalence of proof terms, treating binders in both
    /// namespaces uniformly.
    pub fn alpha_eq(&self, other: &ProofTerm) -> bool {
        fn formulas_eq(l: &Formula, r: &Formula, ivars: &mut Vec<(String, String)>) -> bool {
            super::formula::alpha_eq_at(l, r, ivars)
        }
        fn terms_eq(l: &IndTerm, r: &IndTerm, ivars: &mut Vec<(String, String)>) -> bool {
            super::formula::alpha_eq_term(l, r, ivars)
        }
        fn hyp_eq(l: &str, r: &str, hyps: &[(String, String)]) -> bool {
            for (a, b) in hyps.iter().rev() {
                if a == l || b == r {
                    return a == l && b == r;
                }
            }
            l == r
        }
        fn go(
            l: &ProofTerm,
            r: &ProofTerm,
            hyps: &mut Vec<(String, String)>,
            ivars: &mut Vec<(String, String)>,
        ) -> bool {
            use ProofTerm::*;
            match (l, r) {
                (HypVar(a), HypVar(b)) => hyp_eq(a, b, hyps),
                (AxConst(a), AxConst(b)) => a == b,
                (Pair(a, b), Pair(c, d)) | (PApp(a, b), PApp(c, d)) => {
                    go(a, c, hyps, ivars) && go(b, d, hyps, ivars)
                }
                (Proj1(a), Proj1(b))
                | (Proj2(a), Proj2(b))
                | (Inj1(a), Inj1(b))
                | (Inj2(a), Inj2(b))
                | (Reset(a), Reset(b)) => go(a, b, hyps, ivars),
                (Anno(a, f), Anno(b, g)) => go(a, b, hyps, ivars) && formulas_eq(f, g, ivars),
                (TApp(a, t), TApp(b, u)) => go(a, b, hyps, ivars) && terms_eq(t, u, ivars),
                (ExIntro(t, a), ExIntro(u, b)) => {
                    terms_eq(t, u, ivars) && go(a, b, hyps, ivars)
                }
                (
                    Case {
                        scrut: s1,
                        left_hyp: lh1,
                        left: l1,
                        right_hyp: rh1,
                        right: r1,
                    },
                    Case {
                        scrut: s2,
                        left_hyp: lh2,
                        left: l2,
                        right_hyp: rh2,
                        right: r2,
                    },
                ) => {
                    if !go(s1, s2, hyps, ivars) {
                        return false;
                    }
                    hyps.push((lh1.clone(), lh2.clone()));
                    let ok = go(l1, l2, hyps, ivars);
                    hyps.pop();
                    if !ok {
                        return false;
                    }
                    hyps.push((rh1.clone(), rh2.clone()));
                    let ok = go(r1, r2, hyps, ivars);
                    hyps.pop();
                    ok
                }
                (
                    Lam {
                        hyp: h1,
                        anno: f1,
                        body: b1,
                    },
                    Lam {
                        hyp: h2,
                        anno: f2,
                        body: b2,
                    },
                ) => {
                    if !formulas_eq(f1, f2, ivars) {
                        return false;
                    }
                    hyps.push((h1.clone(), h2.clone()));
                    let ok = go(b1, b2, hyps, ivars);
                    hyps.pop();
                    ok
                }
                (TLam { var: v1, body: b1 }, TLam { var: v2, body: b2 }) => {
                    ivars.push((v1.clone(), v2.clone()));
                    hyps.push((v1.clone(), v2.clone()));
                    let ok = go(b1, b2, hyps, ivars);
                    hyps.pop();
                    ivars.pop();
                    ok
                }
                (
                    BLam {
                        var: v1,
                        len: l1,
                        body: b1,
                    },
                    BLam {
                        var: v2,
                        len: l2,
                        body: b2,
                    },
                ) => {
                    if !terms_eq(l1, l2, ivars) {
                        return false;
                    }
                    ivars.push((v1.clone(), v2.clone()));
                    hyps.push((v1.clone(), v2.clone()));
                    let ok = go(b1, b2, hyps, ivars);
                    hyps.pop();
                    ivars.pop();
                    ok
                }
                (
                    Dest {
                        scrut: s1,
                        var: v1,
                        hyp: h1,
                        body: b1,
                    },
                    Dest {
                        scrut: s2,
                        var: v2,
                        hyp: h2,
                        body: b2,
                    },
                ) => {
                    if !go(s1, s2, hyps, ivars) {
                        return false;
                    }
                    ivars.push((v1.clone(), v2.clone()));
                    hyps.push((h1.clone(), h2.clone()));
                    let ok = go(b1, b2, hyps, ivars);
                    hyps.pop();
                    ivars.pop();
                    ok
                }
                (Shift { k: k1, body: b1 }, Shift { k: k2, body: b2 }) => {
                    hyps.push((k1.clone(), k2.clone()));
                    let ok = go(b1, b2, hyps, ivars);
                    hyps.pop();
                    ok
                }
                (
                    EqSubst {
                        eq: e1,
                        var: v1,
                        motive: m1,
                        body: b1,
                    },
                    EqSubst {
                        eq: e2,
                        var: v2,
                        motive: m2,
                        body: b2,
                    },
                ) => {
                    if !go(e1, e2, hyps, ivars) || !go(b1, b2, hyps, ivars) {
                        return false;
                    }
                    ivars.push((v1.clone(), v2.clone()));
                    let ok = formulas_eq(m1, m2, ivars);
                    ivars.pop();
                    ok
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

fn subst_hyp_under(
    bound: &str,
    body: &ProofTerm,
    a: &str,
    q: &ProofTerm,
) -> (String, ProofTerm) {
    if bound == a {
        return (bound.to_string(), body.clone());
    }
    if q.free_hyps().contains(bound) && body.free_hyps().contains(a) {
        let mut avoid = body.free_hyps();
        avoid.extend(q.free_hyps());
        avoid.insert(a.to_string());
        let fresh = fresh_name(bound, &avoid);
        let renamed = body.subst_hyp(bound, &ProofTerm::hyp(&fresh));
        (fresh, renamed.subst_hyp(a, q))
    } else {
        (bound.to_string(), body.subst_hyp(a, q))
    }
}

/// Like `subst_hyp_under` for a `TLam`/`BLam` binder, which shadows the
/// hypothesis namespace under its own name. Renaming such a binder would
/// also rename an individual variable, so a conflicting capture renames
/// uniformly in both namespaces.
fn subst_hyp_under_tbinder(
    bound: &str,
    body: &ProofTerm,
    a: &str,
    q: &ProofTerm,
) -> (String, ProofTerm) {
    if bound == a {
        return (bound.to_string(), body.clone());
    }
    if q.free_hyps().contains(bound) && body.free_hyps().contains(a) {
        let mut avoid = body.free_hyps();
        avoid.extend(body.free_ivars());
        avoid.extend(q.free_hyps());
        avoid.insert(a.to_string());
        let fresh = fresh_name(bound, &avoid);
        let renamed = body
            .subst_hyp(bound, &ProofTerm::hyp(&fresh))
            .rename_ivar(bound, &fresh);
        (fresh, renamed.subst_hyp(a, q))
    } else {
        (bound.to_string(), body.subst_hyp(a, q))
    }
}

fn subst_ivar_under(
    bound: &str,
    body: &ProofTerm,
    x: &str,
    t: &IndTerm,
) -> (String, ProofTerm) {
    if bound == x {
        return (bound.to_string(), body.clone());
    }
    if t.contains_var(bound) && body.free_ivars().contains(x) {
        let mut avoid = body.free_ivars();
        avoid.extend(body.free_hyps());
        avoid.extend(t.free_vars());
        avoid.insert(x.to_string());
        let fresh = fresh_name(bound, &avoid);
        let renamed = body
            .rename_ivar(bound, &fresh)
            .subst_hyp(bound, &ProofTerm::hyp(&fresh));
        (fresh, renamed.subst_ivar(x, t))
    } else {
        (bound.to_string(), body.subst_ivar(x, t))
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofTerm::HypVar(a) => write!(f, "{}", a),
            ProofTerm::Pair(l, r) => write!(f, "(pair {} {})", l, r),
            ProofTerm::Proj1(p) => write!(f, "(fst {})", p),
            ProofTerm::Proj2(p) => write!(f, "(snd {})", p),
            ProofTerm::Inj1(p) => write!(f, "(inl {})", p),
            ProofTerm::Inj2(p) => write!(f, "(inr {})", p),
            ProofTerm::Case {
                scrut,
                left_hyp,
                left,
                right_hyp,
                right,
            } => write!(
                f,
                "(case {} ({} {}) ({} {}))",
                scrut, left_hyp, left, right_hyp, right
            ),
            ProofTerm::Lam { hyp, anno, body } => {
                write!(f, "(lam {} {} {})", hyp, anno, body)
            }
            ProofTerm::PApp(l, r) => write!(f, "(app {} {})", l, r),
            ProofTerm::TLam { var, body } => write!(f, "(tlam {} {})", var, body),
            ProofTerm::BLam { var, len, body } => {
                write!(f, "(blam {} {} {})", var, len, body)
            }
            ProofTerm::TApp(p, t) => write!(f, "(tapp {} {})", p, t),
            ProofTerm::ExIntro(t, p) => write!(f, "(exi {} {})", t, p),
            ProofTerm::Dest {
                scrut,
                var,
                hyp,
                body,
            } => write!(f, "(dest {} ({} {}) {})", scrut, var, hyp, body),
            ProofTerm::Reset(p) => write!(f, "(reset {})", p),
            ProofTerm::Shift { k, body } => write!(f, "(shift {} {})", k, body),
            ProofTerm::AxConst(n) => write!(f, "(ax {})", n),
            ProofTerm::EqSubst {
                eq,
                var,
                motive,
                body,
            } => write!(f, "(eqsubst {} {} {} {})", eq, var, motive, body),
            ProofTerm::Anno(p, g) => write!(f, "(anno {} {})", p, g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;
    use crate::syntax::term::IndTerm as T;

    #[test]
    fn subst_hyp_var() {
        let p = ProofTerm::hyp("a");
        let q = ProofTerm::pair(ProofTerm::hyp("x"), ProofTerm::hyp("y"));
        assert_eq!(p.subst_hyp("a", &q), q);
    }

    #[test]
    fn subst_hyp_avoids_capture() {
        // (lam b . a)[a := b]  must rename the binder.
        let f = Formula::eq(T::Zero, T::Zero);
        let p = ProofTerm::lam("b", f.clone(), ProofTerm::hyp("a"));
        let got = p.subst_hyp("a", &ProofTerm::hyp("b"));
        let want = ProofTerm::lam("b1", f, ProofTerm::hyp("b"));
        assert!(got.alpha_eq(&want));
        assert!(got.free_hyps().contains("b"));
    }

    #[test]
    fn subst_commutes_with_reset() {
        let p = ProofTerm::reset(ProofTerm::hyp("a"));
        let q = ProofTerm::hyp("q");
        assert_eq!(p.subst_hyp("a", &q), ProofTerm::reset(q));
    }

    #[test]
    fn alpha_eq_shift() {
        let a = ProofTerm::shift("k", ProofTerm::papp(ProofTerm::hyp("k"), ProofTerm::hyp("h")));
        let b = ProofTerm::shift("j", ProofTerm::papp(ProofTerm::hyp("j"), ProofTerm::hyp("h")));
        assert!(a.alpha_eq(&b));
        let c = ProofTerm::shift("j", ProofTerm::papp(ProofTerm::hyp("j"), ProofTerm::hyp("g")));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn alpha_eq_tlam_renames_terms() {
        let a = ProofTerm::tlam(
            "x",
            ProofTerm::exi(T::nvar("x"), ProofTerm::hyp("r")),
        );
        let b = ProofTerm::tlam(
            "y",
            ProofTerm::exi(T::nvar("y"), ProofTerm::hyp("r")),
        );
        assert!(a.alpha_eq(&b));
    }

    #[test]
    fn subst_ivar_under_dest() {
        // dest binds x; substituting for x inside is shadowed.
        let p = ProofTerm::dest(
            ProofTerm::hyp("s"),
            "x",
            "a",
            ProofTerm::exi(T::nvar("x"), ProofTerm::hyp("a")),
        );
        let got = p.subst_ivar("x", &T::Zero);
        assert!(got.alpha_eq(&p));
    }

    #[test]
    fn display_matches_grammar() {
        let p = ProofTerm::reset(ProofTerm::pair(
            ProofTerm::hyp("a"),
            ProofTerm::ax("eq-refl"),
        ));
        assert_eq!(p.to_string(), "(reset (pair a (ax eq-refl)))");
        let q = ProofTerm::shift("k", ProofTerm::papp(ProofTerm::hyp("k"), ProofTerm::hyp("a")));
        assert_eq!(q.to_string(), "(shift k (app k a))");
    }
}
