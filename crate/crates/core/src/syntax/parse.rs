//! S-expression reader for sorts, terms, formulas, proofs and declaration
//! files. Binder sorts may be annotated `(all (x (-> 0 0)) ...)` or left
//! bare, in which case they are inferred from use; inference that leaves a
//! sort unconstrained defaults it to the base sort.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::formula::Formula;
use super::proof::ProofTerm;
use super::sort::Sort;
use super::term::IndTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{pos}: unexpected end of input")]
    UnexpectedEof { pos: Pos },
    #[error("{pos}: unexpected `)`")]
    UnexpectedClose { pos: Pos },
    #[error("{pos}: {msg}")]
    Malformed { pos: Pos, msg: String },
    #[error("{pos}: unbound variable `{name}`")]
    UnboundVar { pos: Pos, name: String },
    #[error("{pos}: sort mismatch: cannot unify {left} with {right}")]
    SortMismatch { pos: Pos, left: Sort, right: Sort },
    #[error("{pos}: unknown constant `{name}`")]
    UnknownConst { pos: Pos, name: String },
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Malformed {
        pos,
        msg: msg.into(),
    })
}

// ---------------------------------------------------------------------------
// S-expressions

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(_, _) => None,
        }
    }
}

struct Reader<'a> {
    src: &'a [u8],
    idx: usize,
    line: u32,
    col: u32,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            src: src.as_bytes(),
            idx: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.idx)?;
        self.idx += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.idx).copied()
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b';' {
                while let Some(c) = self.bump() {
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_trivia();
        let pos = self.pos();
        match self.peek() {
            None => Err(ParseError::UnexpectedEof { pos }),
            Some(b'(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => return Err(ParseError::UnexpectedEof { pos: self.pos() }),
                        Some(b')') => {
                            self.bump();
                            return Ok(Sexp::List(items, pos));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(b')') => Err(ParseError::UnexpectedClose { pos }),
            Some(_) => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b';' {
                        break;
                    }
                    s.push(c as char);
                    self.bump();
                }
                Ok(Sexp::Atom(s, pos))
            }
        }
    }

    fn read_all(&mut self) -> Result<Vec<Sexp>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek().is_none() {
                return Ok(out);
            }
            out.push(self.read()?);
        }
    }
}

// ---------------------------------------------------------------------------
// Sort inference

struct Solver {
    bindings: Vec<Option<Sort>>,
}

impl Solver {
    fn new() -> Self {
        Solver {
            bindings: Vec::new(),
        }
    }

    fn fresh(&mut self) -> Sort {
        let id = self.bindings.len() as u32;
        self.bindings.push(None);
        Sort::Meta(id)
    }

    fn resolve(&self, s: &Sort) -> Sort {
        match s {
            Sort::Meta(i) => match &self.bindings[*i as usize] {
                Some(inner) => self.resolve(&inner.clone()),
                None => s.clone(),
            },
            Sort::Arrow(d, c) => Sort::arrow(self.resolve(d), self.resolve(c)),
            Sort::Base => Sort::Base,
        }
    }

    fn occurs(&self, id: u32, s: &Sort) -> bool {
        match self.resolve(s) {
            Sort::Meta(j) => j == id,
            Sort::Arrow(d, c) => self.occurs(id, &d) || self.occurs(id, &c),
            Sort::Base => false,
        }
    }

    fn unify(&mut self, a: &Sort, b: &Sort, pos: Pos) -> Result<(), ParseError> {
        let ra = self.resolve(a);
        let rb = self.resolve(b);
        match (&ra, &rb) {
            (Sort::Meta(i), Sort::Meta(j)) if i == j => Ok(()),
            (Sort::Meta(i), _) => {
                if self.occurs(*i, &rb) {
                    return Err(ParseError::SortMismatch {
                        pos,
                        left: ra,
                        right: rb,
                    });
                }
                self.bindings[*i as usize] = Some(rb);
                Ok(())
            }
            (_, Sort::Meta(j)) => {
                if self.occurs(*j, &ra) {
                    return Err(ParseError::SortMismatch {
                        pos,
                        left: ra,
                        right: rb,
                    });
                }
                self.bindings[*j as usize] = Some(ra);
                Ok(())
            }
            (Sort::Base, Sort::Base) => Ok(()),
            (Sort::Arrow(d1, c1), Sort::Arrow(d2, c2)) => {
                self.unify(d1, d2, pos)?;
                self.unify(c1, c2, pos)
            }
            _ => Err(ParseError::SortMismatch {
                pos,
                left: ra,
                right: rb,
            }),
        }
    }

    /// Resolves a sort fully, defaulting unconstrained metas to the base sort.
    fn zonk(&self, s: &Sort) -> Sort {
        match self.resolve(s) {
            Sort::Meta(_) => Sort::Base,
            Sort::Arrow(d, c) => Sort::arrow(self.zonk(&d), self.zonk(&c)),
            Sort::Base => Sort::Base,
        }
    }
}

fn zonk_term(s: &Solver, t: &IndTerm) -> IndTerm {
    match t {
        IndTerm::Var(n, srt) => IndTerm::Var(n.clone(), s.zonk(srt)),
        IndTerm::Succ(inner) => IndTerm::succ(zonk_term(s, inner)),
        IndTerm::Pi(a, b) => IndTerm::Pi(s.zonk(a), s.zonk(b)),
        IndTerm::Sigma(a, b, c) => IndTerm::Sigma(s.zonk(a), s.zonk(b), s.zonk(c)),
        IndTerm::Rec(a) => IndTerm::Rec(s.zonk(a)),
        IndTerm::App(f, a) => IndTerm::app(zonk_term(s, f), zonk_term(s, a)),
        _ => t.clone(),
    }
}

fn zonk_formula(s: &Solver, f: &Formula) -> Formula {
    match f {
        Formula::Eq(l, r) => Formula::Eq(zonk_term(s, l), zonk_term(s, r)),
        Formula::And(l, r) => Formula::and(zonk_formula(s, l), zonk_formula(s, r)),
        Formula::Or(l, r) => Formula::or(zonk_formula(s, l), zonk_formula(s, r)),
        Formula::Imp(l, r) => Formula::imp(zonk_formula(s, l), zonk_formula(s, r)),
        Formula::Forall(x, srt, b) => {
            Formula::Forall(x.clone(), s.zonk(srt), Box::new(zonk_formula(s, b)))
        }
        Formula::Exists(x, srt, b) => {
            Formula::Exists(x.clone(), s.zonk(srt), Box::new(zonk_formula(s, b)))
        }
        Formula::BForallStr(q, len, b) => Formula::BForallStr(
            q.clone(),
            zonk_term(s, len),
            Box::new(zonk_formula(s, b)),
        ),
    }
}

fn zonk_proof(s: &Solver, p: &ProofTerm) -> ProofTerm {
    match p {
        ProofTerm::HypVar(_) | ProofTerm::AxConst(_) => p.clone(),
        ProofTerm::Pair(l, r) => ProofTerm::pair(zonk_proof(s, l), zonk_proof(s, r)),
        ProofTerm::Proj1(q) => ProofTerm::proj1(zonk_proof(s, q)),
        ProofTerm::Proj2(q) => ProofTerm::proj2(zonk_proof(s, q)),
        ProofTerm::Inj1(q) => ProofTerm::inj1(zonk_proof(s, q)),
        ProofTerm::Inj2(q) => ProofTerm::inj2(zonk_proof(s, q)),
        ProofTerm::PApp(l, r) => ProofTerm::papp(zonk_proof(s, l), zonk_proof(s, r)),
        ProofTerm::Reset(q) => ProofTerm::reset(zonk_proof(s, q)),
        ProofTerm::Anno(q, f) => ProofTerm::anno(zonk_proof(s, q), zonk_formula(s, f)),
        ProofTerm::TApp(q, t) => ProofTerm::tapp(zonk_proof(s, q), zonk_term(s, t)),
        ProofTerm::ExIntro(t, q) => ProofTerm::exi(zonk_term(s, t), zonk_proof(s, q)),
        ProofTerm::Case {
            scrut,
            left_hyp,
            left,
            right_hyp,
            right,
        } => ProofTerm::case(
            zonk_proof(s, scrut),
            (left_hyp, zonk_proof(s, left)),
            (right_hyp, zonk_proof(s, right)),
        ),
        ProofTerm::Lam { hyp, anno, body } => {
            ProofTerm::lam(hyp, zonk_formula(s, anno), zonk_proof(s, body))
        }
        ProofTerm::TLam { var, body } => ProofTerm::tlam(var, zonk_proof(s, body)),
        ProofTerm::BLam { var, len, body } => ProofTerm::BLam {
            var: var.clone(),
            len: zonk_term(s, len),
            body: Box::new(zonk_proof(s, body)),
        },
        ProofTerm::Dest {
            scrut,
            var,
            hyp,
            body,
        } => ProofTerm::dest(zonk_proof(s, scrut), var, hyp, zonk_proof(s, body)),
        ProofTerm::Shift { k, body } => ProofTerm::shift(k, zonk_proof(s, body)),
        ProofTerm::EqSubst {
            eq,
            var,
            motive,
            body,
        } => ProofTerm::eqsubst(
            zonk_proof(s, eq),
            var,
            zonk_formula(s, motive),
            zonk_proof(s, body),
        ),
    }
}

// ---------------------------------------------------------------------------
// Elaboration

const TERM_KEYWORDS: &[&str] = &["z", "s", "pi", "sig", "rec", "const", "choice"];
const FORMULA_KEYWORDS: &[&str] = &["=", "and", "or", "imp", "all", "ex", "ballstr"];
const PROOF_KEYWORDS: &[&str] = &[
    "pair", "fst", "snd", "inl", "inr", "case", "lam", "app", "tlam", "blam", "tapp", "exi",
    "dest", "reset", "shift", "ax", "eqsubst", "anno",
];

fn is_reserved(word: &str) -> bool {
    TERM_KEYWORDS.contains(&word)
        || FORMULA_KEYWORDS.contains(&word)
        || PROOF_KEYWORDS.contains(&word)
}

/// Sorts for the standard library constants; lives here so the reader does
/// not depend on the arithmetic module.
pub(crate) fn builtin_const_sort(name: &str) -> Option<Sort> {
    let n0 = Sort::Base;
    let f1 = |a: Sort, b: Sort| Sort::arrow(a, b);
    let bin = f1(n0.clone(), f1(n0.clone(), n0.clone()));
    let tri = f1(n0.clone(), bin.clone());
    Some(match name {
        "succ" | "pred" | "len" | "hd" | "tail" | "code-succ" => f1(n0.clone(), n0),
        "min" | "max" | "eqnat" | "concat" | "initseg" | "at" | "fitlen" | "add" | "sub" => bin,
        "ifelse" => tri,
        "segment" => f1(Sort::stream(), bin),
        _ => return None,
    })
}

struct Elab<'a> {
    solver: Solver,
    /// Individual variables in scope, innermost last.
    ivars: Vec<(String, Sort)>,
    /// Free variable declarations (from files or callers).
    free: &'a BTreeMap<String, Sort>,
}

impl<'a> Elab<'a> {
    fn new(free: &'a BTreeMap<String, Sort>) -> Self {
        Elab {
            solver: Solver::new(),
            ivars: Vec::new(),
            free,
        }
    }

    fn lookup(&self, name: &str) -> Option<Sort> {
        for (n, s) in self.ivars.iter().rev() {
            if n == name {
                return Some(s.clone());
            }
        }
        self.free.get(name).cloned()
    }

    fn sort(&mut self, sx: &Sexp) -> Result<Sort, ParseError> {
        match sx {
            Sexp::Atom(a, pos) => match a.as_str() {
                "0" | "bool" | "bool*" => Ok(Sort::Base),
                "1" => Ok(Sort::stream()),
                _ => err(*pos, format!("expected a sort, found `{}`", a)),
            },
            Sexp::List(items, pos) => {
                if items.len() == 3 && items[0].as_atom() == Some("->") {
                    let d = self.sort(&items[1])?;
                    let c = self.sort(&items[2])?;
                    Ok(Sort::arrow(d, c))
                } else {
                    err(*pos, "expected a sort")
                }
            }
        }
    }

    /// Parses a binder occurrence: either `x` or `(x SORT)`.
    fn binder(&mut self, sx: &Sexp) -> Result<(String, Sort), ParseError> {
        match sx {
            Sexp::Atom(name, pos) => {
                if is_reserved(name) {
                    return err(*pos, format!("`{}` is reserved", name));
                }
                Ok((name.clone(), self.solver.fresh()))
            }
            Sexp::List(items, pos) => {
                if items.len() != 2 {
                    return err(*pos, "expected `x` or `(x SORT)`");
                }
                let name = match items[0].as_atom() {
                    Some(n) if !is_reserved(n) => n.to_string(),
                    _ => return err(items[0].pos(), "expected a variable name"),
                };
                let sort = self.sort(&items[1])?;
                Ok((name, sort))
            }
        }
    }

    fn term(&mut self, sx: &Sexp) -> Result<(IndTerm, Sort), ParseError> {
        match sx {
            Sexp::Atom(a, pos) => match a.as_str() {
                "z" => Ok((IndTerm::Zero, Sort::Base)),
                "pi" => {
                    let r = self.solver.fresh();
                    let t = self.solver.fresh();
                    let sort = Sort::arrow(r.clone(), Sort::arrow(t.clone(), r.clone()));
                    Ok((IndTerm::Pi(r, t), sort))
                }
                "sig" => {
                    let d = self.solver.fresh();
                    let r = self.solver.fresh();
                    let t = self.solver.fresh();
                    let sort = Sort::arrow(
                        Sort::arrow(d.clone(), Sort::arrow(r.clone(), t.clone())),
                        Sort::arrow(
                            Sort::arrow(d.clone(), r.clone()),
                            Sort::arrow(d.clone(), t.clone()),
                        ),
                    );
                    Ok((IndTerm::Sigma(d, r, t), sort))
                }
                "rec" => {
                    let r = self.solver.fresh();
                    let sort = Sort::arrow(
                        Sort::Base,
                        Sort::arrow(
                            r.clone(),
                            Sort::arrow(
                                Sort::arrow(r.clone(), Sort::arrow(Sort::Base, r.clone())),
                                r.clone(),
                            ),
                        ),
                    );
                    Ok((IndTerm::Rec(r), sort))
                }
                _ if a.starts_with('#') => match a[1..].parse::<u64>() {
                    Ok(n) => Ok((IndTerm::numeral(n), Sort::Base)),
                    Err(_) => err(*pos, format!("malformed numeral `{}`", a)),
                },
                name => {
                    if is_reserved(name) {
                        return err(*pos, format!("`{}` cannot appear as a term", name));
                    }
                    match self.lookup(name) {
                        Some(sort) => Ok((IndTerm::Var(name.to_string(), sort.clone()), sort)),
                        None => Err(ParseError::UnboundVar {
                            pos: *pos,
                            name: name.to_string(),
                        }),
                    }
                }
            },
            Sexp::List(items, pos) => {
                let head = items.first().and_then(|i| i.as_atom());
                match head {
                    Some("s") if items.len() == 2 => {
                        let (t, st) = self.term(&items[1])?;
                        self.solver.unify(&st, &Sort::Base, items[1].pos())?;
                        Ok((IndTerm::succ(t), Sort::Base))
                    }
                    Some("const") if items.len() == 2 => {
                        let name = items[1]
                            .as_atom()
                            .ok_or_else(|| ParseError::Malformed {
                                pos: items[1].pos(),
                                msg: "expected a constant name".into(),
                            })?;
                        match builtin_const_sort(name) {
                            Some(sort) => Ok((IndTerm::cnst(name), sort)),
                            None => Err(ParseError::UnknownConst {
                                pos: items[1].pos(),
                                name: name.to_string(),
                            }),
                        }
                    }
                    Some("choice") => err(*pos, "choice terms only arise at runtime"),
                    _ if items.len() == 2 => {
                        let (f, sf) = self.term(&items[0])?;
                        let (a, sa) = self.term(&items[1])?;
                        let c = self.solver.fresh();
                        self.solver
                            .unify(&sf, &Sort::arrow(sa, c.clone()), *pos)?;
                        Ok((IndTerm::app(f, a), c))
                    }
                    _ => err(*pos, "malformed term"),
                }
            }
        }
    }

    fn term_at(&mut self, sx: &Sexp, want: &Sort) -> Result<IndTerm, ParseError> {
        let (t, s) = self.term(sx)?;
        self.solver.unify(&s, want, sx.pos())?;
        Ok(t)
    }

    fn formula(&mut self, sx: &Sexp) -> Result<Formula, ParseError> {
        let Sexp::List(items, pos) = sx else {
            return err(sx.pos(), "expected a formula");
        };
        let head = items
            .first()
            .and_then(|i| i.as_atom())
            .ok_or_else(|| ParseError::Malformed {
                pos: *pos,
                msg: "expected a formula".into(),
            })?;
        match head {
            "=" if items.len() == 3 => {
                let l = self.term_at(&items[1], &Sort::Base)?;
                let r = self.term_at(&items[2], &Sort::Base)?;
                Ok(Formula::Eq(l, r))
            }
            "and" | "or" | "imp" if items.len() == 3 => {
                let l = self.formula(&items[1])?;
                let r = self.formula(&items[2])?;
                Ok(match head {
                    "and" => Formula::and(l, r),
                    "or" => Formula::or(l, r),
                    _ => Formula::imp(l, r),
                })
            }
            "all" | "ex" if items.len() == 3 => {
                let (name, sort) = self.binder(&items[1])?;
                self.ivars.push((name.clone(), sort.clone()));
                let body = self.formula(&items[2]);
                self.ivars.pop();
                let body = body?;
                Ok(if head == "all" {
                    Formula::Forall(name, sort, Box::new(body))
                } else {
                    Formula::Exists(name, sort, Box::new(body))
                })
            }
            "ballstr" if items.len() == 4 => {
                let name = match items[1].as_atom() {
                    Some(n) if !is_reserved(n) => n.to_string(),
                    _ => return err(items[1].pos(), "expected a variable name"),
                };
                let len = self.term_at(&items[2], &Sort::Base)?;
                self.ivars.push((name.clone(), Sort::Base));
                let body = self.formula(&items[3]);
                self.ivars.pop();
                Ok(Formula::BForallStr(name, len, Box::new(body?)))
            }
            _ => err(*pos, format!("malformed formula head `{}`", head)),
        }
    }

    fn proof(&mut self, sx: &Sexp) -> Result<ProofTerm, ParseError> {
        match sx {
            Sexp::Atom(a, pos) => {
                if is_reserved(a) {
                    err(*pos, format!("`{}` cannot appear as a hypothesis", a))
                } else {
                    Ok(ProofTerm::hyp(a))
                }
            }
            Sexp::List(items, pos) => {
                let head = items
                    .first()
                    .and_then(|i| i.as_atom())
                    .ok_or_else(|| ParseError::Malformed {
                        pos: *pos,
                        msg: "expected a proof term".into(),
                    })?;
                match head {
                    "pair" | "app" if items.len() == 3 => {
                        let l = self.proof(&items[1])?;
                        let r = self.proof(&items[2])?;
                        Ok(if head == "pair" {
                            ProofTerm::pair(l, r)
                        } else {
                            ProofTerm::papp(l, r)
                        })
                    }
                    "fst" | "snd" | "inl" | "inr" | "reset" if items.len() == 2 => {
                        let p = self.proof(&items[1])?;
                        Ok(match head {
                            "fst" => ProofTerm::proj1(p),
                            "snd" => ProofTerm::proj2(p),
                            "inl" => ProofTerm::inj1(p),
                            "inr" => ProofTerm::inj2(p),
                            _ => ProofTerm::reset(p),
                        })
                    }
                    "case" if items.len() == 4 => {
                        let scrut = self.proof(&items[1])?;
                        let (lh, lb) = self.case_branch(&items[2])?;
                        let (rh, rb) = self.case_branch(&items[3])?;
                        Ok(ProofTerm::case(scrut, (&lh, lb), (&rh, rb)))
                    }
                    "lam" if items.len() == 4 => {
                        let hyp = self.hyp_name(&items[1])?;
                        let anno = self.formula(&items[2])?;
                        let body = self.proof(&items[3])?;
                        Ok(ProofTerm::lam(&hyp, anno, body))
                    }
                    "tlam" if items.len() == 3 => {
                        let (name, sort) = self.binder(&items[1])?;
                        self.ivars.push((name.clone(), sort));
                        let body = self.proof(&items[2]);
                        self.ivars.pop();
                        Ok(ProofTerm::tlam(&name, body?))
                    }
                    "blam" if items.len() == 4 => {
                        let name = self.hyp_name(&items[1])?;
                        let len = self.term_at(&items[2], &Sort::Base)?;
                        self.ivars.push((name.clone(), Sort::Base));
                        let body = self.proof(&items[3]);
                        self.ivars.pop();
                        Ok(ProofTerm::BLam {
                            var: name,
                            len,
                            body: Box::new(body?),
                        })
                    }
                    "tapp" if items.len() == 3 => {
                        let p = self.proof(&items[1])?;
                        let (t, _) = self.term(&items[2])?;
                        Ok(ProofTerm::tapp(p, t))
                    }
                    "exi" if items.len() == 3 => {
                        let (t, _) = self.term(&items[1])?;
                        let p = self.proof(&items[2])?;
                        Ok(ProofTerm::exi(t, p))
                    }
                    "dest" if items.len() == 4 => {
                        let scrut = self.proof(&items[1])?;
                        let Sexp::List(binders, bpos) = &items[2] else {
                            return err(items[2].pos(), "expected `(x a)`");
                        };
                        if binders.len() != 2 {
                            return err(*bpos, "expected `(x a)`");
                        }
                        let var = self.hyp_name(&binders[0])?;
                        let hyp = self.hyp_name(&binders[1])?;
                        let fresh = self.solver.fresh();
                        self.ivars.push((var.clone(), fresh));
                        let body = self.proof(&items[3]);
                        self.ivars.pop();
                        Ok(ProofTerm::dest(scrut, &var, &hyp, body?))
                    }
                    "shift" if items.len() == 3 => {
                        let k = self.hyp_name(&items[1])?;
                        let body = self.proof(&items[2])?;
                        Ok(ProofTerm::shift(&k, body))
                    }
                    "ax" if items.len() == 2 => {
                        let name = items[1].as_atom().ok_or_else(|| ParseError::Malformed {
                            pos: items[1].pos(),
                            msg: "expected an axiom name".into(),
                        })?;
                        Ok(ProofTerm::ax(name))
                    }
                    "eqsubst" if items.len() == 5 => {
                        let e = self.proof(&items[1])?;
                        let var = self.hyp_name(&items[2])?;
                        self.ivars.push((var.clone(), Sort::Base));
                        let motive = self.formula(&items[3]);
                        self.ivars.pop();
                        let body = self.proof(&items[4])?;
                        Ok(ProofTerm::eqsubst(e, &var, motive?, body))
                    }
                    "anno" if items.len() == 3 => {
                        let p = self.proof(&items[1])?;
                        let f = self.formula(&items[2])?;
                        Ok(ProofTerm::anno(p, f))
                    }
                    _ => err(*pos, format!("malformed proof term head `{}`", head)),
                }
            }
        }
    }

    fn hyp_name(&self, sx: &Sexp) -> Result<String, ParseError> {
        match sx.as_atom() {
            Some(n) if !is_reserved(n) => Ok(n.to_string()),
            _ => err(sx.pos(), "expected a name"),
        }
    }

    fn case_branch(&mut self, sx: &Sexp) -> Result<(String, ProofTerm), ParseError> {
        let Sexp::List(items, pos) = sx else {
            return err(sx.pos(), "expected `(a p)`");
        };
        if items.len() != 2 {
            return err(*pos, "expected `(a p)`");
        }
        let hyp = self.hyp_name(&items[0])?;
        let body = self.proof(&items[1])?;
        Ok((hyp, body))
    }
}

// ---------------------------------------------------------------------------
// Entry points

fn read_one(text: &str) -> Result<Sexp, ParseError> {
    let mut r = Reader::new(text);
    let sx = r.read()?;
    r.skip_trivia();
    if r.peek().is_some() {
        return err(r.pos(), "trailing input");
    }
    Ok(sx)
}

/// Parses a single formula. `free` declares the sorts of free variables.
pub fn parse_formula(text: &str, free: &BTreeMap<String, Sort>) -> Result<Formula, ParseError> {
    let sx = read_one(text)?;
    let mut elab = Elab::new(free);
    let f = elab.formula(&sx)?;
    Ok(zonk_formula(&elab.solver, &f))
}

/// Parses a single proof term.
pub fn parse_proof(text: &str, free: &BTreeMap<String, Sort>) -> Result<ProofTerm, ParseError> {
    let sx = read_one(text)?;
    let mut elab = Elab::new(free);
    let p = elab.proof(&sx)?;
    Ok(zonk_proof(&elab.solver, &p))
}

/// Parses a single individual term.
pub fn parse_term(text: &str, free: &BTreeMap<String, Sort>) -> Result<IndTerm, ParseError> {
    let sx = read_one(text)?;
    let mut elab = Elab::new(free);
    let (t, _) = elab.term(&sx)?;
    Ok(zonk_term(&elab.solver, &t))
}

/// Contents of a declaration file.
#[derive(Debug, Clone, Default)]
pub struct Declarations {
    pub vars: BTreeMap<String, Sort>,
    pub hyps: Vec<(String, Formula)>,
    pub lemmas: Vec<(String, Formula)>,
    pub param: Option<Formula>,
    pub goal: Option<Formula>,
    pub proof: Option<ProofTerm>,
}

/// Parses a declaration file: a sequence of `(var x SORT)`, `(hyp a F)`,
/// `(lemma name F)`, `(param F)` and one `(check F P)` form.
pub fn parse_file(text: &str) -> Result<Declarations, ParseError> {
    let mut r = Reader::new(text);
    let forms = r.read_all()?;
    let mut decls = Declarations::default();
    for form in &forms {
        let Sexp::List(items, pos) = form else {
            return err(form.pos(), "expected a declaration form");
        };
        let head = items
            .first()
            .and_then(|i| i.as_atom())
            .ok_or_else(|| ParseError::Malformed {
                pos: *pos,
                msg: "expected a declaration form".into(),
            })?;
        match head {
            "var" if items.len() == 3 => {
                let name = items[1].as_atom().ok_or_else(|| ParseError::Malformed {
                    pos: items[1].pos(),
                    msg: "expected a variable name".into(),
                })?;
                let mut elab = Elab::new(&decls.vars);
                let sort = elab.sort(&items[2])?;
                decls.vars.insert(name.to_string(), sort);
            }
            "hyp" if items.len() == 3 => {
                let name = items[1].as_atom().ok_or_else(|| ParseError::Malformed {
                    pos: items[1].pos(),
                    msg: "expected a hypothesis name".into(),
                })?;
                let mut elab = Elab::new(&decls.vars);
                let f = elab.formula(&items[2])?;
                let f = zonk_formula(&elab.solver, &f);
                decls.hyps.push((name.to_string(), f));
            }
            "lemma" if items.len() == 3 => {
                let name = items[1].as_atom().ok_or_else(|| ParseError::Malformed {
                    pos: items[1].pos(),
                    msg: "expected a lemma name".into(),
                })?;
                let mut elab = Elab::new(&decls.vars);
                let f = elab.formula(&items[2])?;
                let f = zonk_formula(&elab.solver, &f);
                decls.lemmas.push((name.to_string(), f));
            }
            "param" if items.len() == 2 => {
                let mut elab = Elab::new(&decls.vars);
                let f = elab.formula(&items[1])?;
                decls.param = Some(zonk_formula(&elab.solver, &f));
            }
            "check" if items.len() == 3 => {
                let mut elab = Elab::new(&decls.vars);
                let goal = elab.formula(&items[1])?;
                let proof = elab.proof(&items[2])?;
                decls.goal = Some(zonk_formula(&elab.solver, &goal));
                decls.proof = Some(zonk_proof(&elab.solver, &proof));
            }
            _ => return err(*pos, format!("unknown declaration `{}`", head)),
        }
    }
    Ok(decls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::IndTerm as T;

    fn no_free() -> BTreeMap<String, Sort> {
        BTreeMap::new()
    }

    #[test]
    fn parse_exists_formula() {
        let f = parse_formula("(ex n (= n z))", &no_free()).unwrap();
        assert_eq!(
            f,
            Formula::exists("n", Sort::Base, Formula::eq(T::nvar("n"), T::Zero))
        );
    }

    #[test]
    fn parse_reset_pair() {
        let p = parse_proof("(reset (pair z-is (ax eq-refl)))", &no_free()).unwrap();
        assert!(matches!(p, ProofTerm::Reset(_)));
    }

    #[test]
    fn syntax_error_has_location() {
        let e = parse_proof("(shift k", &no_free()).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("1:"), "missing location in: {msg}");
    }

    #[test]
    fn parse_numerals() {
        assert_eq!(parse_term("#3", &no_free()).unwrap(), T::numeral(3));
        assert_eq!(parse_term("(s (s z))", &no_free()).unwrap(), T::numeral(2));
    }

    #[test]
    fn infers_stream_sorts() {
        // b is applied to a numeral, so it must be a stream.
        let f = parse_formula("(all b (= (b z) z))", &no_free()).unwrap();
        match f {
            Formula::Forall(_, s, _) => assert_eq!(s, Sort::stream()),
            _ => panic!("wrong shape"),
        }
    }

    #[test]
    fn annotated_binders() {
        let f = parse_formula("(all (b (-> 0 0)) (= (b z) z))", &no_free()).unwrap();
        match f {
            Formula::Forall(_, s, _) => assert_eq!(s, Sort::stream()),
            _ => panic!("wrong shape"),
        }
    }

    #[test]
    fn combinator_sorts_pin_through_application() {
        // pi applied to two numerals is the constant function at base sort.
        let t = parse_term("((pi z) #1)", &no_free()).unwrap();
        match t.spine().0 {
            IndTerm::Pi(a, b) => {
                assert_eq!(*a, Sort::Base);
                assert_eq!(*b, Sort::Base);
            }
            _ => panic!("wrong head"),
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let texts = [
            "(ex n (= n z))",
            "(and (= z z) (or (= z #1) (imp (= z z) (= z z))))",
            "(ballstr q #2 (ex l (= l q)))",
            "(all (b (-> 0 0)) (ex n (= (b n) z)))",
        ];
        for text in texts {
            let f = parse_formula(text, &no_free()).unwrap();
            let printed = f.to_string();
            let f2 = parse_formula(&printed, &no_free()).unwrap();
            assert!(f.alpha_eq(&f2), "round trip failed for {text}");
        }
    }

    #[test]
    fn proof_round_trip() {
        let texts = [
            "(reset (exi z (tapp (ax eq-refl) z)))",
            "(shift k (app k (inr (lam a (= z z) (app k (inl a))))))",
            "(case h (a (inl a)) (b (inr b)))",
            "(dest h (x a) (exi (s x) a))",
            "(eqsubst e x (= x z) p)",
        ];
        for text in texts {
            let p = parse_proof(text, &no_free()).unwrap();
            let printed = p.to_string();
            let p2 = parse_proof(&printed, &no_free()).unwrap();
            assert!(p.alpha_eq(&p2), "round trip failed for {text}");
        }
    }

    #[test]
    fn parse_file_decls() {
        let text = "\
; a declaration file
(var n 0)
(param (ex m (= m n)))
(check (= n n) (tapp (ax eq-refl) n))
";
        let d = parse_file(text).unwrap();
        assert!(d.param.is_some());
        assert!(d.goal.is_some());
        assert!(d.proof.is_some());
        assert_eq!(d.vars.len(), 1);
    }
}
