//! Defined constants of the standard library and term normalization.
//!
//! Every constant unfolds by a bounded, primitive-recursive rule; there is
//! no unbounded search. Normalization performs the combinator and recursor
//! reductions, constant unfolding, and the derived beta rule (bracket
//! abstractions reduce through the combinator rules).

use thiserror::Error;

use crate::arith::encode::{code_len, code_snoc, decode_string, encode_string};
use crate::syntax::term::{ChoiceId, IndTerm};

/// Sort of a standard library constant.
pub fn const_sort(name: &str) -> Option<Sort> {
    crate::syntax::parse::builtin_const_sort(name)
}

/// All standard library constant names.
pub const CONST_NAMES: &[&str] = &[
    "succ", "pred", "add", "sub", "min", "max", "eqnat", "len", "hd", "tail", "at", "concat",
    "initseg", "fitlen", "ifelse", "segment",
];

/// Default reduction budget for one normalization call.
pub const NORM_FUEL: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error("normalization ran out of fuel")]
    OutOfFuel,
    #[error("choice function {0} demanded at {1}")]
    Demand(ChoiceId, u64),
}

/// How applications of a choice function reduce.
pub enum ChoiceAnswer {
    /// The bit is known.
    Bit(u8),
    /// Leave the application symbolic.
    Inert,
    /// Suspend normalization and ask the machine to compute this bit.
    Demand,
}

pub trait ChoiceResolver {
    fn bit(&self, id: ChoiceId, arg: u64) -> ChoiceAnswer;
}

/// Resolver for pure contexts: choice applications stay symbolic.
pub struct NoChoices;

impl ChoiceResolver for NoChoices {
    fn bit(&self, _id: ChoiceId, _arg: u64) -> ChoiceAnswer {
        ChoiceAnswer::Inert
    }
}

struct Norm<'a> {
    resolver: &'a dyn ChoiceResolver,
    fuel: u64,
}

impl<'a> Norm<'a> {
    fn spend(&mut self) -> Result<(), NormError> {
        if self.fuel == 0 {
            return Err(NormError::OutOfFuel);
        }
        self.fuel -= 1;
        Ok(())
    }

    /// Fully normalizes an argument and reads it as a numeral if possible.
    fn as_nat(&mut self, t: &IndTerm) -> Result<(IndTerm, Option<u64>), NormError> {
        let n = self.normalize(t)?;
        let v = n.as_numeral();
        Ok((n, v))
    }

    fn whnf(&mut self, t: &IndTerm) -> Result<IndTerm, NormError> {
        let mut cur = t.clone();
        loop {
            let (head, args) = {
                let (h, a) = cur.spine();
                (h.clone(), a.into_iter().cloned().collect::<Vec<_>>())
            };
            let next = match &head {
                IndTerm::Pi(_, _) if args.len() >= 2 => {
                    self.spend()?;
                    Some(IndTerm::apps(args[0].clone(), args[2..].to_vec()))
                }
                IndTerm::Sigma(_, _, _) if args.len() >= 3 => {
                    self.spend()?;
                    let x = args[0].clone();
                    let y = args[1].clone();
                    let z = args[2].clone();
                    let head = IndTerm::app(
                        IndTerm::app(x, z.clone()),
                        IndTerm::app(y, z),
                    );
                    Some(IndTerm::apps(head, args[3..].to_vec()))
                }
                IndTerm::Rec(_) if args.len() >= 3 => {
                    let n = self.whnf(&args[0])?;
                    match &n {
                        IndTerm::Zero => {
                            self.spend()?;
                            Some(IndTerm::apps(args[1].clone(), args[3..].to_vec()))
                        }
                        IndTerm::Succ(x) => {
                            self.spend()?;
                            let rec_x = IndTerm::apps(
                                head.clone(),
                                [(**x).clone(), args[1].clone(), args[2].clone()],
                            );
                            // Normalize the accumulated value first: the
                            // step may duplicate it through a combinator,
                            // and duplicating an unreduced recursor blows
                            // up exponentially.
                            let rec_x = self.normalize(&rec_x)?;
                            let stepd = IndTerm::app(
                                IndTerm::app(args[2].clone(), rec_x),
                                (**x).clone(),
                            );
                            Some(IndTerm::apps(stepd, args[3..].to_vec()))
                        }
                        _ => {
                            let mut rebuilt = vec![n];
                            rebuilt.extend(args[1..].iter().cloned());
                            cur = IndTerm::apps(head, rebuilt);
                            None
                        }
                    }
                }
                IndTerm::Const(c) => self.const_step(c, &args)?,
                IndTerm::Choice(id) if !args.is_empty() => {
                    let (arg, nat) = self.as_nat(&args[0])?;
                    match nat {
                        Some(n) => match self.resolver.bit(*id, n) {
                            ChoiceAnswer::Bit(b) => {
                                self.spend()?;
                                Some(IndTerm::apps(
                                    IndTerm::numeral(b as u64),
                                    args[1..].to_vec(),
                                ))
                            }
                            ChoiceAnswer::Inert => {
                                let mut rebuilt = vec![arg];
                                rebuilt.extend(args[1..].iter().cloned());
                                cur = IndTerm::apps(head, rebuilt);
                                None
                            }
                            ChoiceAnswer::Demand => return Err(NormError::Demand(*id, n)),
                        },
                        None => {
                            let mut rebuilt = vec![arg];
                            rebuilt.extend(args[1..].iter().cloned());
                            cur = IndTerm::apps(head, rebuilt);
                            None
                        }
                    }
                }
                _ => None,
            };
            match next {
                Some(t2) => cur = t2,
                None => return Ok(cur),
            }
        }
    }

    /// Attempts one unfolding of a constant applied to `args`. Returns the
    /// contractum (with surplus arguments reattached) or `None` when the
    /// redex is not yet ready.
    fn const_step(&mut self, name: &str, args: &[IndTerm]) -> Result<Option<IndTerm>, NormError> {
        let rest = |k: usize, t: IndTerm| -> IndTerm { IndTerm::apps(t, args[k..].to_vec()) };
        macro_rules! fire {
            ($k:expr, $t:expr) => {{
                self.spend()?;
                return Ok(Some(rest($k, $t)));
            }};
        }
        match name {
            "succ" if !args.is_empty() => {
                fire!(1, IndTerm::succ(args[0].clone()))
            }
            "pred" if !args.is_empty() => {
                let n = self.whnf(&args[0])?;
                match n {
                    IndTerm::Zero => fire!(1, IndTerm::Zero),
                    IndTerm::Succ(x) => fire!(1, (*x).clone()),
                    _ => Ok(None),
                }
            }
            "add" if args.len() >= 2 => {
                let a = self.whnf(&args[0])?;
                match a {
                    IndTerm::Zero => fire!(2, args[1].clone()),
                    IndTerm::Succ(x) => fire!(
                        2,
                        IndTerm::succ(IndTerm::apps(
                            IndTerm::cnst("add"),
                            [(*x).clone(), args[1].clone()],
                        ))
                    ),
                    _ => Ok(None),
                }
            }
            "sub" if args.len() >= 2 => {
                let (_, nb) = self.as_nat(&args[1])?;
                if nb == Some(0) {
                    fire!(2, args[0].clone());
                }
                let (_, na) = self.as_nat(&args[0])?;
                match (na, nb) {
                    (Some(x), Some(y)) => fire!(2, IndTerm::numeral(x.saturating_sub(y))),
                    _ => Ok(None),
                }
            }
            "min" | "max" if args.len() >= 2 => {
                let (_, na) = self.as_nat(&args[0])?;
                let (_, nb) = self.as_nat(&args[1])?;
                match (na, nb) {
                    (Some(x), Some(y)) => {
                        let v = if name == "min" { x.min(y) } else { x.max(y) };
                        fire!(2, IndTerm::numeral(v))
                    }
                    _ => Ok(None),
                }
            }
            "eqnat" if args.len() >= 2 => {
                let (_, na) = self.as_nat(&args[0])?;
                let (_, nb) = self.as_nat(&args[1])?;
                match (na, nb) {
                    (Some(x), Some(y)) => {
                        fire!(2, IndTerm::numeral(if x == y { 1 } else { 0 }))
                    }
                    _ => Ok(None),
                }
            }
            "len" if !args.is_empty() => {
                let (_, n) = self.as_nat(&args[0])?;
                match n {
                    Some(code) => fire!(1, IndTerm::numeral(code_len(code))),
                    None => Ok(None),
                }
            }
            "hd" if !args.is_empty() => {
                let (_, n) = self.as_nat(&args[0])?;
                match n {
                    Some(code) => {
                        let bits = decode_string(code);
                        let b = bits.first().copied().unwrap_or(0);
                        fire!(1, IndTerm::numeral(b as u64))
                    }
                    None => Ok(None),
                }
            }
            "tail" if !args.is_empty() => {
                let (_, n) = self.as_nat(&args[0])?;
                match n {
                    Some(code) => {
                        let bits = decode_string(code);
                        let t = if bits.is_empty() { &bits[..] } else { &bits[1..] };
                        fire!(1, IndTerm::numeral(encode_string(t)))
                    }
                    None => Ok(None),
                }
            }
            "at" if args.len() >= 2 => {
                let (_, np) = self.as_nat(&args[0])?;
                let (_, ni) = self.as_nat(&args[1])?;
                match (np, ni) {
                    (Some(code), Some(i)) => {
                        let bits = decode_string(code);
                        let b = bits.get(i as usize).copied().unwrap_or(0);
                        fire!(2, IndTerm::numeral(b as u64))
                    }
                    _ => Ok(None),
                }
            }
            "concat" if args.len() >= 2 => {
                let (qn, nq) = self.as_nat(&args[1])?;
                if nq == Some(0) {
                    fire!(2, args[0].clone());
                }
                let (_, np) = self.as_nat(&args[0])?;
                if np == Some(0) {
                    fire!(2, qn);
                }
                match (np, nq) {
                    (Some(p), Some(q)) => {
                        let mut out = p;
                        for b in decode_string(q) {
                            out = code_snoc(out, b);
                        }
                        fire!(2, IndTerm::numeral(out))
                    }
                    _ => Ok(None),
                }
            }
            "initseg" if args.len() >= 2 => {
                let (_, nn) = self.as_nat(&args[1])?;
                if nn == Some(0) {
                    fire!(2, IndTerm::Zero);
                }
                let (_, np) = self.as_nat(&args[0])?;
                if np == Some(0) {
                    fire!(2, IndTerm::Zero);
                }
                match (np, nn) {
                    (Some(p), Some(n)) => {
                        let bits = decode_string(p);
                        let cut = bits.len().min(n as usize);
                        fire!(2, IndTerm::numeral(encode_string(&bits[..cut])))
                    }
                    _ => Ok(None),
                }
            }
            "fitlen" if args.len() >= 2 => {
                let (_, nn) = self.as_nat(&args[1])?;
                if nn == Some(0) {
                    fire!(2, IndTerm::Zero);
                }
                let (_, np) = self.as_nat(&args[0])?;
                match (np, nn) {
                    (Some(p), Some(n)) => {
                        let mut bits = decode_string(p);
                        bits.truncate(n as usize);
                        while (bits.len() as u64) < n {
                            bits.push(0);
                        }
                        fire!(2, IndTerm::numeral(encode_string(&bits)))
                    }
                    _ => Ok(None),
                }
            }
            "ifelse" if args.len() >= 3 => {
                let c = self.whnf(&args[0])?;
                match c {
                    IndTerm::Zero => fire!(3, args[2].clone()),
                    IndTerm::Succ(_) => fire!(3, args[1].clone()),
                    _ => Ok(None),
                }
            }
            "segment" if args.len() >= 3 => {
                let l = self.whnf(&args[2])?;
                match l {
                    IndTerm::Zero => fire!(3, IndTerm::Zero),
                    IndTerm::Succ(x) => {
                        // segment(B, s, L+1) = segment(B, s, L) * <B (s+L)>
                        self.spend()?;
                        let seg_l = IndTerm::apps(
                            IndTerm::cnst("segment"),
                            [args[0].clone(), args[1].clone(), (*x).clone()],
                        );
                        let idx = IndTerm::apps(
                            IndTerm::cnst("add"),
                            [args[1].clone(), (*x).clone()],
                        );
                        let sample = IndTerm::succ(IndTerm::app(args[0].clone(), idx));
                        let t = IndTerm::apps(IndTerm::cnst("concat"), [seg_l, sample]);
                        Ok(Some(rest(3, t)))
                    }
                    _ => Ok(None),
                }
            }
            _ => Ok(None),
        }
    }

    fn normalize(&mut self, t: &IndTerm) -> Result<IndTerm, NormError> {
        let head = self.whnf(t)?;
        match &head {
            IndTerm::Succ(x) => Ok(IndTerm::succ(self.normalize(x)?)),
            IndTerm::App(_, _) => {
                let (h, args) = head.spine();
                let h = h.clone();
                let mut done = Vec::with_capacity(args.len());
                let mut changed = false;
                for a in args {
                    let na = self.normalize(a)?;
                    if &na != a {
                        changed = true;
                    }
                    done.push(na);
                }
                let rebuilt = IndTerm::apps(h, done);
                if changed {
                    // Normalized arguments can expose new redexes, for
                    // example a numeral finished deep inside an argument.
                    self.normalize(&rebuilt)
                } else {
                    Ok(rebuilt)
                }
            }
            _ => Ok(head),
        }
    }
}

/// Normalizes a term against a resolver with an explicit budget.
pub fn normalize_with(
    t: &IndTerm,
    resolver: &dyn ChoiceResolver,
    fuel: u64,
) -> Result<IndTerm, NormError> {
    Norm { resolver, fuel }.normalize(t)
}

/// Normalizes a term in a pure context (choice applications stay inert).
pub fn normalize_term(t: &IndTerm) -> Result<IndTerm, NormError> {
    normalize_with(t, &NoChoices, NORM_FUEL)
}

/// Convenience: numeral for a coded bit-string.
pub fn string_numeral(bits: &[u8]) -> IndTerm {
    IndTerm::numeral(encode_string(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::IndTerm as T;
    use crate::syntax::Sort;

    fn norm(t: &IndTerm) -> IndTerm {
        normalize_term(t).unwrap()
    }

    fn capp(name: &str, args: impl IntoIterator<Item = IndTerm>) -> IndTerm {
        T::apps(T::cnst(name), args)
    }

    #[test]
    fn recursor_rules() {
        // R 0 y z = y
        let y = T::numeral(7);
        let z = T::Pi(Sort::Base, Sort::Base);
        let t = T::apps(T::Rec(Sort::Base), [T::Zero, y.clone(), z.clone()]);
        assert_eq!(norm(&t), y);
        // R 2 y (pi) unfolds twice: pi r x = r.
        let t = T::apps(
            T::Rec(Sort::Base),
            [T::numeral(2), T::numeral(7), T::Pi(Sort::Base, Sort::Base)],
        );
        assert_eq!(norm(&t), T::numeral(7));
    }

    #[test]
    fn combinator_rules() {
        // Pi x y = x
        let t = T::apps(
            T::Pi(Sort::Base, Sort::Base),
            [T::Zero, T::numeral(1)],
        );
        assert_eq!(norm(&t), T::Zero);
    }

    #[test]
    fn ifelse_equations_hold_exactly() {
        let y = T::numeral(4);
        let n = T::numeral(9);
        assert_eq!(norm(&capp("ifelse", [T::Zero, y.clone(), n.clone()])), n);
        assert_eq!(
            norm(&capp("ifelse", [T::numeral(1), y.clone(), n.clone()])),
            y
        );
        // Condition x+1 with open x still picks the then branch.
        let open = T::succ(T::nvar("x"));
        assert_eq!(norm(&capp("ifelse", [open, y.clone(), n])), y);
    }

    #[test]
    fn string_ops() {
        let p = string_numeral(&[1, 0]);
        let q = string_numeral(&[1]);
        assert_eq!(norm(&capp("concat", [p.clone(), q])), string_numeral(&[1, 0, 1]));
        assert_eq!(norm(&capp("len", [p.clone()])), T::numeral(2));
        assert_eq!(norm(&capp("hd", [p.clone()])), T::numeral(1));
        assert_eq!(norm(&capp("tail", [p.clone()])), string_numeral(&[0]));
        assert_eq!(
            norm(&capp("initseg", [p.clone(), T::numeral(1)])),
            string_numeral(&[1])
        );
        // Default: truncating past the end returns the string itself.
        assert_eq!(norm(&capp("initseg", [p.clone(), T::numeral(9)])), p);
        // at defaults to 0 outside range.
        assert_eq!(norm(&capp("at", [p.clone(), T::numeral(5)])), T::Zero);
        assert_eq!(norm(&capp("at", [p.clone(), T::Zero])), T::numeral(1));
        // fitlen pads with zeros.
        assert_eq!(
            norm(&capp("fitlen", [q_empty(), T::numeral(2)])),
            string_numeral(&[0, 0])
        );
    }

    fn q_empty() -> IndTerm {
        T::Zero
    }

    #[test]
    fn concat_nil_rules_fire_symbolically() {
        let x = T::nvar("p");
        assert_eq!(norm(&capp("concat", [x.clone(), T::Zero])), x);
        assert_eq!(norm(&capp("concat", [T::Zero, x.clone()])), x);
        assert_eq!(norm(&capp("initseg", [x.clone(), T::Zero])), T::Zero);
    }

    #[test]
    fn segment_unfolds_symbolically() {
        // segment(b, 0, n+1) = concat(segment(b, 0, n), s (b n))
        let b = T::var("b", Sort::stream());
        let n = T::nvar("n");
        let t = capp("segment", [b.clone(), T::Zero, T::succ(n.clone())]);
        let got = norm(&t);
        let want = capp(
            "concat",
            [
                capp("segment", [b.clone(), T::Zero, n.clone()]),
                T::succ(T::app(b, n)),
            ],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn segment_on_concrete_stream() {
        // The constant-0 stream: (pi z) applied to anything is z.
        let zero_stream = T::app(T::Pi(Sort::Base, Sort::Base), T::Zero);
        let t = capp("segment", [zero_stream, T::Zero, T::numeral(3)]);
        assert_eq!(norm(&t), string_numeral(&[0, 0, 0]));
    }

    #[test]
    fn fuel_exhaustion_reported() {
        let t = T::apps(
            T::Rec(Sort::Base),
            [T::numeral(50), T::Zero, T::Pi(Sort::Base, Sort::Base)],
        );
        let r = normalize_with(&t, &NoChoices, 10);
        assert_eq!(r, Err(NormError::OutOfFuel));
    }
}
