//! Terms and formulas about Cantor space: finite-cover enumerations, the
//! membership and lexicographic-order formulas, the uniformly-barred
//! predicate, and the avoidance sequence driven by a characteristic
//! function of string codes.

use crate::arith::bracket::bracket_abstract;
use crate::arith::encode::encode_string;
use crate::arith::stdlib::string_numeral;
use crate::syntax::term::IndTerm;
use crate::syntax::{Formula, Sort};

fn capp(name: &str, args: impl IntoIterator<Item = IndTerm>) -> IndTerm {
    IndTerm::apps(IndTerm::cnst(name), args)
}

/// The prefix of a stream: `segment(a, 0, n)`.
pub fn stream_prefix(stream: IndTerm, n: IndTerm) -> IndTerm {
    capp("segment", [stream, IndTerm::Zero, n])
}

/// Enumeration term of a finite list of basic opens: applied to `m` it
/// yields open `min(m, count-1)`, so the enumeration is total.
pub fn pi_term(opens: &[Vec<u8>]) -> IndTerm {
    assert!(!opens.is_empty(), "a cover has at least one basic open");
    let m = IndTerm::nvar("m!");
    let mut body = string_numeral(opens.last().unwrap());
    for (i, open) in opens.iter().enumerate().rev().skip(1) {
        body = capp(
            "ifelse",
            [
                capp("eqnat", [m.clone(), IndTerm::numeral(i as u64)]),
                string_numeral(open),
                body,
            ],
        );
    }
    bracket_abstract("m!", &Sort::Base, &body).expect("closed ifelse chain abstracts")
}

/// Index search term: applied to a string code `p`, yields the first index
/// whose open is a prefix of `p`, and 0 when none matches. The search bound
/// is the length of the open list.
pub fn find_index_term(opens: &[Vec<u8>]) -> IndTerm {
    let p = IndTerm::nvar("p!");
    let mut body = IndTerm::Zero;
    for (i, open) in opens.iter().enumerate().rev() {
        let code = encode_string(open);
        let test = capp(
            "eqnat",
            [
                capp("initseg", [p.clone(), IndTerm::numeral(open.len() as u64)]),
                IndTerm::numeral(code),
            ],
        );
        body = capp("ifelse", [test, IndTerm::numeral(i as u64), body]);
    }
    bracket_abstract("p!", &Sort::Base, &body).expect("closed ifelse chain abstracts")
}

/// Membership of a stream in the open set enumerated by `pi`:
/// there are `l`, `m` with the length-`l` prefix equal to open `m`.
pub fn mem_a(pi: &IndTerm, stream: IndTerm) -> Formula {
    Formula::exists(
        "l",
        Sort::Base,
        Formula::exists(
            "m",
            Sort::Base,
            Formula::eq(
                stream_prefix(stream, IndTerm::nvar("l")),
                IndTerm::app(pi.clone(), IndTerm::nvar("m")),
            ),
        ),
    )
}

/// The lexicographic order on bit-streams: `beta < alpha` iff the streams
/// agree on a prefix after which beta turns 0 and alpha turns 1.
pub fn lt_stream(beta: IndTerm, alpha: IndTerm) -> Formula {
    let n = IndTerm::nvar("n");
    Formula::exists(
        "n",
        Sort::Base,
        Formula::and(
            Formula::eq(
                stream_prefix(beta.clone(), n.clone()),
                stream_prefix(alpha.clone(), n.clone()),
            ),
            Formula::and(
                Formula::eq(IndTerm::app(beta, n.clone()), IndTerm::Zero),
                Formula::eq(IndTerm::app(alpha, n), IndTerm::numeral(1)),
            ),
        ),
    )
}

/// The uniformly-barred predicate on string codes: `x` is barred when for
/// some depth `k` every length-`k` extension of `x` has a prefix among the
/// enumerated opens.
pub fn bar_pred(pi: &IndTerm, x: IndTerm) -> Formula {
    let q = IndTerm::nvar("q");
    Formula::exists(
        "k",
        Sort::Base,
        Formula::bforall_str(
            "q",
            IndTerm::nvar("k"),
            Formula::exists(
                "l",
                Sort::Base,
                Formula::exists(
                    "m",
                    Sort::Base,
                    Formula::eq(
                        capp(
                            "initseg",
                            [capp("concat", [x, q]), IndTerm::nvar("l")],
                        ),
                        IndTerm::app(pi.clone(), IndTerm::nvar("m")),
                    ),
                ),
            ),
        ),
    )
}

/// The one-step bit chosen by the avoidance strategy, as a term over the
/// accumulated prefix `z` and the characteristic function `chi`: take 0
/// when `chi(z*<0>) = 0`, otherwise 1 when `chi(z*<1>) = 0`, otherwise 0.
fn avoid_bit(chi: &IndTerm, prefix: IndTerm) -> IndTerm {
    let left = capp("concat", [prefix.clone(), IndTerm::numeral(1)]);
    let right = capp("concat", [prefix, IndTerm::numeral(2)]);
    capp(
        "ifelse",
        [
            IndTerm::app(chi.clone(), left),
            capp(
                "ifelse",
                [IndTerm::app(chi.clone(), right), IndTerm::Zero, IndTerm::numeral(1)],
            ),
            IndTerm::Zero,
        ],
    )
}

/// The recursion step of the avoidance sequence: a combinator term taking
/// the prefix built so far and the (ignored) step index, and appending the
/// avoidance bit.
fn avoid_step(chi: &IndTerm) -> IndTerm {
    let z = IndTerm::nvar("z!");
    let body = capp(
        "concat",
        [z.clone(), IndTerm::succ(avoid_bit(chi, z.clone()))],
    );
    let inner = bracket_abstract("n!", &Sort::Base, &body).expect("n! not free");
    bracket_abstract("z!", &Sort::Base, &inner).expect("abstractable step")
}

/// The length-`n` prefix of the avoidance sequence as a recursor term.
pub fn avoid_prefix(chi: &IndTerm, n: IndTerm) -> IndTerm {
    IndTerm::apps(
        IndTerm::Rec(Sort::Base),
        [n, IndTerm::Zero, avoid_step(chi)],
    )
}

/// The avoidance sequence itself, of sort `0 -> 0`: at `n` it builds the
/// length-`n+1` prefix by course-of-values recursion and extracts its last
/// bit.
pub fn avoid_seq(chi: &IndTerm) -> IndTerm {
    let n = IndTerm::nvar("n!");
    let body = capp(
        "at",
        [avoid_prefix(chi, IndTerm::succ(n.clone())), n.clone()],
    );
    bracket_abstract("n!", &Sort::Base, &body).expect("abstractable sequence")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::encode::strings_of_len;
    use crate::arith::stdlib::normalize_term;
    use crate::syntax::term::IndTerm as T;

    fn norm(t: &IndTerm) -> IndTerm {
        normalize_term(t).unwrap()
    }

    #[test]
    fn pi_enumerates_and_totalizes() {
        let opens = vec![vec![0, 0], vec![0, 1], vec![1]];
        let pi = pi_term(&opens);
        for (i, open) in opens.iter().enumerate() {
            let got = norm(&T::app(pi.clone(), T::numeral(i as u64)));
            assert_eq!(got, string_numeral(open));
        }
        // Past the end the last open repeats.
        let got = norm(&T::app(pi.clone(), T::numeral(17)));
        assert_eq!(got, string_numeral(&[1]));
    }

    #[test]
    fn find_index_matches_prefixes() {
        let opens = vec![vec![0, 0], vec![0, 1], vec![1]];
        let fidx = find_index_term(&opens);
        let at = |bits: &[u8]| {
            norm(&T::app(fidx.clone(), string_numeral(bits)))
                .as_numeral()
                .unwrap()
        };
        assert_eq!(at(&[0, 0]), 0);
        assert_eq!(at(&[0, 1]), 1);
        assert_eq!(at(&[1, 0]), 2);
        assert_eq!(at(&[1, 1]), 2);
        // No prefix among the opens: default 0.
        assert_eq!(at(&[0]), 0);
    }

    #[test]
    fn formulas_are_sigma() {
        let pi = pi_term(&[vec![0], vec![1]]);
        assert!(mem_a(&pi, T::var("a", Sort::stream())).is_sigma());
        assert!(bar_pred(&pi, T::Zero).is_sigma());
        // Membership of the empty-string cover holds trivially with l=m=0.
        let pi_e = pi_term(&[vec![]]);
        let inst = mem_a(&pi_e, T::app(T::Pi(Sort::Base, Sort::Base), T::Zero));
        if let Formula::Exists(_, _, b) = &inst {
            if let Formula::Exists(_, _, b2) = b.as_ref() {
                let eq = b2.subst("m", &T::Zero);
                let eq = eq.subst("l", &T::Zero);
                if let Formula::Eq(l, r) = eq {
                    assert_eq!(norm(&l), norm(&r));
                } else {
                    panic!("expected an equation");
                }
            }
        }
    }

    /// Reference semantics for the avoidance sequence, straight from the
    /// three-way case split.
    pub(crate) fn avoid_ref(chi: &dyn Fn(&[u8]) -> u8, n: u64) -> u8 {
        let mut prefix: Vec<u8> = Vec::new();
        let mut bit = 0;
        for _ in 0..=n {
            let mut left = prefix.clone();
            left.push(0);
            let mut right = prefix.clone();
            right.push(1);
            bit = if chi(&left) == 0 {
                0
            } else if chi(&right) == 0 {
                1
            } else {
                0
            };
            prefix.push(bit);
        }
        bit
    }

    fn chi_term_from(f: &dyn Fn(&[u8]) -> u8, depth: u32) -> IndTerm {
        // Encode a finite characteristic function as an ifelse chain over
        // all strings up to the given depth; longer strings map to 0.
        let x = T::nvar("x!");
        let mut body = T::Zero;
        for len in 0..=depth {
            for s in strings_of_len(len) {
                if f(&s) == 1 {
                    body = capp(
                        "ifelse",
                        [
                            capp("eqnat", [x.clone(), T::numeral(encode_string(&s))]),
                            T::numeral(1),
                            body,
                        ],
                    );
                }
            }
        }
        bracket_abstract("x!", &Sort::Base, &body).unwrap()
    }

    #[test]
    fn avoidance_sequence_matches_reference() {
        let const_chi = |b: u64| T::app(T::Pi(Sort::Base, Sort::Base), T::numeral(b));
        let mut cases: Vec<(&str, IndTerm, Box<dyn Fn(&[u8]) -> u8>)> = vec![
            ("nothing flagged", const_chi(0), Box::new(|_: &[u8]| 0)),
            ("everything flagged", const_chi(1), Box::new(|_: &[u8]| 1)),
        ];
        let just_zero: Box<dyn Fn(&[u8]) -> u8> = Box::new(|s: &[u8]| u8::from(s == [0]));
        let zeros_only: Box<dyn Fn(&[u8]) -> u8> =
            Box::new(|s: &[u8]| u8::from(s.iter().all(|&b| b == 0)));
        cases.push(("just <0>", chi_term_from(&*just_zero, 9), just_zero));
        cases.push(("zeros only", chi_term_from(&*zeros_only, 9), zeros_only));
        for (name, chi_t, chi) in &cases {
            let seq = avoid_seq(chi_t);
            for n in 0..=8u64 {
                let got = norm(&T::app(seq.clone(), T::numeral(n)));
                let want = T::numeral(avoid_ref(chi, n) as u64);
                assert_eq!(got, want, "case {name}, n={n}");
            }
        }
    }
}
