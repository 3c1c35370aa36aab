//! The arithmetic axiom signature and the trusted lemma table.
//!
//! Fixed axioms carry their closed formulas. `ia`, `ac` and `term-cong`
//! are schemas: an instance is supplied by annotation and validated
//! structurally by the checker. Trusted lemmas are universally closed
//! equations admitted as constants; each is tested numerically over a
//! deterministic panel of arguments when an environment is built.

use std::collections::BTreeMap;

use crate::arith::bracket::term_sort;
use crate::arith::cantor::{avoid_prefix, avoid_seq, stream_prefix};
use crate::arith::stdlib::{normalize_term, NormError};
use crate::syntax::term::IndTerm;
use crate::syntax::{Formula, Sort};

/// How the evaluator treats a constant of the signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuntimeTag {
    /// Collects its arguments inertly; only ever feeds equality rewriting.
    Inert,
    /// Applied to a bit numeral, produces the matching injection.
    BoolTotal,
    /// Induction: iterates its step proof along a numeral.
    Induction,
    /// Unique countable choice: produces a memoized choice function.
    Choice,
}

/// A fixed axiom or an axiom schema of the signature.
#[derive(Debug, Clone)]
pub enum AxiomEntry {
    Fixed(Formula, RuntimeTag),
    Schema(RuntimeTag),
}

fn nv(n: &str) -> IndTerm {
    IndTerm::nvar(n)
}

fn capp(name: &str, args: impl IntoIterator<Item = IndTerm>) -> IndTerm {
    IndTerm::apps(IndTerm::cnst(name), args)
}

fn all(x: &str, f: Formula) -> Formula {
    Formula::forall(x, Sort::Base, f)
}

fn all_stream(x: &str, f: Formula) -> Formula {
    Formula::forall(x, Sort::stream(), f)
}

fn eq(l: IndTerm, r: IndTerm) -> Formula {
    Formula::eq(l, r)
}

/// Looks up an axiom of the signature.
pub fn axiom(name: &str) -> Option<AxiomEntry> {
    let f = match name {
        "eq-refl" => all("x", eq(nv("x"), nv("x"))),
        "eq-sym" => all(
            "x",
            all("y", Formula::imp(eq(nv("x"), nv("y")), eq(nv("y"), nv("x")))),
        ),
        "eq-trans" => all(
            "x",
            all(
                "y",
                all(
                    "w",
                    Formula::imp(
                        eq(nv("x"), nv("y")),
                        Formula::imp(eq(nv("y"), nv("w")), eq(nv("x"), nv("w"))),
                    ),
                ),
            ),
        ),
        "succ-cong" => all(
            "x",
            all(
                "y",
                Formula::imp(
                    eq(nv("x"), nv("y")),
                    eq(IndTerm::succ(nv("x")), IndTerm::succ(nv("y"))),
                ),
            ),
        ),
        "peano-inj" => all(
            "x",
            all(
                "y",
                Formula::imp(
                    eq(IndTerm::succ(nv("x")), IndTerm::succ(nv("y"))),
                    eq(nv("x"), nv("y")),
                ),
            ),
        ),
        "peano-zero" => all(
            "x",
            Formula::imp(
                eq(IndTerm::succ(nv("x")), IndTerm::Zero),
                eq(IndTerm::numeral(1), IndTerm::Zero),
            ),
        ),
        "bool-total" => all(
            "x",
            Formula::or(eq(nv("x"), IndTerm::Zero), eq(nv("x"), IndTerm::numeral(1))),
        ),
        "ia" => return Some(AxiomEntry::Schema(RuntimeTag::Induction)),
        "ac" => return Some(AxiomEntry::Schema(RuntimeTag::Choice)),
        "term-cong" => return Some(AxiomEntry::Schema(RuntimeTag::Inert)),
        _ => return None,
    };
    let tag = if name == "bool-total" {
        RuntimeTag::BoolTotal
    } else {
        RuntimeTag::Inert
    };
    Some(AxiomEntry::Fixed(f, tag))
}

pub const FIXED_AXIOM_NAMES: &[&str] = &[
    "eq-refl",
    "eq-sym",
    "eq-trans",
    "succ-cong",
    "peano-inj",
    "peano-zero",
    "bool-total",
];

pub const SCHEMA_NAMES: &[&str] = &["ia", "ac", "term-cong"];

/// The built-in trusted lemmas: universally closed equations about the
/// standard library and the avoidance sequence.
pub fn standard_lemmas() -> Vec<(String, Formula)> {
    let p = || nv("p");
    let q = || nv("q");
    let k = || nv("k");
    let j = || nv("j");
    let a = || IndTerm::var("a", Sort::stream());
    let c = || IndTerm::var("c", Sort::stream());
    let n = || nv("n");
    let mut out: Vec<(String, Formula)> = Vec::new();
    let mut push = |name: &str, f: Formula| out.push((name.to_string(), f));

    // Truncation composes by taking the minimum length.
    push(
        "init-init",
        all(
            "p",
            all(
                "k",
                all(
                    "j",
                    eq(
                        capp("initseg", [capp("initseg", [p(), k()]), j()]),
                        capp("initseg", [p(), capp("min", [k(), j()])]),
                    ),
                ),
            ),
        ),
    );
    // Truncating a stream prefix is a shorter stream prefix.
    push(
        "prefix-init",
        all_stream(
            "a",
            all(
                "k",
                all(
                    "j",
                    eq(
                        capp("initseg", [stream_prefix(a(), k()), j()]),
                        stream_prefix(a(), capp("min", [k(), j()])),
                    ),
                ),
            ),
        ),
    );
    push(
        "len-prefix",
        all_stream(
            "a",
            all("n", eq(capp("len", [stream_prefix(a(), n())]), n())),
        ),
    );
    push(
        "fit-self",
        all("p", eq(capp("fitlen", [p(), capp("len", [p()])]), p())),
    );
    push(
        "fit-prefix",
        all_stream(
            "a",
            all(
                "k",
                eq(
                    capp("fitlen", [stream_prefix(a(), k()), k()]),
                    stream_prefix(a(), k()),
                ),
            ),
        ),
    );
    push(
        "fit-init",
        all(
            "p",
            all(
                "k",
                eq(
                    capp("fitlen", [capp("initseg", [p(), k()]), k()]),
                    capp("fitlen", [p(), k()]),
                ),
            ),
        ),
    );
    push(
        "len-init",
        all(
            "p",
            all(
                "k",
                eq(
                    capp("len", [capp("initseg", [p(), k()])]),
                    capp("min", [capp("len", [p()]), k()]),
                ),
            ),
        ),
    );
    push(
        "init-len",
        all("p", eq(capp("initseg", [p(), capp("len", [p()])]), p())),
    );
    push(
        "min-absorb-r",
        all(
            "k",
            all(
                "j",
                eq(capp("min", [capp("max", [k(), j()]), j()]), j()),
            ),
        ),
    );
    push(
        "min-absorb-l",
        all(
            "k",
            all(
                "j",
                eq(capp("min", [capp("max", [k(), j()]), k()]), k()),
            ),
        ),
    );
    push(
        "len-tail",
        all(
            "p",
            eq(
                capp("len", [capp("tail", [p()])]),
                capp("pred", [capp("len", [p()])]),
            ),
        ),
    );
    // Decomposing a string as head bit plus tail, stated without a length
    // side condition by fitting the string to length 1 + len(tail).
    push(
        "cons-fit",
        all(
            "p",
            all(
                "q",
                eq(
                    capp(
                        "concat",
                        [
                            p(),
                            capp(
                                "fitlen",
                                [
                                    q(),
                                    IndTerm::succ(capp("len", [capp("tail", [q()])])),
                                ],
                            ),
                        ],
                    ),
                    capp(
                        "concat",
                        [
                            capp("concat", [p(), IndTerm::succ(capp("hd", [q()]))]),
                            capp("tail", [q()]),
                        ],
                    ),
                ),
            ),
        ),
    );
    // Concatenation reassociates.
    push(
        "cat-assoc",
        all(
            "p",
            all(
                "q",
                all(
                    "j",
                    eq(
                        capp("concat", [capp("concat", [p(), q()]), j()]),
                        capp("concat", [p(), capp("concat", [q(), j()])]),
                    ),
                ),
            ),
        ),
    );
    // The stream prefix of the avoidance sequence is its recursor prefix.
    push(
        "avoid-prefix",
        all_stream(
            "c",
            all(
                "n",
                eq(stream_prefix(avoid_seq(&c()), n()), avoid_prefix(&c(), n())),
            ),
        ),
    );
    push(
        "avoid-prefix-len",
        all_stream(
            "c",
            all("n", eq(capp("len", [avoid_prefix(&c(), n())]), n())),
        ),
    );
    // The last bit of a one-step-longer avoidance prefix is the case split
    // on the characteristic function at the two one-bit extensions.
    let bit = |c: IndTerm, pref: IndTerm| {
        capp(
            "ifelse",
            [
                IndTerm::app(c.clone(), capp("concat", [pref.clone(), IndTerm::numeral(1)])),
                capp(
                    "ifelse",
                    [
                        IndTerm::app(c, capp("concat", [pref, IndTerm::numeral(2)])),
                        IndTerm::Zero,
                        IndTerm::numeral(1),
                    ],
                ),
                IndTerm::Zero,
            ],
        )
    };
    push(
        "avoid-last",
        all_stream(
            "c",
            all(
                "n",
                eq(
                    capp("at", [avoid_prefix(&c(), IndTerm::succ(n())), n()]),
                    bit(c(), avoid_prefix(&c(), n())),
                ),
            ),
        ),
    );
    out
}

/// Deterministic panel of stream terms used to test lemmas with
/// function-sorted quantifiers: constants plus bit patterns read off
/// fixed string codes (0 beyond the pattern).
pub fn stream_panel() -> Vec<IndTerm> {
    let mut out = vec![
        IndTerm::app(IndTerm::Pi(Sort::Base, Sort::Base), IndTerm::Zero),
        IndTerm::app(IndTerm::Pi(Sort::Base, Sort::Base), IndTerm::numeral(1)),
    ];
    // 8-bit patterns from a fixed linear congruential walk. Longer
    // patterns would code to impractically deep unary numerals.
    let mut x = 0x2545f491u64;
    for _ in 0..6 {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let bits: Vec<u8> = (0..8).map(|i| ((x >> i) & 1) as u8).collect();
        out.push(IndTerm::app(
            IndTerm::cnst("at"),
            IndTerm::numeral(crate::arith::encode::encode_string(&bits)),
        ));
    }
    // Alternating patterns.
    for pat in [[0u8, 1, 0, 1, 0, 1, 0, 1], [1u8, 0, 1, 0, 1, 0, 1, 0]] {
        out.push(IndTerm::app(
            IndTerm::cnst("at"),
            IndTerm::numeral(crate::arith::encode::encode_string(&pat)),
        ));
    }
    out
}

/// Validates a trusted lemma: it must be a universally closed equation,
/// and it is tested exhaustively over small numerals (and the stream panel
/// for function-sorted variables).
pub fn validate_lemma(name: &str, f: &Formula) -> Result<(), String> {
    let mut vars: Vec<(String, Sort)> = Vec::new();
    let mut body = f;
    while let Formula::Forall(x, s, b) = body {
        vars.push((x.clone(), s.clone()));
        body = b;
    }
    let Formula::Eq(lhs, rhs) = body else {
        return Err(format!(
            "lemma `{}` is not a universally closed equation",
            name
        ));
    };
    if !f.is_closed() {
        return Err(format!("lemma `{}` has free variables", name));
    }
    for (x, s) in &vars {
        if !s.is_base() && *s != Sort::stream() {
            return Err(format!(
                "lemma `{}` quantifies `{}` at unsupported sort {}",
                name, x, s
            ));
        }
    }
    let base_count = vars.iter().filter(|(_, s)| s.is_base()).count();
    let max_nat: u64 = match base_count {
        0 | 1 | 2 => 24,
        3 => 8,
        _ => 4,
    };
    let panel = stream_panel();

    // Odometer over all assignments.
    let dims: Vec<usize> = vars
        .iter()
        .map(|(_, s)| {
            if s.is_base() {
                (max_nat + 1) as usize
            } else {
                panel.len()
            }
        })
        .collect();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let mut l = lhs.clone();
        let mut r = rhs.clone();
        for (i, (x, s)) in vars.iter().enumerate() {
            let t = if s.is_base() {
                IndTerm::numeral(idx[i] as u64)
            } else {
                panel[idx[i]].clone()
            };
            l = l.subst(x, &t);
            r = r.subst(x, &t);
        }
        let nl = normalize_term(&l).map_err(|e: NormError| format!("lemma `{name}`: {e}"))?;
        let nr = normalize_term(&r).map_err(|e: NormError| format!("lemma `{name}`: {e}"))?;
        if nl != nr {
            return Err(format!(
                "lemma `{}` fails at {}: {} != {}",
                name,
                vars.iter()
                    .enumerate()
                    .map(|(i, (x, _))| format!("{}={}", x, idx[i]))
                    .collect::<Vec<_>>()
                    .join(", "),
                nl,
                nr
            ));
        }
        // Advance the odometer.
        let mut carry = true;
        for i in 0..idx.len() {
            if !carry {
                break;
            }
            idx[i] += 1;
            if idx[i] == dims[i] {
                idx[i] = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    // Sides must be base-sorted terms under the quantified sorts.
    let mut probe_l = lhs.clone();
    let mut probe_r = rhs.clone();
    for (x, s) in &vars {
        let t = if s.is_base() {
            IndTerm::Zero
        } else {
            IndTerm::app(IndTerm::Pi(Sort::Base, Sort::Base), IndTerm::Zero)
        };
        probe_l = probe_l.subst(x, &t);
        probe_r = probe_r.subst(x, &t);
    }
    for side in [&probe_l, &probe_r] {
        match term_sort(side) {
            Ok(s) if s.is_base() => {}
            Ok(s) => return Err(format!("lemma `{}` equates terms of sort {}", name, s)),
            Err(e) => return Err(format!("lemma `{}`: {}", name, e)),
        }
    }
    Ok(())
}

/// Builds and validates a lemma table from the standard lemmas plus extras.
/// The standard lemmas are validated once per process.
pub fn lemma_table(
    extra: impl IntoIterator<Item = (String, Formula)>,
) -> Result<BTreeMap<String, Formula>, String> {
    static STANDARD: std::sync::OnceLock<Result<BTreeMap<String, Formula>, String>> =
        std::sync::OnceLock::new();
    let standard = STANDARD.get_or_init(|| {
        let mut table = BTreeMap::new();
        for (name, f) in standard_lemmas() {
            validate_lemma(&name, &f)?;
            table.insert(name, f);
        }
        Ok(table)
    });
    let mut table = standard.clone()?;
    for (name, f) in extra {
        validate_lemma(&name, &f)?;
        if table.insert(name.clone(), f).is_some() {
            return Err(format!("duplicate lemma `{}`", name));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_axioms_are_closed_and_well_formed() {
        for name in FIXED_AXIOM_NAMES {
            match axiom(name) {
                Some(AxiomEntry::Fixed(f, _)) => assert!(f.is_closed(), "{name} not closed"),
                _ => panic!("{name} should be a fixed axiom"),
            }
        }
        for name in SCHEMA_NAMES {
            assert!(matches!(axiom(name), Some(AxiomEntry::Schema(_))));
        }
        assert!(axiom("nonsense").is_none());
    }

    #[test]
    fn rejects_a_false_lemma() {
        // min(k, j) = k is false at k=1, j=0.
        let f = Formula::forall(
            "k",
            Sort::Base,
            Formula::forall(
                "j",
                Sort::Base,
                Formula::eq(capp("min", [nv("k"), nv("j")]), nv("k")),
            ),
        );
        assert!(validate_lemma("bad", &f).is_err());
    }

    #[test]
    fn rejects_non_equation() {
        let f = Formula::forall(
            "k",
            Sort::Base,
            Formula::imp(
                Formula::eq(nv("k"), nv("k")),
                Formula::eq(nv("k"), nv("k")),
            ),
        );
        assert!(validate_lemma("bad", &f).is_err());
    }
}
