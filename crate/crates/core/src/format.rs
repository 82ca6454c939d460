//! The on-disk text format.
//!
//! UTF-8, line-oriented, `#` starts a comment, one directive per line,
//! directives in any order:
//!
//! ```text
//! fsa <n_states> <bool|tropical>
//! alphabet a b c
//! init <state> [weight]          # weight required iff the semiring is not bool
//! final <state> [weight]
//! trans <src> <label|EPS> [weight] <dst>
//! ```
//!
//! Tropical weights are written as decimals (`1.5`) or `p/q` rationals;
//! `inf` is illegal — a zero weight means the line is omitted. Boolean files
//! carry no weights and parse to unweighted automata. `EPS` is only legal in
//! Boolean files: weighted transitions are label-carrying by definition.
//!
//! The serializer emits canonical order (alphabet lexicographic, transitions
//! by `(src, label, dst)` with ε first), so `parse ∘ serialize` is the
//! identity and serialized forms are byte-comparable.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::automaton::{Automaton, AutomatonError, Transition, WeightedAutomaton, WeightedTransition};
use crate::semifield::Tropical;

/// A parsed automaton file: unweighted (`bool`) or tropical-weighted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fsa {
    Unweighted(Automaton),
    Tropical(WeightedAutomaton<Tropical>),
}

impl Fsa {
    pub fn n_states(&self) -> usize {
        match self {
            Fsa::Unweighted(a) => a.n_states(),
            Fsa::Tropical(w) => w.n_states(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed directive: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: unknown state {state} ({n} states declared)")]
    UnknownState { line: usize, state: usize, n: usize },
    #[error("line {line}: unknown symbol {token:?}")]
    UnknownSymbol { line: usize, token: String },
    #[error("line {line}: bad weight {token:?}: {msg}")]
    BadWeight { line: usize, token: String, msg: String },
    #[error("line {line}: epsilon transitions are not allowed in weighted automata")]
    WeightedEpsilon { line: usize },
    #[error("missing `fsa <n_states> <bool|tropical>` header")]
    MissingHeader,
    #[error("missing `alphabet` directive")]
    MissingAlphabet,
    #[error("line {line}: duplicate `{directive}` directive")]
    DuplicateDirective { line: usize, directive: &'static str },
    #[error("invalid automaton: {0}")]
    Invalid(#[from] AutomatonError),
}

/// Parse an exact tropical weight: integer, decimal, or `p/q`.
fn parse_tropical_weight(line: usize, token: &str) -> Result<Tropical, ParseError> {
    let bad = |msg: &str| ParseError::BadWeight {
        line,
        token: token.to_string(),
        msg: msg.to_string(),
    };
    if token.eq_ignore_ascii_case("inf") {
        return Err(bad("inf is illegal; omit the line instead of writing a zero weight"));
    }
    if let Some((p, q)) = token.split_once('/') {
        let num: BigInt = p.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = q.parse().map_err(|_| bad("bad denominator"))?;
        if den == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        return Ok(Tropical::Finite(BigRational::new(num, den)));
    }
    if let Some((int_part, frac_part)) = token.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let negative = int_part.starts_with('-');
        let int: BigInt = if int_part == "-" {
            BigInt::from(0)
        } else {
            int_part.parse().map_err(|_| bad("bad decimal"))?
        };
        let frac: BigInt = frac_part.parse().map_err(|_| bad("bad decimal"))?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let signed_frac = if negative { -frac } else { frac };
        return Ok(Tropical::Finite(BigRational::new(int * &scale + signed_frac, scale)));
    }
    let int: BigInt = token.parse().map_err(|_| bad("not an integer, decimal, or p/q"))?;
    Ok(Tropical::Finite(BigRational::from_integer(int)))
}

fn format_tropical_weight(w: &Tropical) -> String {
    match w {
        Tropical::Infinity => unreachable!("zero weights are never stored"),
        Tropical::Finite(r) => {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Semiring {
    Bool,
    Tropical,
}

/// Parse the text format. The state count, semiring, and alphabet may appear
/// anywhere in the file; everything is resolved in a second pass so errors
/// can cite their line.
pub fn parse_automaton(text: &str) -> Result<Fsa, ParseError> {
    struct RawLine<'a> {
        line: usize,
        fields: Vec<&'a str>,
    }

    let mut header: Option<(usize, Semiring)> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut items: Vec<RawLine> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "fsa" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateDirective { line, directive: "fsa" });
                }
                if fields.len() != 3 {
                    return Err(ParseError::Malformed {
                        line,
                        msg: "expected `fsa <n_states> <bool|tropical>`".into(),
                    });
                }
                let n: usize = fields[1].parse().map_err(|_| ParseError::Malformed {
                    line,
                    msg: format!("bad state count {:?}", fields[1]),
                })?;
                let semiring = match fields[2] {
                    "bool" => Semiring::Bool,
                    "tropical" => Semiring::Tropical,
                    other => {
                        return Err(ParseError::Malformed {
                            line,
                            msg: format!("unknown semiring {other:?}"),
                        })
                    }
                };
                header = Some((n, semiring));
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(ParseError::DuplicateDirective { line, directive: "alphabet" });
                }
                alphabet = Some(fields[1..].iter().map(|s| s.to_string()).collect());
            }
            "init" | "final" | "trans" => items.push(RawLine { line, fields }),
            other => {
                return Err(ParseError::Malformed {
                    line,
                    msg: format!("unknown directive {other:?}"),
                })
            }
        }
    }

    let (n, semiring) = header.ok_or(ParseError::MissingHeader)?;
    let alphabet = alphabet.ok_or(ParseError::MissingAlphabet)?;

    let parse_state = |line: usize, token: &str| -> Result<usize, ParseError> {
        let q: usize = token.parse().map_err(|_| ParseError::Malformed {
            line,
            msg: format!("bad state {token:?}"),
        })?;
        if q >= n {
            return Err(ParseError::UnknownState { line, state: q, n });
        }
        Ok(q)
    };
    // Resolve a label against the *sorted* alphabet, since construction
    // canonicalizes symbol ids by lexicographic order.
    let mut sorted = alphabet.clone();
    sorted.sort();
    let symbol_id = |line: usize, token: &str| -> Result<usize, ParseError> {
        sorted
            .binary_search_by(|t| t.as_str().cmp(token))
            .map_err(|_| ParseError::UnknownSymbol { line, token: token.to_string() })
    };

    match semiring {
        Semiring::Bool => {
            let mut initial = Vec::new();
            let mut finals = Vec::new();
            let mut transitions = Vec::new();
            for item in items {
                let (line, f) = (item.line, &item.fields);
                match f[0] {
                    "init" | "final" => {
                        if f.len() != 2 {
                            return Err(ParseError::Malformed {
                                line,
                                msg: format!("expected `{} <state>` (no weight in a bool file)", f[0]),
                            });
                        }
                        let q = parse_state(line, f[1])?;
                        if f[0] == "init" {
                            initial.push(q);
                        } else {
                            finals.push(q);
                        }
                    }
                    "trans" => {
                        if f.len() != 4 {
                            return Err(ParseError::Malformed {
                                line,
                                msg: "expected `trans <src> <label|EPS> <dst>`".into(),
                            });
                        }
                        let src = parse_state(line, f[1])?;
                        let dst = parse_state(line, f[3])?;
                        let label = if f[2] == "EPS" { None } else { Some(symbol_id(line, f[2])?) };
                        transitions.push(Transition { src, label, dst });
                    }
                    _ => unreachable!(),
                }
            }
            Ok(Fsa::Unweighted(Automaton::new(sorted, n, initial, finals, transitions)?))
        }
        Semiring::Tropical => {
            let mut lambda = Vec::new();
            let mut rho = Vec::new();
            let mut transitions = Vec::new();
            for item in items {
                let (line, f) = (item.line, &item.fields);
                match f[0] {
                    "init" | "final" => {
                        if f.len() != 3 {
                            return Err(ParseError::Malformed {
                                line,
                                msg: format!("expected `{} <state> <weight>`", f[0]),
                            });
                        }
                        let q = parse_state(line, f[1])?;
                        let w = parse_tropical_weight(line, f[2])?;
                        if f[0] == "init" {
                            lambda.push((q, w));
                        } else {
                            rho.push((q, w));
                        }
                    }
                    "trans" => {
                        if f.len() != 5 {
                            return Err(ParseError::Malformed {
                                line,
                                msg: "expected `trans <src> <label> <weight> <dst>`".into(),
                            });
                        }
                        if f[2] == "EPS" {
                            return Err(ParseError::WeightedEpsilon { line });
                        }
                        let src = parse_state(line, f[1])?;
                        let symbol = symbol_id(line, f[2])?;
                        let weight = parse_tropical_weight(line, f[3])?;
                        let dst = parse_state(line, f[4])?;
                        transitions.push(WeightedTransition { src, symbol, weight, dst });
                    }
                    _ => unreachable!(),
                }
            }
            Ok(Fsa::Tropical(WeightedAutomaton::new(sorted, n, lambda, rho, transitions)?))
        }
    }
}

/// Canonical text form; see the module docs for the ordering rules.
pub fn serialize_automaton(fsa: &Fsa) -> String {
    match fsa {
        Fsa::Unweighted(a) => serialize_unweighted(a),
        Fsa::Tropical(w) => serialize_tropical(w),
    }
}

pub fn serialize_unweighted(a: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fsa {} bool", a.n_states());
    let _ = writeln!(out, "alphabet {}", a.alphabet().join(" "));
    for &q in a.initial() {
        let _ = writeln!(out, "init {q}");
    }
    for &q in a.finals() {
        let _ = writeln!(out, "final {q}");
    }
    for t in a.transitions() {
        let label = match t.label {
            None => "EPS",
            Some(s) => &a.alphabet()[s],
        };
        let _ = writeln!(out, "trans {} {} {}", t.src, label, t.dst);
    }
    out
}

pub fn serialize_tropical(w: &WeightedAutomaton<Tropical>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fsa {} tropical", w.n_states());
    let _ = writeln!(out, "alphabet {}", w.alphabet().join(" "));
    for (q, weight) in w.lambda() {
        let _ = writeln!(out, "init {q} {}", format_tropical_weight(weight));
    }
    for (q, weight) in w.rho() {
        let _ = writeln!(out, "final {q} {}", format_tropical_weight(weight));
    }
    for t in w.transitions() {
        let _ = writeln!(
            out,
            "trans {} {} {} {}",
            t.src,
            w.alphabet()[t.symbol],
            format_tropical_weight(&t.weight),
            t.dst
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_bool_file() {
        let fsa = parse_automaton("fsa 2 bool\nalphabet a\ninit 0\nfinal 1\ntrans 0 a 1\n").unwrap();
        let Fsa::Unweighted(a) = &fsa else { panic!("expected unweighted") };
        assert_eq!(a.n_states(), 2);
        assert_eq!(a.transitions().len(), 1);
        // Byte-exact round trip.
        assert_eq!(
            serialize_automaton(&fsa),
            "fsa 2 bool\nalphabet a\ninit 0\nfinal 1\ntrans 0 a 1\n"
        );
    }

    #[test]
    fn directives_are_order_insensitive() {
        let canonical = parse_automaton("fsa 2 bool\nalphabet a b\ninit 0\nfinal 1\ntrans 0 a 1\n").unwrap();
        let shuffled = parse_automaton(
            "trans 0 a 1\nfinal 1   # a comment\n\nalphabet b a\ninit 0\nfsa 2 bool\n",
        )
        .unwrap();
        assert_eq!(canonical, shuffled);
    }

    #[test]
    fn unknown_state_is_reported_with_line() {
        let err = parse_automaton("fsa 3 bool\nalphabet a\ninit 0\ntrans 0 a 5\n").unwrap_err();
        assert_eq!(err, ParseError::UnknownState { line: 4, state: 5, n: 3 });
    }

    #[test]
    fn weighted_file_round_trips() {
        let text = "fsa 2 tropical\nalphabet a\ninit 0 0\nfinal 1 1/2\ntrans 0 a 3/2 1\n";
        let fsa = parse_automaton(text).unwrap();
        let Fsa::Tropical(w) = &fsa else { panic!("expected tropical") };
        assert_eq!(w.transitions()[0].weight, Tropical::ratio(3, 2));
        assert_eq!(serialize_automaton(&fsa), text);
    }

    #[test]
    fn decimal_weights_parse_as_exact_rationals() {
        let fsa = parse_automaton("fsa 2 tropical\nalphabet a\ninit 0 0\nfinal 1 0\ntrans 0 a 1.5 1\n")
            .unwrap();
        let Fsa::Tropical(w) = &fsa else { panic!() };
        assert_eq!(w.transitions()[0].weight, Tropical::ratio(3, 2));
        // The canonical form re-serializes the weight as a rational.
        assert!(serialize_automaton(&fsa).contains("trans 0 a 3/2 1"));
        // Negative decimals keep their sign in the fractional part.
        let neg = parse_tropical_weight(1, "-0.5").unwrap();
        assert_eq!(neg, Tropical::ratio(-1, 2));
    }

    #[test]
    fn inf_weight_is_rejected() {
        let err = parse_automaton("fsa 2 tropical\nalphabet a\ninit 0 inf\nfinal 1 0\n").unwrap_err();
        assert!(matches!(err, ParseError::BadWeight { line: 3, .. }));
    }

    #[test]
    fn epsilon_in_weighted_file_is_rejected() {
        let err = parse_automaton("fsa 2 tropical\nalphabet a\ninit 0 0\nfinal 1 0\ntrans 0 EPS 1 1\n")
            .unwrap_err();
        assert_eq!(err, ParseError::WeightedEpsilon { line: 5 });
    }

    #[test]
    fn duplicate_weighted_triple_is_rejected() {
        let err = parse_automaton(
            "fsa 2 tropical\nalphabet a\ninit 0 0\nfinal 1 0\ntrans 0 a 1 1\ntrans 0 a 2 1\n",
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Invalid(_)));
    }

    #[test]
    fn epsilon_serializes_as_eps_token() {
        let text = "fsa 2 bool\nalphabet a\ninit 0\nfinal 1\ntrans 0 EPS 1\n";
        let fsa = parse_automaton(text).unwrap();
        assert_eq!(serialize_automaton(&fsa), text);
    }
}
