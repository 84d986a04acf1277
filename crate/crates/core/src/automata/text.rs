//! Line-oriented text format for automata.
//!
//! ```text
//! dfa k=ab n=2
//! initial: 0
//! final: 1
//! 0 a 1
//! 0 b 0
//! 1 a 1
//! 1 b 0
//! ```
//!
//! Transition lines are written ordered by source, symbol position and
//! target, so `write(parse(write(m))) == write(m)` byte for byte. Blank lines
//! and lines starting with `#` are skipped when reading.

use std::fmt::Write as _;

use super::{complete, AutomatonError, Dfa, Nfa, PartialDfa};
use crate::alphabet::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    Nfa(Nfa),
    Dfa(Dfa),
}

impl Machine {
    pub fn to_nfa(&self) -> Nfa {
        match self {
            Machine::Nfa(n) => n.clone(),
            Machine::Dfa(d) => d.to_nfa(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Machine::Nfa(n) => n.alphabet(),
            Machine::Dfa(d) => d.alphabet(),
        }
    }
}

fn write_common(
    out: &mut String,
    kind: &str,
    alphabet: &Alphabet,
    n: usize,
    initials: &[usize],
    finals: &[usize],
) {
    let list = |v: &[usize]| v.iter().map(|q| format!(" {q}")).collect::<String>();
    let _ = writeln!(out, "{kind} k={alphabet} n={n}");
    let _ = writeln!(out, "initial:{}", list(initials));
    let _ = writeln!(out, "final:{}", list(finals));
}

pub fn write_nfa(n: &Nfa) -> String {
    let mut out = String::new();
    let finals: Vec<_> = n.finals().collect();
    write_common(
        &mut out,
        "nfa",
        n.alphabet(),
        n.num_states(),
        n.initials(),
        &finals,
    );
    for (p, a, q) in n.transitions() {
        let _ = writeln!(out, "{p} {} {q}", n.alphabet().symbol(a));
    }
    out
}

pub fn write_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    let finals: Vec<_> = d.finals().collect();
    write_common(
        &mut out,
        "dfa",
        d.alphabet(),
        d.num_states(),
        &[d.initial()],
        &finals,
    );
    for q in 0..d.num_states() {
        for (a, c) in d.alphabet().iter().enumerate() {
            let _ = writeln!(out, "{q} {c} {}", d.step(q, a));
        }
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> AutomatonError {
    AutomatonError::Format {
        line,
        message: message.into(),
    }
}

fn parse_ids(line: usize, text: &str, n: usize) -> Result<Vec<usize>, AutomatonError> {
    text.split_whitespace()
        .map(|t| {
            let q: usize = t
                .parse()
                .map_err(|_| err(line, format!("invalid state id {t:?}")))?;
            if q >= n {
                return Err(err(line, format!("state {q} out of range (n={n})")));
            }
            Ok(q)
        })
        .collect()
}

/// Reads either kind of machine. A `dfa` whose table has gaps is completed
/// with a sink; two different targets for one `(q, a)` are rejected.
pub fn parse_machine(text: &str) -> Result<Machine, AutomatonError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    if kind != "nfa" && kind != "dfa" {
        return Err(err(
            hline,
            format!("expected 'nfa' or 'dfa', found {kind:?}"),
        ));
    }
    let mut alphabet = None;
    let mut n = None;
    for p in parts {
        if let Some(k) = p.strip_prefix("k=") {
            alphabet = Some(Alphabet::parse(k).map_err(|e| err(hline, e.to_string()))?);
        } else if let Some(v) = p.strip_prefix("n=") {
            n = Some(
                v.parse::<usize>()
                    .map_err(|_| err(hline, format!("invalid state count {v:?}")))?,
            );
        } else {
            return Err(err(hline, format!("unexpected header field {p:?}")));
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(hline, "missing k=<symbols>"))?;
    let n = n.ok_or_else(|| err(hline, "missing n=<count>"))?;
    if n == 0 {
        return Err(err(hline, "a machine needs at least one state"));
    }

    let mut initials: Option<Vec<usize>> = None;
    let mut finals: Option<Vec<usize>> = None;
    let mut triples = Vec::new();
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("initial:") {
            if initials.replace(parse_ids(ln, rest, n)?).is_some() {
                return Err(err(ln, "duplicate initial line"));
            }
        } else if let Some(rest) = l.strip_prefix("final:") {
            if finals.replace(parse_ids(ln, rest, n)?).is_some() {
                return Err(err(ln, "duplicate final line"));
            }
        } else {
            let f: Vec<&str> = l.split_whitespace().collect();
            let [p, a, q] = f.as_slice() else {
                return Err(err(ln, "expected 'state symbol state'"));
            };
            let mut sym = a.chars();
            let (Some(c), None) = (sym.next(), sym.next()) else {
                return Err(err(ln, format!("invalid symbol {a:?}")));
            };
            let a = alphabet
                .index_of(c)
                .ok_or_else(|| err(ln, format!("symbol {c:?} is not in the alphabet")))?;
            let ids = parse_ids(ln, &format!("{p} {q}"), n)?;
            triples.push((ln, ids[0], a, ids[1]));
        }
    }
    let initials = initials.ok_or_else(|| err(hline, "missing initial line"))?;
    let finals = finals.ok_or_else(|| err(hline, "missing final line"))?;

    if kind == "nfa" {
        let nfa = Nfa::new(
            alphabet,
            n,
            triples.into_iter().map(|(_, p, a, q)| (p, a, q)),
            initials,
            finals,
        )?;
        return Ok(Machine::Nfa(nfa));
    }

    let [initial] = initials.as_slice() else {
        return Err(err(hline, "a dfa needs exactly one initial state"));
    };
    let k = alphabet.len();
    let mut delta = vec![None; n * k];
    for (ln, p, a, q) in triples {
        match delta[p * k + a] {
            Some(t) if t != q => {
                return Err(err(
                    ln,
                    AutomatonError::NotDeterministic {
                        state: p,
                        symbol: alphabet.symbol(a),
                    }
                    .to_string(),
                ))
            }
            _ => delta[p * k + a] = Some(q),
        }
    }
    let mut flags = vec![false; n];
    for q in finals {
        flags[q] = true;
    }
    Ok(Machine::Dfa(complete(&PartialDfa {
        alphabet,
        delta,
        initial: *initial,
        finals: flags,
    })))
}
