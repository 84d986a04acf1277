//! Regular expressions over a declared [`Alphabet`].
//!
//! A [`Regex`] is an immutable, reference-counted syntax tree. Every node
//! caches its nullability and an exact prefix-notation serialization of its
//! own structure; the serialization doubles as the equality, ordering and
//! hashing key, so two `Regex` values compare equal iff they are the same tree.
//!
//! Trees produced by [`parse`] keep the shape the user wrote (concatenation and
//! union associate to the left). Trees produced by the smart constructors in
//! [`canonical`] are in normal form; see [`canonical_key`].

mod canonical;
mod construct;
mod derivative;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::Alphabet;

pub use canonical::{canonical_key, mk_concat, mk_star, mk_union, normalize, CanonicalKey};
pub use construct::{
    brzozowski_automaton, brzozowski_automaton_with_states, partial_derivative_nfa,
};
pub(crate) use derivative::deriv;
pub use derivative::{derivative, partial_derivatives, pd_closure, word_derivative};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegexError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    ForeignSymbolAt { symbol: char, position: usize },
    #[error("symbol {0:?} is not in the alphabet")]
    ForeignSymbol(char),
}

#[derive(Debug, Clone)]
pub enum Kind {
    Empty,
    Epsilon,
    Symbol(char),
    Union(Regex, Regex),
    Concat(Regex, Regex),
    Star(Regex),
}

struct Node {
    kind: Kind,
    nullable: bool,
    canonical: bool,
    size: usize,
    key: Arc<str>,
}

#[derive(Clone)]
pub struct Regex(Arc<Node>);

impl Regex {
    fn build(kind: Kind, canonical: bool) -> Regex {
        let (nullable, size, key): (bool, usize, Arc<str>) = match &kind {
            Kind::Empty => (false, 1, Arc::from("0")),
            Kind::Epsilon => (true, 1, Arc::from("1")),
            Kind::Symbol(c) => (false, 1, Arc::from(c.to_string())),
            Kind::Union(l, r) => (
                l.nullable() || r.nullable(),
                1 + l.size() + r.size(),
                join('+', &[l, r]),
            ),
            Kind::Concat(l, r) => (
                l.nullable() && r.nullable(),
                1 + l.size() + r.size(),
                join('.', &[l, r]),
            ),
            Kind::Star(x) => (true, 1 + x.size(), join('*', &[x])),
        };
        Regex(Arc::new(Node {
            kind,
            nullable,
            canonical,
            size,
            key,
        }))
    }

    pub fn empty() -> Regex {
        Regex::build(Kind::Empty, true)
    }

    pub fn epsilon() -> Regex {
        Regex::build(Kind::Epsilon, true)
    }

    pub fn symbol(c: char) -> Regex {
        Regex::build(Kind::Symbol(c), true)
    }

    /// Raw union node; no simplification.
    pub fn union(l: Regex, r: Regex) -> Regex {
        Regex::build(Kind::Union(l, r), false)
    }

    /// Raw concatenation node; no simplification.
    pub fn concat(l: Regex, r: Regex) -> Regex {
        Regex::build(Kind::Concat(l, r), false)
    }

    /// Raw star node. `Star(Star(x))` is kept as written.
    pub fn star(x: Regex) -> Regex {
        let canonical = x.is_canonical();
        Regex::build(Kind::Star(x), canonical)
    }

    pub(crate) fn from_canonical(kind: Kind) -> Regex {
        Regex::build(kind, true)
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// `true` iff the empty word belongs to the language.
    pub fn nullable(&self) -> bool {
        self.0.nullable
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Number of symbol occurrences, written `|r|_Σ` in the literature.
    pub fn symbol_count(&self) -> usize {
        match self.kind() {
            Kind::Empty | Kind::Epsilon => 0,
            Kind::Symbol(_) => 1,
            Kind::Union(l, r) | Kind::Concat(l, r) => l.symbol_count() + r.symbol_count(),
            Kind::Star(x) => x.symbol_count(),
        }
    }

    /// Distinct symbols in first-occurrence order.
    pub fn symbols(&self) -> Vec<char> {
        fn walk(r: &Regex, out: &mut Vec<char>) {
            match r.kind() {
                Kind::Empty | Kind::Epsilon => {}
                Kind::Symbol(c) => {
                    if !out.contains(c) {
                        out.push(*c)
                    }
                }
                Kind::Union(l, r) | Kind::Concat(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Kind::Star(x) => walk(x, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Checks that every symbol belongs to `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<(), RegexError> {
        match self.symbols().into_iter().find(|c| !alphabet.contains(*c)) {
            Some(c) => Err(RegexError::ForeignSymbol(c)),
            None => Ok(()),
        }
    }

    pub(crate) fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    /// Exact structural serialization of this tree (not normalized).
    pub(crate) fn structural_key(&self) -> &Arc<str> {
        &self.0.key
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self.kind(), Kind::Empty)
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self.kind(), Kind::Epsilon)
    }
}

fn join(op: char, parts: &[&Regex]) -> Arc<str> {
    let len = 1 + parts.iter().map(|p| p.0.key.len()).sum::<usize>();
    let mut s = String::with_capacity(len);
    s.push(op);
    for p in parts {
        s.push_str(&p.0.key);
    }
    Arc::from(s)
}

impl PartialEq for Regex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}

impl Eq for Regex {}

impl Hash for Regex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state)
    }
}

impl PartialOrd for Regex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Regex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key.cmp(&other.0.key)
    }
}

// Precedence levels: 0 union, 1 concatenation, 2 star operand.
fn write_prec(r: &Regex, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match r.kind() {
        Kind::Empty => f.write_str("0"),
        Kind::Epsilon => f.write_str("1"),
        Kind::Symbol(c) => write!(f, "{c}"),
        Kind::Union(l, rr) => {
            if prec > 0 {
                f.write_str("(")?;
            }
            write_prec(l, 0, f)?;
            f.write_str("+")?;
            write_prec(rr, 0, f)?;
            if prec > 0 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Kind::Concat(l, rr) => {
            if prec > 1 {
                f.write_str("(")?;
            }
            write_prec(l, 1, f)?;
            write_prec(rr, 1, f)?;
            if prec > 1 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Kind::Star(x) => {
            write_prec(x, 2, f)?;
            f.write_str("*")
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 0, f)
    }
}

impl fmt::Debug for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Regex({self})")
    }
}
