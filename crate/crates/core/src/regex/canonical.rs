//! Normal forms modulo associativity, commutativity and idempotence of `+`.
//!
//! The smart constructors below keep every tree they build in normal form:
//!
//! * unions are flattened, `0` summands dropped, the remaining summands
//!   sorted by key and deduplicated, then rebuilt as a right-nested chain;
//! * `0·x = x·0 = 0` and `1·x = x·1 = x`;
//! * concatenation is right-associated;
//! * `x**` is left alone.
//!
//! Because normal-form nodes serialize exactly, the serialization of a normal
//! form is an exact canonical key: no hashing is involved in the equality
//! decision.

use std::fmt;
use std::sync::Arc;

use super::{Kind, Regex};

/// Exact serialization of the normal form of a [`Regex`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Arc<str>);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Regex {
    /// Key of a tree already in normal form.
    pub(crate) fn key(&self) -> CanonicalKey {
        debug_assert!(self.is_canonical());
        CanonicalKey(self.structural_key().clone())
    }
}

pub fn canonical_key(r: &Regex) -> CanonicalKey {
    normalize(r).key()
}

/// Rebuilds `r` bottom-up with the smart constructors.
pub fn normalize(r: &Regex) -> Regex {
    if r.is_canonical() {
        return r.clone();
    }
    match r.kind() {
        Kind::Empty | Kind::Epsilon | Kind::Symbol(_) => r.clone(),
        Kind::Union(a, b) => mk_union(&normalize(a), &normalize(b)),
        Kind::Concat(a, b) => mk_concat(&normalize(a), &normalize(b)),
        Kind::Star(x) => mk_star(&normalize(x)),
    }
}

fn summands(r: &Regex, out: &mut Vec<Regex>) {
    let mut cur = r;
    loop {
        match cur.kind() {
            Kind::Union(head, rest) => {
                out.push(head.clone());
                cur = rest;
            }
            Kind::Empty => return,
            _ => {
                out.push(cur.clone());
                return;
            }
        }
    }
}

/// Union of two normal forms.
pub fn mk_union(a: &Regex, b: &Regex) -> Regex {
    debug_assert!(a.is_canonical() && b.is_canonical());
    if a.is_empty_set() {
        return b.clone();
    }
    if b.is_empty_set() || a == b {
        return a.clone();
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    summands(a, &mut left);
    summands(b, &mut right);

    // Both chains are sorted; merge and drop duplicates.
    let mut merged: Vec<Regex> = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() || j < right.len() {
        let next = if j == right.len() || (i < left.len() && left[i] <= right[j]) {
            i += 1;
            &left[i - 1]
        } else {
            j += 1;
            &right[j - 1]
        };
        if merged.last() != Some(next) {
            merged.push(next.clone());
        }
    }
    union_chain(merged)
}

/// Builds the right-nested chain for sorted, duplicate-free summands.
fn union_chain(mut summands: Vec<Regex>) -> Regex {
    let Some(mut acc) = summands.pop() else {
        return Regex::empty();
    };
    while let Some(s) = summands.pop() {
        acc = Regex::from_canonical(Kind::Union(s, acc));
    }
    acc
}

/// Concatenation of two normal forms.
pub fn mk_concat(a: &Regex, b: &Regex) -> Regex {
    debug_assert!(a.is_canonical() && b.is_canonical());
    match (a.kind(), b.kind()) {
        (Kind::Empty, _) | (_, Kind::Empty) => Regex::empty(),
        (Kind::Epsilon, _) => b.clone(),
        (_, Kind::Epsilon) => a.clone(),
        (Kind::Concat(head, tail), _) => mk_concat(head, &mk_concat(tail, b)),
        _ => Regex::from_canonical(Kind::Concat(a.clone(), b.clone())),
    }
}

pub fn mk_star(a: &Regex) -> Regex {
    debug_assert!(a.is_canonical());
    Regex::from_canonical(Kind::Star(a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::regex::parse;

    fn re(s: &str) -> Regex {
        parse(s, &Alphabet::first(3)).unwrap()
    }

    fn key(s: &str) -> CanonicalKey {
        canonical_key(&re(s))
    }

    #[test]
    fn union_is_commutative() {
        assert_eq!(key("a+b"), key("b+a"));
    }

    #[test]
    fn union_is_idempotent_and_associative() {
        assert_eq!(key("a+(a+b)"), key("a+b"));
        assert_eq!(key("(a+b)+c"), key("a+(b+c)"));
        assert_eq!(key("c+b+a+b+c"), key("a+b+c"));
    }

    #[test]
    fn concatenation_is_not_commutative() {
        assert_ne!(key("ab"), key("ba"));
    }

    #[test]
    fn units_and_annihilators() {
        assert_eq!(key("0+a"), key("a"));
        assert_eq!(key("a+0"), key("a"));
        assert_eq!(key("0a"), key("0"));
        assert_eq!(key("a0"), key("0"));
        assert_eq!(key("1a"), key("a"));
        assert_eq!(key("a1"), key("a"));
        assert_eq!(key("0+0"), key("0"));
    }

    #[test]
    fn concatenation_is_right_associated() {
        assert_eq!(key("(ab)c"), key("a(bc)"));
        let n = normalize(&re("(ab)c"));
        match n.kind() {
            Kind::Concat(l, _) => assert_eq!(l, &Regex::symbol('a')),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nested_star_is_not_collapsed() {
        assert_ne!(key("a**"), key("a*"));
    }

    #[test]
    fn normalization_reaches_inside_other_operators() {
        assert_eq!(key("(b+a)*c"), key("(a+b+a)*c"));
        assert_eq!(key("(1(a+0))*"), key("a*"));
    }

    #[test]
    fn normalize_is_idempotent() {
        for s in ["(a+b)*a(a+b)", "c+b(a+1)*+0", "((ab)c+a)*"] {
            let once = normalize(&re(s));
            assert!(once.is_canonical());
            assert_eq!(normalize(&once), once);
            assert_eq!(canonical_key(&once), canonical_key(&re(s)));
        }
    }
}
