use std::collections::{BTreeSet, HashSet, VecDeque};

use super::canonical::{mk_concat, mk_union, normalize};
use super::{Kind, Regex, RegexError};
use crate::alphabet::Alphabet;

/// Brzozowski derivative of a normal form; the result is a normal form.
pub(crate) fn deriv(r: &Regex, a: char) -> Regex {
    debug_assert!(r.is_canonical());
    match r.kind() {
        Kind::Empty | Kind::Epsilon => Regex::empty(),
        Kind::Symbol(b) if *b == a => Regex::epsilon(),
        Kind::Symbol(_) => Regex::empty(),
        Kind::Union(x, y) => mk_union(&deriv(x, a), &deriv(y, a)),
        Kind::Concat(x, y) => {
            let head = mk_concat(&deriv(x, a), y);
            if x.nullable() {
                mk_union(&head, &deriv(y, a))
            } else {
                head
            }
        }
        Kind::Star(x) => mk_concat(&deriv(x, a), r),
    }
}

fn check_symbol(a: char, alphabet: &Alphabet) -> Result<(), RegexError> {
    if alphabet.contains(a) {
        Ok(())
    } else {
        Err(RegexError::ForeignSymbol(a))
    }
}

/// The derivative of `r` by `a`, in normal form.
///
/// `L(derivative(r, a)) = { w | aw ∈ L(r) }`.
pub fn derivative(r: &Regex, a: char, alphabet: &Alphabet) -> Result<Regex, RegexError> {
    check_symbol(a, alphabet)?;
    Ok(deriv(&normalize(r), a))
}

/// Left fold of [`derivative`] over `w`. The empty word returns `r` untouched.
pub fn word_derivative(r: &Regex, w: &str, alphabet: &Alphabet) -> Result<Regex, RegexError> {
    if w.is_empty() {
        return Ok(r.clone());
    }
    for a in w.chars() {
        check_symbol(a, alphabet)?;
    }
    Ok(w.chars().fold(normalize(r), |acc, a| deriv(&acc, a)))
}

/// Antimirov partial derivatives of a normal form, sorted by key.
pub(crate) fn pderiv(r: &Regex, a: char) -> BTreeSet<Regex> {
    let mut out = BTreeSet::new();
    pderiv_into(r, a, &mut out);
    out
}

fn pderiv_into(r: &Regex, a: char, out: &mut BTreeSet<Regex>) {
    match r.kind() {
        Kind::Empty | Kind::Epsilon => {}
        Kind::Symbol(b) => {
            if *b == a {
                out.insert(Regex::epsilon());
            }
        }
        Kind::Union(x, y) => {
            pderiv_into(x, a, out);
            pderiv_into(y, a, out);
        }
        Kind::Concat(x, y) => {
            for g in pderiv(x, a) {
                out.insert(mk_concat(&g, y));
            }
            if x.nullable() {
                pderiv_into(y, a, out);
            }
        }
        Kind::Star(x) => {
            for g in pderiv(x, a) {
                out.insert(mk_concat(&g, r));
            }
        }
    }
}

/// Set of partial derivatives of `r` by `a`, each in normal form, sorted by
/// canonical key and free of duplicates.
pub fn partial_derivatives(
    r: &Regex,
    a: char,
    alphabet: &Alphabet,
) -> Result<Vec<Regex>, RegexError> {
    check_symbol(a, alphabet)?;
    Ok(pderiv(&normalize(r), a).into_iter().collect())
}

/// Least set containing `normalize(r)` and closed under partial derivatives.
///
/// Elements are listed in discovery order: breadth first, symbols in
/// alphabet order, siblings in key order.
pub fn pd_closure(r: &Regex, alphabet: &Alphabet) -> Vec<Regex> {
    let start = normalize(r);
    let mut seen: HashSet<Regex> = HashSet::new();
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(q) = queue.pop_front() {
        for a in alphabet.iter() {
            for p in pderiv(&q, a) {
                if seen.insert(p.clone()) {
                    order.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
    }
    order
}
