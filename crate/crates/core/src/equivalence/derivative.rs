use std::collections::HashSet;

use super::{CheckerState, EquivalenceReport};
use crate::alphabet::Alphabet;
use crate::regex::{deriv, normalize, CanonicalKey, Regex, RegexError};
use crate::union_find::Partition;

/// Decides `L(r1) = L(r2)` by exploring pairs of Brzozowski derivatives,
/// stopping at the first pair that disagrees on nullability.
pub fn am(r1: &Regex, r2: &Regex, alphabet: &Alphabet) -> Result<EquivalenceReport, RegexError> {
    Ok(am_traced(r1, r2, alphabet)?.0)
}

/// [`am`] plus the canonical keys of every popped pair, in pop order.
pub fn am_traced(
    r1: &Regex,
    r2: &Regex,
    alphabet: &Alphabet,
) -> Result<(EquivalenceReport, Vec<(CanonicalKey, CanonicalKey)>), RegexError> {
    r1.check_alphabet(alphabet)?;
    r2.check_alphabet(alphabet)?;
    let init = (normalize(r1), normalize(r2));
    let mut cs = CheckerState::new(init.clone());
    let mut seen: HashSet<(Regex, Regex)> = HashSet::from([init]);
    let mut trace = Vec::new();

    while let Some((x, y)) = cs.pop() {
        trace.push((x.key(), y.key()));
        if x.nullable() != y.nullable() {
            cs.refute((x, y));
            break;
        }
        for (i, a) in alphabet.iter().enumerate() {
            let next = (deriv(&x, a), deriv(&y, a));
            if seen.insert(next.clone()) {
                cs.push(next, &(x.clone(), y.clone()), i);
            }
        }
    }
    Ok((cs.report(|w| alphabet.decode(w)), trace))
}

/// Derivative-based check with a union-find history: derivatives of `r1` and
/// `r2` live in one partition (tagged by side) and a pair is explored only
/// when it merges two sets.
pub fn equiv_uf(
    r1: &Regex,
    r2: &Regex,
    alphabet: &Alphabet,
) -> Result<EquivalenceReport, RegexError> {
    r1.check_alphabet(alphabet)?;
    r2.check_alphabet(alphabet)?;
    let init = (normalize(r1), normalize(r2));
    let mut part: Partition<(u8, Regex)> = Partition::new();
    let s1 = part.find_set(&(1, init.0.clone()), true).expect("created");
    let s2 = part.find_set(&(2, init.1.clone()), true).expect("created");
    part.union_sets(s1, s2, s2).expect("distinct tags");
    let mut cs = CheckerState::new(init);

    while let Some((x, y)) = cs.pop() {
        if x.nullable() != y.nullable() {
            cs.refute((x, y));
            break;
        }
        for (i, a) in alphabet.iter().enumerate() {
            let (dx, dy) = (deriv(&x, a), deriv(&y, a));
            let sx = part
                .find_set(&(1, dx.clone()), true)
                .expect("created on miss");
            let sy = part
                .find_set(&(2, dy.clone()), true)
                .expect("created on miss");
            if sx != sy {
                part.union_sets(sx, sy, sy).expect("distinct sets");
                cs.push((dx, dy), &(x.clone(), y.clone()), i);
            }
        }
    }
    Ok(cs.report(|w| alphabet.decode(w)))
}
