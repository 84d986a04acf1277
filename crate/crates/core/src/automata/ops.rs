use std::collections::HashMap;

use super::{AutomatonError, Dfa, MacroState, Nfa, PartialDfa};
use crate::alphabet::Alphabet;

/// Adds a non-final sink iff some `(q, a)` is undefined.
pub fn complete(d: &PartialDfa) -> Dfa {
    let n = d.num_states();
    let needs_sink = d.delta.iter().any(Option::is_none);
    let sink = n;
    let mut delta: Vec<usize> = d.delta.iter().map(|t| t.unwrap_or(sink)).collect();
    let mut finals = d.finals.clone();
    if needs_sink {
        delta.extend(std::iter::repeat_n(sink, d.alphabet.len()));
        finals.push(false);
    }
    Dfa::from_flat(d.alphabet.clone(), delta, d.initial, finals)
        .expect("completed table is well formed")
}

/// Reachable-subset construction.
///
/// States are numbered in breadth-first discovery order from the initial
/// subset `I`, symbols in alphabet order. The empty subset becomes an ordinary
/// (sink) state when reachable, so the result is complete.
pub fn determinize(n: &Nfa) -> Dfa {
    determinize_with_subsets(n).0
}

/// [`determinize`], also returning the subset behind each DFA state.
pub fn determinize_with_subsets(n: &Nfa) -> (Dfa, Vec<MacroState>) {
    let k = n.alphabet().len();
    let mut index: HashMap<MacroState, usize> = HashMap::new();
    let mut subsets = vec![n.initial_set()];
    index.insert(subsets[0].clone(), 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..k {
            let next = n.step_set(&subsets[i], a);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let finals = subsets.iter().map(|s| n.is_final_set(s)).collect();
    let dfa = Dfa::from_flat(n.alphabet().clone(), delta, 0, finals)
        .expect("subset construction yields a complete table");
    (dfa, subsets)
}

/// Transposes every transition and swaps initial and final states.
pub fn reverse(n: &Nfa) -> Nfa {
    let transitions: Vec<_> = n.transitions().map(|(p, a, q)| (q, a, p)).collect();
    Nfa::new(
        n.alphabet().clone(),
        n.num_states(),
        transitions,
        n.finals().collect::<Vec<_>>(),
        n.initials().to_vec(),
    )
    .expect("reversal keeps ids in range")
}

/// Places `b` after `a`, shifting `b`'s ids by `a.num_states()`.
///
/// The combined machine's initial states are those of both inputs; the
/// returned offset locates `b` inside it.
pub fn disjoint_union(a: &Nfa, b: &Nfa) -> Result<(Nfa, usize), AutomatonError> {
    if a.alphabet() != b.alphabet() {
        return Err(AutomatonError::AlphabetMismatch(
            a.alphabet().to_string(),
            b.alphabet().to_string(),
        ));
    }
    let off = a.num_states();
    let transitions: Vec<_> = a
        .transitions()
        .chain(b.transitions().map(|(p, s, q)| (p + off, s, q + off)))
        .collect();
    let initials: Vec<_> = a
        .initials()
        .iter()
        .copied()
        .chain(b.initials().iter().map(|q| q + off))
        .collect();
    let finals: Vec<_> = a.finals().chain(b.finals().map(|q| q + off)).collect();
    let merged = Nfa::new(
        a.alphabet().clone(),
        off + b.num_states(),
        transitions,
        initials,
        finals,
    )?;
    Ok((merged, off))
}

/// Restricts `d` to its accessible part, renumbered in breadth-first order.
pub fn trim(d: &Dfa) -> Dfa {
    let order = d.reachable();
    if order.len() == d.num_states() && order.iter().enumerate().all(|(i, &q)| i == q) {
        return d.clone();
    }
    let mut rename = vec![usize::MAX; d.num_states()];
    for (i, &q) in order.iter().enumerate() {
        rename[q] = i;
    }
    let k = d.alphabet().len();
    let delta = order
        .iter()
        .flat_map(|&q| (0..k).map(move |a| (q, a)))
        .map(|(q, a)| rename[d.step(q, a)])
        .collect();
    let finals = order.iter().map(|&q| d.is_final(q)).collect();
    Dfa::from_flat(d.alphabet().clone(), delta, 0, finals).expect("trimmed table is complete")
}

fn extend_dfa(d: &Dfa, to: &Alphabet) -> Dfa {
    let map: Vec<Option<usize>> = to.iter().map(|c| d.alphabet().index_of(c)).collect();
    let n = d.num_states();
    let k = to.len();
    let mut delta = Vec::with_capacity((n + 1) * k);
    for q in 0..n {
        delta.extend(map.iter().map(|m| m.map(|a| d.step(q, a))));
    }
    complete(&PartialDfa {
        alphabet: to.clone(),
        delta,
        initial: d.initial(),
        finals: d.final_flags().to_vec(),
    })
}

fn extend_nfa(n: &Nfa, to: &Alphabet) -> Nfa {
    let transitions: Vec<_> = n
        .transitions()
        .map(|(p, a, q)| {
            let c = n.alphabet().symbol(a);
            (p, to.index_of(c).expect("target alphabet is a superset"), q)
        })
        .collect();
    Nfa::new(
        to.clone(),
        n.num_states(),
        transitions,
        n.initials().to_vec(),
        n.finals().collect::<Vec<_>>(),
    )
    .expect("ids unchanged")
}

/// Re-expresses both DFAs over the union alphabet, completing each with a
/// sink where a new symbol has no transition.
pub fn align_dfas(a: &Dfa, b: &Dfa) -> (Dfa, Dfa) {
    if a.alphabet() == b.alphabet() {
        return (a.clone(), b.clone());
    }
    let u = a.alphabet().union(b.alphabet());
    (extend_dfa(a, &u), extend_dfa(b, &u))
}

/// Re-expresses both NFAs over the union alphabet.
pub fn align_nfas(a: &Nfa, b: &Nfa) -> (Nfa, Nfa) {
    if a.alphabet() == b.alphabet() {
        return (a.clone(), b.clone());
    }
    let u = a.alphabet().union(b.alphabet());
    (extend_nfa(a, &u), extend_nfa(b, &u))
}
