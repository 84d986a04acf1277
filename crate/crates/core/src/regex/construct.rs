use std::collections::HashMap;

use super::canonical::normalize;
use super::derivative::{deriv, pd_closure, pderiv};
use super::Regex;
use crate::alphabet::Alphabet;
use crate::automata::{Dfa, Nfa};

/// Brzozowski's automaton: states are the normal forms of the derivatives of
/// `r`, reached breadth first with symbols in alphabet order.
pub fn brzozowski_automaton(r: &Regex, alphabet: &Alphabet) -> Dfa {
    brzozowski_automaton_with_states(r, alphabet).0
}

/// [`brzozowski_automaton`] together with the derivative behind each state.
pub fn brzozowski_automaton_with_states(r: &Regex, alphabet: &Alphabet) -> (Dfa, Vec<Regex>) {
    let start = normalize(r);
    let mut index: HashMap<Regex, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut table = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in alphabet.iter() {
            let d = deriv(&states[i], a);
            let id = *index.entry(d.clone()).or_insert_with(|| {
                states.push(d);
                states.len() - 1
            });
            row.push(id);
        }
        table.push(row);
        i += 1;
    }
    let finals = states.iter().map(Regex::nullable).collect();
    let dfa = Dfa::new(alphabet.clone(), table, 0, finals).expect("derivative table is complete");
    (dfa, states)
}

/// The partial-derivative automaton: states are [`pd_closure`] in discovery
/// order, `r` is the single initial state, `q -a-> q'` iff `q'` is a partial
/// derivative of `q` by `a`, and finality is nullability.
pub fn partial_derivative_nfa(r: &Regex, alphabet: &Alphabet) -> Nfa {
    let states = pd_closure(r, alphabet);
    let index: HashMap<&Regex, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut transitions = Vec::new();
    for (p, q) in states.iter().enumerate() {
        for (a, c) in alphabet.iter().enumerate() {
            for t in pderiv(q, c) {
                transitions.push((p, a, index[&t]));
            }
        }
    }
    let finals: Vec<usize> = states
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.nullable().then_some(i))
        .collect();
    Nfa::new(alphabet.clone(), states.len(), transitions, [0], finals)
        .expect("closure is closed under partial derivatives")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse;

    #[test]
    fn empty_language_automaton() {
        let sigma = Alphabet::first(2);
        let d = brzozowski_automaton(&Regex::empty(), &sigma);
        assert_eq!(d.num_states(), 1);
        assert!(!d.is_final(0));
        assert_eq!(d.step(0, 0), 0);
        assert_eq!(d.step(0, 1), 0);
    }

    #[test]
    fn single_symbol_has_three_classes() {
        let sigma = Alphabet::first(1);
        let (d, states) = brzozowski_automaton_with_states(&Regex::symbol('a'), &sigma);
        assert_eq!(d.num_states(), 3);
        assert_eq!(
            states,
            vec![Regex::symbol('a'), Regex::epsilon(), Regex::empty()]
        );
        assert_eq!(d.finals().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn epsilon_nfa() {
        let n = partial_derivative_nfa(&Regex::epsilon(), &Alphabet::first(2));
        assert_eq!(n.num_states(), 1);
        assert_eq!(n.transition_count(), 0);
        assert!(n.is_final(0));
    }

    #[test]
    fn family_nfa_has_the_chain_shape() {
        let sigma = Alphabet::first(2);
        let r = parse("(a+b)*a(a+b)(a+b)", &sigma).unwrap();
        let n = partial_derivative_nfa(&r, &sigma);
        assert_eq!(n.num_states(), 4);
        // self-loop on both symbols, one a-edge leaving the initial state,
        // then a chain on both symbols into the single final state
        assert_eq!(n.successors(0, 0), &[0, 1]);
        assert_eq!(n.successors(0, 1), &[0]);
        assert_eq!(n.successors(1, 0), &[2]);
        assert_eq!(n.successors(1, 1), &[2]);
        assert_eq!(n.successors(2, 0), &[3]);
        assert_eq!(n.successors(3, 0), &[] as &[usize]);
        assert_eq!(n.finals().collect::<Vec<_>>(), vec![3]);
    }
}
