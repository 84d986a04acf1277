//! Finite automata over a dense state space `0..n`.
//!
//! [`Dfa`] values are always complete: `step` never fails. Partial transition
//! tables are modelled by [`PartialDfa`] and turned into a [`Dfa`] with
//! [`complete`].

mod language;
mod ops;
mod text;

use thiserror::Error;

use crate::alphabet::Alphabet;

pub use language::{enumerate_language, Acceptor, MAX_ENUMERATION_LENGTH};
pub use ops::{
    align_dfas, align_nfas, complete, determinize, determinize_with_subsets, disjoint_union,
    reverse, trim,
};
pub use text::{parse_machine, write_dfa, write_nfa, Machine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("state {state} out of range for a machine with {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error("symbol index {0} out of range")]
    SymbolOutOfRange(usize),
    #[error("symbol {0:?} is not in the alphabet")]
    ForeignSymbol(char),
    #[error("machines have different alphabets ({0} vs {1})")]
    AlphabetMismatch(String, String),
    #[error("state {state} has two transitions on {symbol:?}")]
    NotDeterministic { state: usize, symbol: char },
    #[error("transition table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("a machine needs at least one state")]
    NoStates,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("enumeration length {0} exceeds the limit of {MAX_ENUMERATION_LENGTH}")]
    LimitExceeded(usize),
}

/// A canonically ordered set of NFA states used as one powerset state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MacroState(Vec<usize>);

impl MacroState {
    pub fn new<I: IntoIterator<Item = usize>>(states: I) -> Self {
        let mut v: Vec<usize> = states.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        MacroState(v)
    }

    pub fn states(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

/// Nondeterministic automaton `(Q, Σ, δ, I, F)` without ε-moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    // delta[q][a] is sorted and duplicate-free.
    delta: Vec<Vec<Vec<usize>>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
}

impl Nfa {
    /// Builds an NFA from `(source, symbol index, target)` triples.
    /// Duplicate triples collapse into one.
    pub fn new<T, I, F>(
        alphabet: Alphabet,
        states: usize,
        transitions: T,
        initials: I,
        finals: F,
    ) -> Result<Self, AutomatonError>
    where
        T: IntoIterator<Item = (usize, usize, usize)>,
        I: IntoIterator<Item = usize>,
        F: IntoIterator<Item = usize>,
    {
        if states == 0 {
            return Err(AutomatonError::NoStates);
        }
        let k = alphabet.len();
        let check = |q: usize| {
            if q < states {
                Ok(q)
            } else {
                Err(AutomatonError::StateOutOfRange { state: q, states })
            }
        };
        let mut delta = vec![vec![Vec::new(); k]; states];
        for (p, a, q) in transitions {
            check(p)?;
            check(q)?;
            if a >= k {
                return Err(AutomatonError::SymbolOutOfRange(a));
            }
            delta[p][a].push(q);
        }
        for row in &mut delta {
            for succ in row {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let mut init = Vec::new();
        for q in initials {
            init.push(check(q)?);
        }
        init.sort_unstable();
        init.dedup();
        let mut fin = vec![false; states];
        for q in finals {
            fin[check(q)?] = true;
        }
        Ok(Nfa {
            alphabet,
            delta,
            initials: init,
            finals: fin,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn successors(&self, q: usize, a: usize) -> &[usize] {
        &self.delta[q][a]
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    /// All triples, ordered by source, symbol index, target.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, succ)| succ.iter().map(move |&q| (p, a, q)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// Union of the `a`-successors of every member of `set`.
    pub fn step_set(&self, set: &MacroState, a: usize) -> MacroState {
        MacroState::new(
            set.states()
                .iter()
                .flat_map(|&q| self.delta[q][a].iter().copied()),
        )
    }

    pub fn initial_set(&self) -> MacroState {
        MacroState(self.initials.clone())
    }

    pub fn is_final_set(&self, set: &MacroState) -> bool {
        set.states().iter().any(|&q| self.finals[q])
    }

    /// Returns `Some` when the relation is a function on every `(q, a)`
    /// and there is exactly one initial state.
    pub fn as_dfa(&self) -> Option<PartialDfa> {
        if self.initials.len() != 1 {
            return None;
        }
        let mut delta = Vec::with_capacity(self.num_states() * self.alphabet.len());
        for row in &self.delta {
            for succ in row {
                match succ.as_slice() {
                    [] => delta.push(None),
                    [q] => delta.push(Some(*q)),
                    _ => return None,
                }
            }
        }
        Some(PartialDfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: self.initials[0],
            finals: self.finals.clone(),
        })
    }
}

/// Deterministic automaton with a total transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    // delta[q * k + a]
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// `table[q][a]` is the `a`-successor of `q`.
    pub fn new(
        alphabet: Alphabet,
        table: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self, AutomatonError> {
        let n = table.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if finals.len() != n {
            return Err(AutomatonError::TableSize {
                got: finals.len(),
                expected: n,
            });
        }
        let mut delta = Vec::with_capacity(n * k);
        for row in table {
            if row.len() != k {
                return Err(AutomatonError::TableSize {
                    got: row.len(),
                    expected: k,
                });
            }
            delta.extend(row);
        }
        Self::from_flat(alphabet, delta, initial, finals)
    }

    pub(crate) fn from_flat(
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self, AutomatonError> {
        let n = finals.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if delta.len() != n * alphabet.len() {
            return Err(AutomatonError::TableSize {
                got: delta.len(),
                expected: n * alphabet.len(),
            });
        }
        if let Some(&q) = delta.iter().chain([&initial]).find(|&&q| q >= n) {
            return Err(AutomatonError::StateOutOfRange {
                state: q,
                states: n,
            });
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            finals,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    /// State reached from `from` after reading symbol indices `word`.
    pub fn run_from(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |q, &a| self.step(q, a))
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        Nfa {
            alphabet: self.alphabet.clone(),
            delta: (0..self.num_states())
                .map(|q| (0..k).map(|a| vec![self.step(q, a)]).collect())
                .collect(),
            initials: vec![self.initial],
            finals: self.finals.clone(),
        }
    }

    /// Same machine with a different start state.
    pub fn with_initial(&self, initial: usize) -> Result<Dfa, AutomatonError> {
        if initial >= self.num_states() {
            return Err(AutomatonError::StateOutOfRange {
                state: initial,
                states: self.num_states(),
            });
        }
        Ok(Dfa {
            initial,
            ..self.clone()
        })
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for a in 0..self.alphabet.len() {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }
}

/// A deterministic table in which some `(q, a)` may be undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDfa {
    pub alphabet: Alphabet,
    /// `delta[q * k + a]`.
    pub delta: Vec<Option<usize>>,
    pub initial: usize,
    pub finals: Vec<bool>,
}

impl PartialDfa {
    pub fn num_states(&self) -> usize {
        self.finals.len()
    }
}
