//! Equivalence deciders.
//!
//! | checker      | input          | history                     | refutation    |
//! |--------------|----------------|-----------------------------|---------------|
//! | [`hk`]       | two DFAs       | union-find, all states made | final sweep   |
//! | [`hki`]      | two DFAs       | union-find, made on demand  | at every pop  |
//! | [`hkn`]      | two DFAs       | set of state pairs          | final sweep   |
//! | [`hke`]      | two NFAs       | union-find over subsets     | at every pop  |
//! | [`am`]       | two regexes    | set of derivative pairs     | at every pop  |
//! | [`equiv_uf`] | two regexes    | union-find over derivatives | at every pop  |
//!
//! Every worklist is a stack and successors are pushed in alphabet order, so
//! iteration counts are reproducible. The pair pushed after a successful
//! merge is the pair of successor states itself (not the set roots), which
//! keeps every pushed pair reachable from the initial pair by a known word;
//! that word is the witness when the pair turns out to be inhomogeneous.

mod derivative;
mod hk;
mod hke;
mod hkn;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use derivative::{am, am_traced, equiv_uf};
pub use hk::{hk, hk_run, hk_with_observer, hki, HkRun};
pub use hke::hke;
pub use hkn::{hkn, hkn_early_refutation, HknRun};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("the run did not refute equivalence")]
    NotRefuted,
    #[error("pair was never pushed in this run")]
    UnknownPair,
}

/// Outcome of one equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// Number of worklist pops.
    pub iterations: usize,
    /// A word accepted by exactly one input; present iff not equivalent.
    pub witness: Option<String>,
    /// Number of pairs pushed onto the worklist, the initial pair included.
    pub pairs_visited: usize,
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.equivalent { "eq" } else { "neq" };
        write!(f, "verdict={verdict} iters={}", self.iterations)?;
        match &self.witness {
            Some(w) => write!(f, " witness=\"{w}\""),
            None => write!(f, " witness=-"),
        }
    }
}

/// Set of state pairs `R ⊆ Q1 × Q2`, ids local to each machine.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProductRelation(BTreeSet<(usize, usize)>);

impl ProductRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: usize, q: usize) -> bool {
        self.0.insert((p, q))
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.0.contains(&(p, q))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<(usize, usize)> for ProductRelation {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        ProductRelation(iter.into_iter().collect())
    }
}

/// Worklist `S` plus the parent links needed to rebuild a witness.
#[derive(Debug, Clone)]
pub struct CheckerState<P> {
    stack: Vec<P>,
    parents: HashMap<P, Option<(P, usize)>>,
    pushed: Vec<P>,
    pops: usize,
    refuted: Option<P>,
}

impl<P: Hash + Eq + Clone> CheckerState<P> {
    pub fn new(initial: P) -> Self {
        CheckerState {
            stack: vec![initial.clone()],
            parents: HashMap::from([(initial.clone(), None)]),
            pushed: vec![initial],
            pops: 0,
            refuted: None,
        }
    }

    pub fn push(&mut self, pair: P, from: &P, symbol: usize) {
        self.parents
            .entry(pair.clone())
            .or_insert_with(|| Some((from.clone(), symbol)));
        self.pushed.push(pair.clone());
        self.stack.push(pair);
    }

    pub fn pop(&mut self) -> Option<P> {
        let p = self.stack.pop();
        if p.is_some() {
            self.pops += 1;
        }
        p
    }

    pub fn iterations(&self) -> usize {
        self.pops
    }

    /// Pairs in push order.
    pub fn pushed(&self) -> &[P] {
        &self.pushed
    }

    pub fn refute(&mut self, bad: P) {
        self.refuted = Some(bad);
    }

    pub fn refuted_pair(&self) -> Option<&P> {
        self.refuted.as_ref()
    }

    /// Symbol indices leading from the initial pair to `bad`.
    pub fn witness(&self, bad: &P) -> Result<Vec<usize>, EquivError> {
        if self.refuted.is_none() {
            return Err(EquivError::NotRefuted);
        }
        let mut word = Vec::new();
        let mut cur = bad;
        loop {
            match self.parents.get(cur) {
                None => return Err(EquivError::UnknownPair),
                Some(None) => break,
                Some(Some((from, a))) => {
                    word.push(*a);
                    cur = from;
                }
            }
        }
        word.reverse();
        Ok(word)
    }

    pub(crate) fn report(&self, word_of: impl Fn(&[usize]) -> String) -> EquivalenceReport {
        let witness = self.refuted.as_ref().map(|bad| {
            let w = self.witness(bad).expect("refuted pair has a recorded path");
            word_of(&w)
        });
        EquivalenceReport {
            equivalent: witness.is_none(),
            iterations: self.pops,
            witness,
            pairs_visited: self.pushed.len(),
        }
    }
}
