use std::collections::HashMap;

use super::{CheckerState, EquivalenceReport};
use crate::automata::{align_nfas, MacroState, Nfa};
use crate::union_find::Partition;

/// Subsets of the merged state space, interned to dense ids on first sight.
struct Subsets<'a> {
    a: &'a Nfa,
    b: &'a Nfa,
    offset: usize,
    index: HashMap<MacroState, usize>,
    sets: Vec<MacroState>,
    finals: Vec<bool>,
    // successor ids per (subset id, symbol), filled lazily
    succ: Vec<Vec<Option<usize>>>,
}

impl<'a> Subsets<'a> {
    fn new(a: &'a Nfa, b: &'a Nfa) -> Self {
        Subsets {
            a,
            b,
            offset: a.num_states(),
            index: HashMap::new(),
            sets: Vec::new(),
            finals: Vec::new(),
            succ: Vec::new(),
        }
    }

    fn is_member_final(&self, q: usize) -> bool {
        if q < self.offset {
            self.a.is_final(q)
        } else {
            self.b.is_final(q - self.offset)
        }
    }

    fn intern(&mut self, set: MacroState) -> usize {
        if let Some(&id) = self.index.get(&set) {
            return id;
        }
        let id = self.sets.len();
        let fin = set.states().iter().any(|&q| self.is_member_final(q));
        self.index.insert(set.clone(), id);
        self.sets.push(set);
        self.finals.push(fin);
        self.succ.push(vec![None; self.a.alphabet().len()]);
        id
    }

    fn step(&mut self, id: usize, s: usize) -> usize {
        if let Some(t) = self.succ[id][s] {
            return t;
        }
        let off = self.offset;
        let members = self.sets[id].states();
        let next = MacroState::new(members.iter().flat_map(|&q| {
            let (succ, shift) = if q < off {
                (self.a.successors(q, s), 0)
            } else {
                (self.b.successors(q - off, s), off)
            };
            succ.iter().map(move |t| t + shift)
        }));
        let t = self.intern(next);
        self.succ[id][s] = Some(t);
        t
    }
}

/// Hopcroft-Karp with early refutation run on the subset automata of two
/// NFAs, built lazily: only subsets reached from the initial pair are ever
/// created, and FIND creates their sets on demand.
pub fn hke(a: &Nfa, b: &Nfa) -> EquivalenceReport {
    let (a, b) = align_nfas(a, b);
    let mut subs = Subsets::new(&a, &b);
    let off = subs.offset;
    let p0 = subs.intern(a.initial_set());
    let q0 = subs.intern(MacroState::new(b.initials().iter().map(|q| q + off)));

    let mut part: Partition<usize> = Partition::new();
    let rp = part.find_set(&p0, true).expect("created");
    let rq = part.find_set(&q0, true).expect("created");
    if rp != rq {
        part.union_sets(rp, rq, rq).expect("distinct sets");
    }
    let mut cs = CheckerState::new((p0, q0));

    while let Some((p, q)) = cs.pop() {
        if subs.finals[p] != subs.finals[q] {
            cs.refute((p, q));
            break;
        }
        for s in 0..a.alphabet().len() {
            let p1 = subs.step(p, s);
            let q1 = subs.step(q, s);
            let rp = part.find_set(&p1, true).expect("created on miss");
            let rq = part.find_set(&q1, true).expect("created on miss");
            if rp != rq {
                part.union_sets(rp, rq, rq).expect("distinct sets");
                cs.push((p1, q1), &(p, q), s);
            }
        }
    }
    cs.report(|w| a.alphabet().decode(w))
}
