use std::collections::HashSet;

use super::hk::Merged;
use super::{CheckerState, EquivalenceReport, ProductRelation};
use crate::automata::{align_dfas, Dfa};

/// Output of the pair-history checker.
#[derive(Debug, Clone)]
pub struct HknRun {
    pub report: EquivalenceReport,
    /// Final history `H`, ids local to each machine.
    pub relation: ProductRelation,
    /// Popped pairs in order, ids local to each machine.
    pub trace: Vec<(usize, usize)>,
}

/// Hopcroft-Karp with a plain set of pairs as history and a final finality
/// sweep over that set. `H` ends up as exactly the pairs reachable from the
/// initial pair in the product machine.
pub fn hkn(a: &Dfa, b: &Dfa) -> HknRun {
    run(a, b, false)
}

/// [`hkn`] with the finality test moved to every pop, the form that lines
/// up step for step with the derivative-based checker.
pub fn hkn_early_refutation(a: &Dfa, b: &Dfa) -> HknRun {
    run(a, b, true)
}

fn run(a: &Dfa, b: &Dfa, early: bool) -> HknRun {
    let (a, b) = align_dfas(a, b);
    let m = Merged::new(&a, &b);
    let init = (a.initial(), b.initial());
    let mut cs = CheckerState::new(init);
    // H plus the pairs currently on the stack; nothing is pushed twice.
    let mut seen: HashSet<(usize, usize)> = HashSet::from([init]);
    let mut history: Vec<(usize, usize)> = Vec::new();
    let mut trace = Vec::new();

    while let Some((p, q)) = cs.pop() {
        trace.push((p, q));
        if early && a.is_final(p) != b.is_final(q) {
            cs.refute((p, q));
            break;
        }
        history.push((p, q));
        for s in 0..m.symbols() {
            let next = (a.step(p, s), b.step(q, s));
            if seen.insert(next) {
                cs.push(next, &(p, q), s);
            }
        }
    }

    if !early {
        if let Some(&bad) = history
            .iter()
            .find(|(p, q)| a.is_final(*p) != b.is_final(*q))
        {
            cs.refute(bad);
        }
    }
    HknRun {
        report: cs.report(|w| a.alphabet().decode(w)),
        relation: history.into_iter().collect(),
        trace,
    }
}
