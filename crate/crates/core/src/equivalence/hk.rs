use super::{CheckerState, EquivalenceReport};
use crate::automata::{align_dfas, Dfa};
use crate::union_find::Partition;

/// Two DFAs viewed as one machine over `0..n+m`; `b`'s ids are shifted by `n`.
pub(super) struct Merged<'a> {
    pub a: &'a Dfa,
    pub b: &'a Dfa,
    pub offset: usize,
}

impl<'a> Merged<'a> {
    pub fn new(a: &'a Dfa, b: &'a Dfa) -> Self {
        Merged {
            a,
            b,
            offset: a.num_states(),
        }
    }

    pub fn len(&self) -> usize {
        self.offset + self.b.num_states()
    }

    pub fn symbols(&self) -> usize {
        self.a.alphabet().len()
    }

    pub fn initial_pair(&self) -> (usize, usize) {
        (self.a.initial(), self.b.initial() + self.offset)
    }

    #[inline]
    pub fn step(&self, q: usize, s: usize) -> usize {
        if q < self.offset {
            self.a.step(q, s)
        } else {
            self.b.step(q - self.offset, s) + self.offset
        }
    }

    #[inline]
    pub fn is_final(&self, q: usize) -> bool {
        if q < self.offset {
            self.a.is_final(q)
        } else {
            self.b.is_final(q - self.offset)
        }
    }
}

/// Result of a full [`hk_run`]: the report plus the final partition over the
/// merged state space (`b`'s states shifted by `offset`).
#[derive(Debug, Clone)]
pub struct HkRun {
    pub report: EquivalenceReport,
    pub partition: Partition<usize>,
    pub offset: usize,
}

/// The original Hopcroft-Karp test: MAKE every state, merge from the initial
/// pair until the stack is empty, then check every set for homogeneity.
pub fn hk(a: &Dfa, b: &Dfa) -> EquivalenceReport {
    hk_with_observer(a, b, |_, _| {}).report
}

pub fn hk_run(a: &Dfa, b: &Dfa) -> HkRun {
    hk_with_observer(a, b, |_, _| {})
}

/// [`hk_run`], calling `observer` after every UNION with the partition and
/// the pair pushed right after it (merged ids).
pub fn hk_with_observer<F>(a: &Dfa, b: &Dfa, mut observer: F) -> HkRun
where
    F: FnMut(&Partition<usize>, (usize, usize)),
{
    let (a, b) = align_dfas(a, b);
    let m = Merged::new(&a, &b);
    let mut part = Partition::with_capacity(m.len());
    for q in 0..m.len() {
        part.make(q).expect("fresh ids");
    }
    let init = m.initial_pair();
    part.union(&init.0, &init.1, &init.1)
        .expect("initial states are distinct");
    let mut cs = CheckerState::new(init);
    observer(&part, init);

    while let Some((p, q)) = cs.pop() {
        for s in 0..m.symbols() {
            let (p1, q1) = (m.step(p, s), m.step(q, s));
            let rp = part.find_set(&p1, false).expect("made");
            let rq = part.find_set(&q1, false).expect("made");
            if rp != rq {
                part.union_sets(rp, rq, rq).expect("distinct sets");
                cs.push((p1, q1), &(p, q), s);
                observer(&part, (p1, q1));
            }
        }
    }

    let homogeneous = part
        .classes()
        .iter()
        .all(|c| c.iter().all(|&x| m.is_final(x) == m.is_final(c[0])));
    if !homogeneous {
        // Some pushed pair must disagree on finality; it carries the witness.
        let bad = *cs
            .pushed()
            .iter()
            .find(|(p, q)| m.is_final(*p) != m.is_final(*q))
            .expect("an inhomogeneous set implies an inhomogeneous pushed pair");
        cs.refute(bad);
    }
    let report = cs.report(|w| a.alphabet().decode(w));
    HkRun {
        report,
        partition: part,
        offset: m.offset,
    }
}

/// Hopcroft-Karp with early refutation: sets are created on first FIND and
/// the run stops at the first popped pair that disagrees on finality.
pub fn hki(a: &Dfa, b: &Dfa) -> EquivalenceReport {
    let (a, b) = align_dfas(a, b);
    let m = Merged::new(&a, &b);
    let mut part = Partition::new();
    let init = m.initial_pair();
    part.make(init.0).expect("fresh");
    part.make(init.1).expect("fresh");
    part.union(&init.0, &init.1, &init.1)
        .expect("initial states are distinct");
    let mut cs = CheckerState::new(init);

    while let Some((p, q)) = cs.pop() {
        if m.is_final(p) != m.is_final(q) {
            cs.refute((p, q));
            break;
        }
        for s in 0..m.symbols() {
            let (p1, q1) = (m.step(p, s), m.step(q, s));
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
