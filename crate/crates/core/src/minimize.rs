//! DFA minimization: Hopcroft partition refinement, Brzozowski's double
//! reversal, and isomorphism of minimal machines.

use std::collections::VecDeque;

use thiserror::Error;

use crate::automata::{determinize, reverse, trim, Dfa, Nfa};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimizeError {
    #[error("machine {0} is not minimal")]
    NotMinimal(usize),
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(String, String),
}

/// A partition of `0..n` into blocks.
///
/// Blocks are numbered by their smallest state and list states in increasing
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl StatePartition {
    /// Builds the partition from a block label per state.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut rename = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (q, l) in labels.iter().enumerate() {
            let b = *rename.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(q);
            block_of.push(b);
        }
        StatePartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, q: usize) -> usize {
        self.block_of[q]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn equivalent(&self, p: usize, q: usize) -> bool {
        self.block_of[p] == self.block_of[q]
    }
}

// Blocks stored as contiguous ranges of a permutation of the states; marked
// members of a block sit at the front of its range.
struct Refiner {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Refiner {
    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn mark(&mut self, q: usize, touched: &mut Vec<usize>) {
        let b = self.block_of[q];
        let i = self.loc[q];
        let front = self.start[b] + self.marked[b];
        if i < front {
            return;
        }
        let other = self.elems[front];
        self.elems.swap(i, front);
        self.loc[other] = i;
        self.loc[q] = front;
        if self.marked[b] == 0 {
            touched.push(b);
        }
        self.marked[b] += 1;
    }

    // Moves the marked front of `b` into a new block; returns its id.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = std::mem::take(&mut self.marked[b]);
        if m == self.size(b) {
            return None;
        }
        let nb = self.start.len();
        let s = self.start[b];
        self.start.push(s);
        self.end.push(s + m);
        self.marked.push(0);
        self.start[b] = s + m;
        for i in s..s + m {
            self.block_of[self.elems[i]] = nb;
        }
        Some(nb)
    }
}

/// The coarsest right-invariant partition of `d`'s states in which every
/// block is homogeneous (all final or all non-final).
///
/// Hopcroft's refinement with a FIFO queue of `(block, symbol)` splitters.
/// When a split block was not already queued for a symbol, the smaller half
/// is queued, the lower block id on a tie.
pub fn state_equivalence(d: &Dfa) -> StatePartition {
    let n = d.num_states();
    let k = d.alphabet().len();

    let mut inv: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for (a, pre) in inv.iter_mut().enumerate() {
            pre[d.step(q, a)].push(q);
        }
    }

    let mut elems: Vec<usize> = (0..n).filter(|&q| d.is_final(q)).collect();
    let nfinal = elems.len();
    elems.extend((0..n).filter(|&q| !d.is_final(q)));
    let mut loc = vec![0; n];
    for (i, &q) in elems.iter().enumerate() {
        loc[q] = i;
    }
    let mut r = Refiner {
        elems,
        loc,
        block_of: vec![0; n],
        start: Vec::new(),
        end: Vec::new(),
        marked: Vec::new(),
    };
    for (lo, hi) in [(0, nfinal), (nfinal, n)] {
        if lo < hi {
            let b = r.start.len();
            r.start.push(lo);
            r.end.push(hi);
            r.marked.push(0);
            for i in lo..hi {
                r.block_of[r.elems[i]] = b;
            }
        }
    }

    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut queued: Vec<Vec<bool>> = vec![vec![false; k]; r.start.len()];
    if r.start.len() == 2 {
        let b = if r.size(1) < r.size(0) { 1 } else { 0 };
        for a in 0..k {
            queue.push_back((b, a));
            queued[b][a] = true;
        }
    }

    let mut touched = Vec::new();
    while let Some((s, a)) = queue.pop_front() {
        queued[s][a] = false;
        let splitter: Vec<usize> = r.elems[r.start[s]..r.end[s]].to_vec();
        for &q in &splitter {
            for &p in &inv[a][q] {
                r.mark(p, &mut touched);
            }
        }
        for b in touched.drain(..) {
            let Some(nb) = r.split(b) else { continue };
            queued.push(vec![false; k]);
            for c in 0..k {
                // a pending (b, c) must now cover both halves; otherwise the smaller one
                let pick = if queued[b][c] || r.size(nb) < r.size(b) {
                    nb
                } else {
                    b
                };
                if !queued[pick][c] {
                    queued[pick][c] = true;
                    queue.push_back((pick, c));
                }
            }
        }
    }
    StatePartition::from_labels(&r.block_of)
}

/// Quotient of `d` by `p`, states numbered breadth first from the initial
/// block.
fn quotient(d: &Dfa, p: &StatePartition) -> Dfa {
    let k = d.alphabet().len();
    let mut id = vec![usize::MAX; p.len()];
    let start = p.block_of(d.initial());
    id[start] = 0;
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        let rep = p.blocks()[order[i]][0];
        for a in 0..k {
            let t = p.block_of(d.step(rep, a));
            if id[t] == usize::MAX {
                id[t] = order.len();
                order.push(t);
            }
        }
        i += 1;
    }
    let mut delta = Vec::with_capacity(order.len() * k);
    let mut finals = Vec::with_capacity(order.len());
    for &b in &order {
        let rep = p.blocks()[b][0];
        delta.extend((0..k).map(|a| id[p.block_of(d.step(rep, a))]));
        finals.push(d.is_final(rep));
    }
    Dfa::from_flat(d.alphabet().clone(), delta, 0, finals).expect("quotient is complete")
}

/// Minimal DFA for `L(d)`: trims unreachable states, then merges equivalent
/// ones. States are numbered breadth first from the initial state.
pub fn hopcroft_minimize(d: &Dfa) -> Dfa {
    let t = trim(d);
    quotient(&t, &state_equivalence(&t))
}

/// Minimal complete DFA for `L(n)` by determinizing the reversal twice.
pub fn brzozowski_minimize(n: &Nfa) -> Dfa {
    let once = determinize(&reverse(n));
    determinize(&reverse(&once.to_nfa()))
}

/// Whether two minimal DFAs are isomorphic, i.e. accept the same language.
///
/// Both inputs must be minimal, complete and accessible over the same
/// alphabet; a machine that shrinks under [`hopcroft_minimize`] is rejected.
pub fn minimal_isomorphic(a: &Dfa, b: &Dfa) -> Result<bool, MinimizeError> {
    if a.alphabet() != b.alphabet() {
        return Err(MinimizeError::AlphabetMismatch(
            a.alphabet().to_string(),
            b.alphabet().to_string(),
        ));
    }
    for (i, m) in [a, b].into_iter().enumerate() {
        if hopcroft_minimize(m).num_states() != m.num_states() {
            return Err(MinimizeError::NotMinimal(i));
        }
    }
    Ok(isomorphic_unchecked(a, b))
}

/// Lockstep BFS from the initial states; callers guarantee minimality.
pub(crate) fn isomorphic_unchecked(a: &Dfa, b: &Dfa) -> bool {
    if a.num_states() != b.num_states() || a.alphabet() != b.alphabet() {
        return false;
    }
    let n = a.num_states();
    let mut fwd = vec![usize::MAX; n];
    let mut bwd = vec![usize::MAX; n];
    fwd[a.initial()] = b.initial();
    bwd[b.initial()] = a.initial();
    let mut queue = VecDeque::from([(a.initial(), b.initial())]);
    while let Some((p, q)) = queue.pop_front() {
        if a.is_final(p) != b.is_final(q) {
            return false;
        }
        for s in 0..a.alphabet().len() {
            let (p1, q1) = (a.step(p, s), b.step(q, s));
            match (fwd[p1], bwd[q1]) {
                (usize::MAX, usize::MAX) => {
                    fwd[p1] = q1;
                    bwd[q1] = p1;
                    queue.push_back((p1, q1));
                }
                (x, y) if x == q1 && y == p1 => {}
                _ => return false,
            }
        }
    }
    true
}
