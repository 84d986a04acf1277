//! Reference implementations used as test oracles. Each one is written
//! independently of the library code it checks.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regeq::alphabet::Alphabet;
use regeq::automata::{Dfa, Nfa};
use regeq::regex::{Kind, Regex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All words over `sigma` of length at most `max_len`, length-lex order.
pub fn words(sigma: &Alphabet, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * sigma.len());
        for w in &layer {
            for c in sigma.iter() {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// ---- regex membership by span sets ----------------------------------------

// For each start position, the set of end positions matched by `r`.
fn spans(r: &Regex, w: &[char]) -> Vec<BTreeSet<usize>> {
    let n = w.len();
    match r.kind() {
        Kind::Empty => vec![BTreeSet::new(); n + 1],
        Kind::Epsilon => (0..=n).map(|i| BTreeSet::from([i])).collect(),
        Kind::Symbol(c) => (0..=n)
            .map(|i| {
                if i < n && w[i] == *c {
                    BTreeSet::from([i + 1])
                } else {
                    BTreeSet::new()
                }
            })
            .collect(),
        Kind::Union(x, y) => {
            let (a, b) = (spans(x, w), spans(y, w));
            a.into_iter().zip(b).map(|(s, t)| &s | &t).collect()
        }
        Kind::Concat(x, y) => {
            let (a, b) = (spans(x, w), spans(y, w));
            a.iter()
                .map(|mids| mids.iter().flat_map(|&m| b[m].iter().copied()).collect())
                .collect()
        }
        Kind::Star(x) => {
            let a = spans(x, w);
            (0..=n)
                .map(|i| {
                    let mut reach = BTreeSet::from([i]);
                    let mut todo = vec![i];
                    while let Some(m) = todo.pop() {
                        for &e in &a[m] {
                            if reach.insert(e) {
                                todo.push(e);
                            }
                        }
                    }
                    reach
                })
                .collect()
        }
    }
}

pub fn regex_matches(r: &Regex, w: &str) -> bool {
    let chars: Vec<char> = w.chars().collect();
    spans(r, &chars)[0].contains(&chars.len())
}

pub fn regex_language(r: &Regex, sigma: &Alphabet, max_len: usize) -> BTreeSet<String> {
    words(sigma, max_len)
        .into_iter()
        .filter(|w| regex_matches(r, w))
        .collect()
}

// ---- automata membership ----------------------------------------------------

pub fn dfa_accepts(d: &Dfa, w: &str) -> bool {
    let mut q = d.initial();
    for c in w.chars() {
        match d.alphabet().index_of(c) {
            Some(a) => q = d.step(q, a),
            None => return false,
        }
    }
    d.is_final(q)
}

pub fn nfa_accepts(n: &Nfa, w: &str) -> bool {
    let mut cur: BTreeSet<usize> = n.initials().iter().copied().collect();
    for c in w.chars() {
        let Some(a) = n.alphabet().index_of(c) else {
            return false;
        };
        cur = cur
            .iter()
            .flat_map(|&q| n.successors(q, a).iter().copied())
            .collect();
    }
    cur.iter().any(|&q| n.is_final(q))
}

// ---- minimization and equivalence ------------------------------------------

/// Table-filling: `labels[q]` is the smallest state equivalent to `q`.
pub fn table_filling(d: &Dfa) -> Vec<usize> {
    let n = d.num_states();
    let k = d.alphabet().len();
    let mut dist = vec![vec![false; n]; n];
    for p in 0..n {
        for q in 0..n {
            dist[p][q] = d.is_final(p) != d.is_final(q);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..n {
            for q in 0..n {
                if !dist[p][q] && (0..k).any(|a| dist[d.step(p, a)][d.step(q, a)]) {
                    dist[p][q] = true;
                    changed = true;
                }
            }
        }
    }
    (0..n)
        .map(|q| (0..n).find(|&p| !dist[p][q]).unwrap())
        .collect()
}

pub fn reachable(d: &Dfa) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([d.initial()]);
    let mut todo = vec![d.initial()];
    while let Some(q) = todo.pop() {
        for a in 0..d.alphabet().len() {
            let t = d.step(q, a);
            if seen.insert(t) {
                todo.push(t);
            }
        }
    }
    seen
}

/// Size of the minimal DFA: equivalence classes among reachable states.
pub fn minimal_size(d: &Dfa) -> usize {
    let labels = table_filling(d);
    reachable(d)
        .iter()
        .map(|&q| labels[q])
        .collect::<BTreeSet<_>>()
        .len()
}

/// Pairs reachable from the initial pair in the product of two DFAs over
/// the same alphabet.
pub fn product_reach(a: &Dfa, b: &Dfa) -> BTreeSet<(usize, usize)> {
    assert_eq!(a.alphabet(), b.alphabet());
    let start = (a.initial(), b.initial());
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        for s in 0..a.alphabet().len() {
            let next = (a.step(p, s), b.step(q, s));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

pub fn product_equivalent(a: &Dfa, b: &Dfa) -> bool {
    product_reach(a, b)
        .iter()
        .all(|&(p, q)| a.is_final(p) == b.is_final(q))
}

/// Language equivalence of two NFAs by exploring pairs of subsets.
pub fn nfa_equivalent(a: &Nfa, b: &Nfa) -> bool {
    assert_eq!(a.alphabet(), b.alphabet());
    type Set = BTreeSet<usize>;
    let step = |n: &Nfa, s: &Set, x: usize| -> Set {
        s.iter()
            .flat_map(|&q| n.successors(q, x).iter().copied())
            .collect()
    };
    let fin = |n: &Nfa, s: &Set| s.iter().any(|&q| n.is_final(q));
    let start: (Set, Set) = (
        a.initials().iter().copied().collect(),
        b.initials().iter().copied().collect(),
    );
    let mut seen: HashSet<(Set, Set)> = HashSet::from([start.clone()]);
    let mut todo = vec![start];
    while let Some((s, t)) = todo.pop() {
        if fin(a, &s) != fin(b, &t) {
            return false;
        }
        for x in 0..a.alphabet().len() {
            let next = (step(a, &s, x), step(b, &t, x));
            if seen.insert(next.clone()) {
                todo.push(next);
            }
        }
    }
    true
}

// ---- union-find -------------------------------------------------------------

/// Quadratic partition: every union relabels a whole class.
pub struct NaivePartition {
    label: Vec<usize>,
}

impl NaivePartition {
    pub fn new(n: usize) -> Self {
        NaivePartition {
            label: (0..n).collect(),
        }
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let (from, to) = (self.label[i], self.label[j]);
        for l in &mut self.label {
            if *l == from {
                *l = to;
            }
        }
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.label[i] == self.label[j]
    }

    pub fn classes(&self) -> usize {
        self.label.iter().collect::<BTreeSet<_>>().len()
    }
}

// ---- regex builders -----------------------------------------------------------

fn plus(a: Option<Regex>, b: Regex) -> Regex {
    match a {
        None => b,
        Some(a) => Regex::union(a, b),
    }
}

/// A regular expression for `L(d)` by state elimination.
pub fn state_elimination(d: &Dfa) -> Regex {
    let n = d.num_states();
    let (s, f) = (n, n + 1);
    let mut g: Vec<Vec<Option<Regex>>> = vec![vec![None; n + 2]; n + 2];
    for q in 0..n {
        for (a, c) in d.alphabet().iter().enumerate() {
            let t = d.step(q, a);
            g[q][t] = Some(plus(g[q][t].take(), Regex::symbol(c)));
        }
        if d.is_final(q) {
            g[q][f] = Some(Regex::epsilon());
        }
    }
    g[s][d.initial()] = Some(Regex::epsilon());
    for q in 0..n {
        let lp = g[q][q].take().map(Regex::star);
        let ins: Vec<usize> = (0..n + 2)
            .filter(|&i| i != q && g[i][q].is_some())
            .collect();
        let outs: Vec<usize> = (0..n + 2)
            .filter(|&j| j != q && g[q][j].is_some())
            .collect();
        for &i in &ins {
            for &j in &outs {
                let mut path = g[i][q].clone().unwrap();
                if let Some(l) = &lp {
                    path = Regex::concat(path, l.clone());
                }
                path = Regex::concat(path, g[q][j].clone().unwrap());
                g[i][j] = Some(plus(g[i][j].take(), path));
            }
        }
        for i in 0..n + 2 {
            g[i][q] = None;
            g[q][i] = None;
        }
    }
    g[s][f].take().unwrap_or_else(Regex::empty)
}

fn summands(r: &Regex, out: &mut Vec<Regex>) {
    match r.kind() {
        Kind::Union(x, y) => {
            summands(x, out);
            summands(y, out);
        }
        _ => out.push(r.clone()),
    }
}

/// Shuffles, regroups and duplicates summands of every union, recursively.
/// The result is equal to `r` modulo associativity, commutativity and
/// idempotence of `+`.
pub fn aci_scramble(r: &Regex, rng: &mut ChaCha8Rng) -> Regex {
    match r.kind() {
        Kind::Empty | Kind::Epsilon | Kind::Symbol(_) => r.clone(),
        Kind::Concat(x, y) => Regex::concat(aci_scramble(x, rng), aci_scramble(y, rng)),
        Kind::Star(x) => Regex::star(aci_scramble(x, rng)),
        Kind::Union(..) => {
            let mut parts = Vec::new();
            summands(r, &mut parts);
            let mut parts: Vec<Regex> = parts.iter().map(|p| aci_scramble(p, rng)).collect();
            if rng.gen_bool(0.5) {
                let dup = parts[rng.gen_range(0..parts.len())].clone();
                parts.push(dup);
            }
            parts.shuffle(rng);
            random_tree(parts, rng)
        }
    }
}

// Joins `parts` with unions under a random bracketing.
fn random_tree(mut parts: Vec<Regex>, rng: &mut ChaCha8Rng) -> Regex {
    while parts.len() > 1 {
        let i = rng.gen_range(0..parts.len() - 1);
        let r = parts.remove(i + 1);
        let l = parts.remove(i);
        parts.insert(i, Regex::union(l, r));
    }
    parts.pop().unwrap()
}

/// Applies language-preserving rewrites that change the syntax beyond ACI:
/// `x → x+0`, `x → 1x`, `x* → x**`, `x → x+x`.
pub fn language_preserving(r: &Regex, rng: &mut ChaCha8Rng) -> Regex {
    let inner = match r.kind() {
        Kind::Empty | Kind::Epsilon | Kind::Symbol(_) => r.clone(),
        Kind::Union(x, y) => Regex::union(language_preserving(x, rng), language_preserving(y, rng)),
        Kind::Concat(x, y) => {
            Regex::concat(language_preserving(x, rng), language_preserving(y, rng))
        }
        Kind::Star(x) => Regex::star(language_preserving(x, rng)),
    };
    match rng.gen_range(0..8) {
        0 => Regex::union(inner, Regex::empty()),
        1 => Regex::concat(Regex::epsilon(), inner),
        2 if matches!(inner.kind(), Kind::Star(_)) => Regex::star(inner),
        3 => Regex::union(inner.clone(), inner),
        _ => inner,
    }
}

// ---- random machines ----------------------------------------------------------

/// Uniform complete DFA; not necessarily connected.
pub fn random_dfa(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dfa {
    let table = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let finals = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(Alphabet::first(k), table, rng.gen_range(0..n), finals).unwrap()
}

/// Same machine with state ids permuted and the initial state moved along.
pub fn permute_dfa(d: &Dfa, rng: &mut ChaCha8Rng) -> Dfa {
    let n = d.num_states();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut table = vec![Vec::new(); n];
    let mut finals = vec![false; n];
    for q in 0..n {
        table[perm[q]] = (0..d.alphabet().len())
            .map(|a| perm[d.step(q, a)])
            .collect();
        finals[perm[q]] = d.is_final(q);
    }
    Dfa::new(d.alphabet().clone(), table, perm[d.initial()], finals).unwrap()
}

/// Copy of `d` with the finality of one reachable state flipped.
pub fn flip_reachable_final(d: &Dfa, rng: &mut ChaCha8Rng) -> Dfa {
    let r: Vec<usize> = reachable(d).into_iter().collect();
    let q = r[rng.gen_range(0..r.len())];
    let mut finals = d.final_flags().to_vec();
    finals[q] = !finals[q];
    let table = (0..d.num_states())
        .map(|p| (0..d.alphabet().len()).map(|a| d.step(p, a)).collect())
        .collect();
    Dfa::new(d.alphabet().clone(), table, d.initial(), finals).unwrap()
}
