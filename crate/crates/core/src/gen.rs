//! Seeded random instances and the worst-case families.
//!
//! All generators draw from ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`]
//! and sample only through 32-bit ranges, so a seed yields the same instance
//! on every platform.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::automata::{Dfa, Nfa};
use crate::regex::{parse, Regex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("density {d} gives no transitions for k={k}, n={n}")]
    InfeasibleDensity { d: f64, k: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    /// State count.
    pub n: usize,
    /// Alphabet size, at most 26.
    pub k: usize,
    /// Transition density for NFAs: transitions over `k·n²`.
    pub d: f64,
    /// Node count for regular expressions.
    pub size: usize,
    pub seed: u64,
    /// Probability that a generated state is final.
    pub final_probability: f64,
    /// Number of initial states of generated NFAs.
    pub initials: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 5,
            k: 2,
            d: 0.1,
            size: 10,
            seed: 0,
            final_probability: 0.5,
            initials: 1,
        }
    }
}

impl GenParams {
    fn check(&self) -> Result<(), GenError> {
        if self.n == 0 || self.n > u32::MAX as usize {
            return Err(GenError::InvalidParams(format!("n = {}", self.n)));
        }
        if !(1..=26).contains(&self.k) {
            return Err(GenError::InvalidParams(format!("k = {} (1..=26)", self.k)));
        }
        if !(0.0..=1.0).contains(&self.final_probability) {
            return Err(GenError::InvalidParams(format!(
                "final probability {}",
                self.final_probability
            )));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenParams {
            seed,
            ..self.clone()
        }
    }
}

/// Seed of the `index`-th instance in a run seeded with `seed` (SplitMix64).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.gen_range(0..n as u32) as usize
}

/// Random complete DFA with `n` states, all reachable from state 0.
///
/// Tables and final bits are drawn uniformly and redrawn until the machine
/// is initially connected.
pub fn gen_icdfa(p: &GenParams) -> Result<Dfa, GenError> {
    p.check()?;
    let (n, k) = (p.n, p.k);
    let mut rng = p.rng();
    loop {
        let table: Vec<usize> = (0..n * k).map(|_| below(&mut rng, n)).collect();
        let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(p.final_probability)).collect();
        let d = Dfa::from_flat(Alphabet::first(k), table, 0, finals).expect("well formed");
        if d.reachable().len() == n {
            return Ok(d);
        }
    }
}

/// Random NFA with exactly `round(d·k·n²)` distinct transitions, sampled
/// without replacement. States `0..initials` are initial.
pub fn gen_nfa(p: &GenParams) -> Result<Nfa, GenError> {
    p.check()?;
    let (n, k) = (p.n, p.k);
    if !(p.d > 0.0 && p.d <= 1.0) {
        return Err(GenError::InvalidParams(format!("d = {} (0 < d <= 1)", p.d)));
    }
    if p.initials > n {
        return Err(GenError::InvalidParams(format!(
            "{} initial states, n = {n}",
            p.initials
        )));
    }
    let total = k * n * n;
    if total > u32::MAX as usize {
        return Err(GenError::InvalidParams(format!("k·n² = {total}")));
    }
    let count = transition_count(p.d, k, n);
    if count == 0 {
        return Err(GenError::InfeasibleDensity { d: p.d, k, n });
    }
    let mut rng = p.rng();
    let mut picked = index::sample(&mut rng, total, count).into_vec();
    picked.sort_unstable();
    let triples = picked
        .into_iter()
        .map(|t| (t / (k * n), (t / n) % k, t % n));
    let finals: Vec<usize> = (0..n)
        .filter(|_| rng.gen_bool(p.final_probability))
        .collect();
    Ok(Nfa::new(Alphabet::first(k), n, triples, 0..p.initials, finals).expect("ids in range"))
}

/// `round(d·k·n²)`, the transition count [`gen_nfa`] produces.
pub fn transition_count(d: f64, k: usize, n: usize) -> usize {
    (d * (k * n * n) as f64).round() as usize
}

/// Number of distinct ASTs with exactly `s` nodes, for `s` in `0..=size`.
fn tree_counts(size: usize, k: usize) -> Vec<f64> {
    let mut t = vec![0.0; size + 1];
    if size >= 1 {
        t[1] = (k + 2) as f64;
    }
    for s in 2..=size {
        let binary: f64 = (1..s - 1).map(|i| t[i] * t[s - 1 - i]).sum();
        t[s] = t[s - 1] + 2.0 * binary;
    }
    t
}

fn sample_tree(size: usize, t: &[f64], alphabet: &Alphabet, rng: &mut ChaCha8Rng) -> Regex {
    if size == 1 {
        return match below(rng, alphabet.len() + 2) {
            0 => Regex::empty(),
            1 => Regex::epsilon(),
            i => Regex::symbol(alphabet.symbol(i - 2)),
        };
    }
    let mut r = rng.gen::<f64>() * t[size];
    if r < t[size - 1] {
        return Regex::star(sample_tree(size - 1, t, alphabet, rng));
    }
    r -= t[size - 1];
    let mut last = (true, size - 2);
    for union in [true, false] {
        for i in 1..size - 1 {
            let w = t[i] * t[size - 1 - i];
            last = (union, i);
            if r < w {
                return build(union, i, size, t, alphabet, rng);
            }
            r -= w;
        }
    }
    // rounding left a sliver past the end
    build(last.0, last.1, size, t, alphabet, rng)
}

fn build(
    union: bool,
    left: usize,
    size: usize,
    t: &[f64],
    alphabet: &Alphabet,
    rng: &mut ChaCha8Rng,
) -> Regex {
    let l = sample_tree(left, t, alphabet, rng);
    let r = sample_tree(size - 1 - left, t, alphabet, rng);
    if union {
        Regex::union(l, r)
    } else {
        Regex::concat(l, r)
    }
}

/// Uniformly random expression tree with exactly `size` nodes over the first
/// `k` letters; leaves are `0`, `1` or a letter.
pub fn gen_regex(p: &GenParams) -> Result<Regex, GenError> {
    if !(1..=26).contains(&p.k) {
        return Err(GenError::InvalidParams(format!("k = {} (1..=26)", p.k)));
    }
    if p.size == 0 {
        return Err(GenError::InvalidParams("size = 0".into()));
    }
    let t = tree_counts(p.size, p.k);
    if !t[p.size].is_finite() {
        return Err(GenError::InvalidParams(format!(
            "size {} is too large",
            p.size
        )));
    }
    let mut rng = p.rng();
    Ok(sample_tree(p.size, &t, &Alphabet::first(p.k), &mut rng))
}

/// `(a+b)*a(a+b)^l` over `{a, b}`.
pub fn worst_case_regex(l: usize) -> Regex {
    let text = format!("(a+b)*a{}", "(a+b)".repeat(l));
    parse(&text, &Alphabet::first(2)).expect("well formed")
}

/// The `(n+1)`-state NFA over `{a, b}` with a looping start state `0`, an
/// `a`-edge to `1`, then `a,b`-edges `i → i+1` up to the final state `n`.
pub fn worst_case_nfa(n: usize) -> Result<Nfa, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("n = 0".into()));
    }
    let mut triples = vec![(0, 0, 0), (0, 1, 0), (0, 0, 1)];
    for i in 1..n {
        triples.extend([(i, 0, i + 1), (i, 1, i + 1)]);
    }
    Ok(Nfa::new(Alphabet::first(2), n + 1, triples, [0], [n]).expect("ids in range"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyVariant {
    Regex,
    Nfa,
}

#[derive(Debug, Clone)]
pub enum FamilyMember {
    Regex(Regex),
    Nfa(Nfa),
}

/// Member `l` of the worst-case family in the requested form.
pub fn worst_case_family(l: usize, variant: FamilyVariant) -> Result<FamilyMember, GenError> {
    Ok(match variant {
        FamilyVariant::Regex => FamilyMember::Regex(worst_case_regex(l)),
        FamilyVariant::Nfa => FamilyMember::Nfa(worst_case_nfa(l)?),
    })
}
