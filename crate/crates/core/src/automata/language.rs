use super::{AutomatonError, Dfa, MacroState, Nfa};
use crate::alphabet::Alphabet;

/// Longest word length [`enumerate_language`] will explore.
pub const MAX_ENUMERATION_LENGTH: usize = 12;

/// Anything that decides membership of words over its alphabet.
pub trait Acceptor {
    fn alphabet(&self) -> &Alphabet;

    /// Membership for a word given as symbol indices.
    fn accepts_symbols(&self, word: &[usize]) -> bool;

    fn accepts(&self, word: &str) -> Result<bool, AutomatonError> {
        let w = self
            .alphabet()
            .encode(word)
            .map_err(AutomatonError::ForeignSymbol)?;
        Ok(self.accepts_symbols(&w))
    }
}

impl Acceptor for Dfa {
    fn alphabet(&self) -> &Alphabet {
        Dfa::alphabet(self)
    }

    fn accepts_symbols(&self, word: &[usize]) -> bool {
        self.is_final(self.run_from(self.initial(), word))
    }
}

impl Acceptor for Nfa {
    fn alphabet(&self) -> &Alphabet {
        Nfa::alphabet(self)
    }

    // Subset simulation; the powerset is never materialized.
    fn accepts_symbols(&self, word: &[usize]) -> bool {
        let mut cur: MacroState = self.initial_set();
        for &a in word {
            if cur.is_empty() {
                return false;
            }
            cur = self.step_set(&cur, a);
        }
        self.is_final_set(&cur)
    }
}

/// All accepted words of length at most `max_len`, in length-lexicographic
/// order (symbols ranked by alphabet position).
pub fn enumerate_language<A: Acceptor + ?Sized>(
    m: &A,
    max_len: usize,
) -> Result<Vec<String>, AutomatonError> {
    if max_len > MAX_ENUMERATION_LENGTH {
        return Err(AutomatonError::LimitExceeded(max_len));
    }
    let k = m.alphabet().len();
    let mut out = Vec::new();
    for len in 0..=max_len {
        let mut word = vec![0usize; len];
        loop {
            if m.accepts_symbols(&word) {
                out.push(m.alphabet().decode(&word));
            }
            // odometer increment, last position fastest
            let mut wrapped = true;
            for i in (0..len).rev() {
                word[i] += 1;
                if word[i] < k {
                    wrapped = false;
                    break;
                }
                word[i] = 0;
            }
            if wrapped {
                break;
            }
        }
    }
    Ok(out)
}
