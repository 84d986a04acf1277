use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("symbol {0:?} is not a lowercase ASCII letter")]
    InvalidSymbol(char),
    #[error("symbol {0:?} appears more than once")]
    Duplicate(char),
}

/// An ordered set of symbols drawn from `a..=z`.
///
/// Iteration follows the declared order, which is also the order in which
/// every checker explores successors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self, AlphabetError> {
        let mut out = Vec::new();
        for c in symbols {
            if !c.is_ascii_lowercase() {
                return Err(AlphabetError::InvalidSymbol(c));
            }
            if out.contains(&c) {
                return Err(AlphabetError::Duplicate(c));
            }
            out.push(c);
        }
        if out.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Alphabet { symbols: out })
    }

    /// Parses a compact spelling such as `"ab"`.
    pub fn parse(text: &str) -> Result<Self, AlphabetError> {
        Self::new(text.chars())
    }

    /// The first `k` letters `a, b, ...`; `k` is clamped to `1..=26`.
    pub fn first(k: usize) -> Self {
        let k = k.clamp(1, 26);
        Alphabet {
            symbols: (b'a'..b'a' + k as u8).map(char::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = char> + '_ {
        self.symbols.iter().copied()
    }

    /// Symbols of `self` followed by the symbols of `other` not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut symbols = self.symbols.clone();
        for c in other.iter() {
            if !symbols.contains(&c) {
                symbols.push(c);
            }
        }
        Alphabet { symbols }
    }

    /// Converts a word into symbol indices, reporting the first foreign symbol.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>, char> {
        word.chars().map(|c| self.index_of(c).ok_or(c)).collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i]).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert_eq!(Alphabet::parse(""), Err(AlphabetError::Empty));
        assert_eq!(Alphabet::parse("aba"), Err(AlphabetError::Duplicate('a')));
        assert_eq!(
            Alphabet::parse("aB"),
            Err(AlphabetError::InvalidSymbol('B'))
        );
    }

    #[test]
    fn keeps_declared_order() {
        let sigma = Alphabet::parse("ba").unwrap();
        assert_eq!(sigma.symbols(), &['b', 'a']);
        assert_eq!(sigma.index_of('a'), Some(1));
        assert_eq!(sigma.to_string(), "ba");
    }

    #[test]
    fn union_appends_new_symbols() {
        let a = Alphabet::parse("ba").unwrap();
        let b = Alphabet::parse("cab").unwrap();
        assert_eq!(a.union(&b).symbols(), &['b', 'a', 'c']);
    }

    #[test]
    fn encode_reports_foreign_symbol() {
        let sigma = Alphabet::first(2);
        assert_eq!(sigma.encode("abba"), Ok(vec![0, 1, 1, 0]));
        assert_eq!(sigma.encode("abc"), Err('c'));
        assert_eq!(sigma.decode(&[1, 0]), "ba");
    }
}
