use super::{Regex, RegexError};
use crate::alphabet::Alphabet;

/// Parses the ASCII regex grammar.
///
/// `0` is the empty language, `1` the empty word, `a..=z` are symbols, `+` is
/// union (lowest precedence), juxtaposition is concatenation and postfix `*`
/// is star (highest). Whitespace is ignored. Binary operators associate to
/// the left. Positions in errors are character offsets into `text`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, RegexError> {
    let tokens: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        alphabet,
    };
    let r = p.union()?;
    if let Some((at, c)) = p.peek() {
        return Err(p.error(at, format!("unexpected {c:?}")));
    }
    Ok(r)
}

struct Parser<'a> {
    tokens: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.tokens.get(self.pos).copied()
    }

    fn error(&self, position: usize, message: String) -> RegexError {
        RegexError::Syntax { position, message }
    }

    fn union(&mut self) -> Result<Regex, RegexError> {
        let mut left = self.concat()?;
        while let Some((_, '+')) = self.peek() {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex, RegexError> {
        let mut left = self.starred()?;
        while let Some((_, c)) = self.peek() {
            if !starts_atom(c) {
                break;
            }
            let right = self.starred()?;
            left = Regex::concat(left, right);
        }
        Ok(left)
    }

    fn starred(&mut self) -> Result<Regex, RegexError> {
        let mut r = self.atom()?;
        while let Some((_, '*')) = self.peek() {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, RegexError> {
        let Some((at, c)) = self.peek() else {
            return Err(self.error(self.end, "unexpected end of input".into()));
        };
        self.pos += 1;
        match c {
            '0' => Ok(Regex::empty()),
            '1' => Ok(Regex::epsilon()),
            '(' => {
                let inner = self.union()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some((at, c)) => Err(self.error(at, format!("expected ')', found {c:?}"))),
                    None => Err(self.error(self.end, "expected ')'".into())),
                }
            }
            c if c.is_ascii_lowercase() => {
                if self.alphabet.contains(c) {
                    Ok(Regex::symbol(c))
                } else {
                    Err(RegexError::ForeignSymbolAt {
                        symbol: c,
                        position: at,
                    })
                }
            }
            c => Err(self.error(at, format!("unexpected {c:?}"))),
        }
    }
}

fn starts_atom(c: char) -> bool {
    c == '0' || c == '1' || c == '(' || c.is_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::Kind;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    #[test]
    fn zero_is_empty_language() {
        assert!(matches!(parse("0", &ab()).unwrap().kind(), Kind::Empty));
    }

    #[test]
    fn family_member_parses_left_associated() {
        let r = parse("(a+b)*a(a+b)", &ab()).unwrap();
        let u = Regex::union(Regex::symbol('a'), Regex::symbol('b'));
        let expected = Regex::concat(Regex::concat(Regex::star(u.clone()), Regex::symbol('a')), u);
        assert_eq!(r, expected);
    }

    #[test]
    fn nested_star_is_legal() {
        let r = parse("a**", &ab()).unwrap();
        assert_eq!(r, Regex::star(Regex::star(Regex::symbol('a'))));
    }

    #[test]
    fn whitespace_is_ignored() {
        let r = parse(" ( a + b ) * ", &ab()).unwrap();
        assert_eq!(r.to_string(), "(a+b)*");
    }

    #[test]
    fn print_parse_roundtrip_on_canonical_spelling() {
        for text in ["(a+b)*a(a+b)", "a**", "0", "1+ab*", "(ab)*+b(a+1)", "a+b+a"] {
            assert_eq!(parse(text, &ab()).unwrap().to_string(), text);
        }
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse("a+", &ab()),
            Err(RegexError::Syntax {
                position: 2,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse("(ab", &ab()),
            Err(RegexError::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse("a)b", &ab()),
            Err(RegexError::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            parse("", &ab()),
            Err(RegexError::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse("a#", &ab()),
            Err(RegexError::Syntax { position: 1, .. })
        ));
    }

    #[test]
    fn rejects_symbols_outside_alphabet() {
        assert_eq!(
            parse("a c", &ab()),
            Err(RegexError::ForeignSymbolAt {
                symbol: 'c',
                position: 2
            })
        );
    }
}
