//! Text syntax for words.
//!
//! ```text
//! word := "1" | term { ("*" | whitespace) term }
//! term := atom [ "^" signed-integer ]
//! atom := name | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! A bracket `[u,v]` expands to `u^-1 v^-1 u v`. Raising a bracket to a power
//! requires explicit parentheses: `([u,v])^3`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::word::{commutator_word, Alphabet, FreeWord};
use crate::error::ParseError;

/// Longest repetition we are willing to materialise for `(word)^k`.
const MAX_REPEAT: u64 = 1 << 20;

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<FreeWord, ParseError> {
    let mut parser = Parser { chars: text.chars().collect(), pos: 0, alphabet };
    let word = parser.word()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected {c:?}")));
    }
    Ok(word)
}

pub fn format_word(word: &FreeWord, alphabet: &Alphabet) -> String {
    word.display(alphabet).to_string()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            match self.peek() {
                Some(found) => Err(self.error(format!("expected {c:?}, found {found:?}"))),
                None => Err(self.error(format!("expected {c:?}, found end of input"))),
            }
        }
    }

    fn starts_term(c: char) -> bool {
        c == '(' || c == '[' || c == '_' || c.is_ascii_alphabetic()
    }

    fn word(&mut self) -> Result<FreeWord, ParseError> {
        self.skip_ws();
        if self.peek() == Some('1') {
            self.pos += 1;
            self.skip_ws();
            return match self.peek() {
                None | Some(')') | Some(',') | Some(']') => Ok(FreeWord::identity()),
                Some(c) => Err(self.error(format!("unexpected {c:?} after identity \"1\""))),
            };
        }
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let next = self.term()?;
                    acc = acc.concat(&next);
                }
                Some(c) if Self::starts_term(c) => {
                    let next = self.term()?;
                    acc = acc.concat(&next);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeWord, ParseError> {
        self.skip_ws();
        let (atom, is_bracket) = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        if is_bracket {
            return Err(self.error("an exponent on a commutator bracket needs parentheses, e.g. ([u,v])^2"));
        }
        self.pos += 1;
        let exponent = self.signed_integer()?;
        self.raise(atom, exponent)
    }

    fn raise(&self, atom: FreeWord, exponent: BigInt) -> Result<FreeWord, ParseError> {
        if let [s] = atom.syllables() {
            return Ok(FreeWord::power(s.generator, &s.exponent * exponent));
        }
        if atom.is_identity() {
            return Ok(atom);
        }
        match exponent.to_i64() {
            Some(k) if k.unsigned_abs() <= MAX_REPEAT => Ok(atom.pow(k)),
            _ => Err(self.error("exponent too large for a compound word")),
        }
    }

    fn atom(&mut self) -> Result<(FreeWord, bool), ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(')')?;
                Ok((inner, false))
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok((commutator_word(&u, &v), true))
            }
            Some(c) if c == '_' || c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c == '_' || c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.alphabet.index_of(&name) {
                    Some(g) => Ok((FreeWord::letter(g), false)),
                    None => Err(ParseError::new(start + 1, format!("unknown generator {name:?}"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected an integer exponent"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<BigInt>().map_err(|_| ParseError::new(start + 1, "malformed integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs() -> Alphabet {
        Alphabet::baumslag_solitar()
    }

    fn parse(s: &str) -> FreeWord {
        parse_word(s, &bs()).unwrap()
    }

    #[test]
    fn bracket_expands_with_left_inverse_convention() {
        assert_eq!(format_word(&parse("[a,t]"), &bs()), "a^-1 t^-1 a t");
    }

    #[test]
    fn free_cancellation() {
        assert!(parse("a^2 * a^-2").is_identity());
        assert!(parse("1").is_identity());
        assert!(parse("(1)").is_identity());
        assert!(parse("[1, a]").is_identity());
    }

    #[test]
    fn bracket_power_needs_parentheses() {
        let err = parse_word("[t^-1 a^2 t, a]^3", &bs()).unwrap_err();
        assert!(err.message.contains("parentheses"), "{err}");
        let cube = parse("([t^-1 a^2 t, a])^3");
        let once = parse("[t^-1 a^2 t, a]");
        assert_eq!(cube, once.concat(&once).concat(&once));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_word("t b", &bs()).unwrap_err();
        assert_eq!(err.column, 3);
        assert!(err.message.contains("unknown generator"));
        let err = parse_word("(t a", &bs()).unwrap_err();
        assert!(err.message.contains("')'"), "{err}");
        assert!(parse_word("t^", &bs()).is_err());
        assert!(parse_word("1 t", &bs()).is_err());
        assert!(parse_word("", &bs()).is_err());
        assert!(parse_word("t * * a", &bs()).is_err());
    }

    #[test]
    fn whitespace_and_star_are_interchangeable() {
        assert_eq!(parse("t*a^2*t^-1"), parse("t a^2 t^-1"));
        assert_eq!(parse("t ^ -3"), FreeWord::power(0, -3));
        assert_eq!(parse("(t a)^-2"), parse("a^-1 t^-1 a^-1 t^-1"));
    }

    #[test]
    fn formats_identity_and_exponents() {
        assert_eq!(format_word(&FreeWord::identity(), &bs()), "1");
        assert_eq!(format_word(&parse("t^3 a^-12 t"), &bs()), "t^3 a^-12 t");
    }
}
