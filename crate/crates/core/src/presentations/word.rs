use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One maximal block `g^e` of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

/// A freely reduced word in a free group, stored as syllables.
///
/// Adjacent syllables always carry distinct generators and no exponent is zero,
/// so two words are equal in the free group exactly when they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    syllables: Vec<Syllable>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn letter(generator: usize) -> Self {
        Self::power(generator, 1)
    }

    pub fn power(generator: usize, exponent: impl Into<BigInt>) -> Self {
        let mut w = FreeWord::identity();
        w.push(generator, exponent.into());
        w
    }

    pub fn from_syllables<I, E>(syllables: I) -> Self
    where
        I: IntoIterator<Item = (usize, E)>,
        E: Into<BigInt>,
    {
        let mut w = FreeWord::identity();
        for (g, e) in syllables {
            w.push(g, e.into());
        }
        w
    }

    /// Appends `g^e`, merging with the last syllable and cancelling as needed.
    pub fn push(&mut self, generator: usize, exponent: BigInt) {
        if exponent.is_zero() {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.generator == generator => {
                last.exponent += exponent;
                if last.exponent.is_zero() {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { generator, exponent }),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { generator: s.generator, exponent: -&s.exponent })
                .collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for s in &other.syllables {
            w.push(s.generator, s.exponent.clone());
        }
        w
    }

    /// `self^k`; negative `k` raises the inverse.
    pub fn pow(&self, k: i64) -> Self {
        if let [s] = self.syllables.as_slice() {
            return FreeWord::power(s.generator, &s.exponent * k);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `by^-1 · self · by`.
    pub fn conjugate(&self, by: &FreeWord) -> Self {
        by.inverse().concat(self).concat(by)
    }

    pub fn exponent_sum(&self, generator: usize) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| &s.exponent)
            .sum()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_length(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exponent.abs()).sum()
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    pub(crate) fn check_generators(&self, count: usize) -> Result<()> {
        match self.max_generator() {
            Some(index) if index >= count => Err(Error::UnknownGenerator { index, count }),
            _ => Ok(()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: &FreeWord) -> FreeWord {
        self.concat(rhs)
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: FreeWord) -> FreeWord {
        self.concat(&rhs)
    }
}

/// Commutator `[u, v] = u^-1 v^-1 u v`.
pub fn commutator_word(u: &FreeWord, v: &FreeWord) -> FreeWord {
    u.inverse().concat(&v.inverse()).concat(u).concat(v)
}

/// Left-normed commutator `[w1, w2, ..., wk] = [[w1, w2], ..., wk]`.
pub fn left_normed_commutator(words: &[FreeWord]) -> FreeWord {
    let mut iter = words.iter();
    let Some(first) = iter.next() else {
        return FreeWord::identity();
    };
    iter.fold(first.clone(), |acc, w| commutator_word(&acc, w))
}

/// Names of the generators of a free group, indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Presentation("at least one generator is required".into()));
        }
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Presentation(format!("invalid generator name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Presentation(format!("duplicate generator name {name:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// The alphabet `t, a` used for every Baumslag-Solitar word (`t` = 0, `a` = 1).
    pub fn baumslag_solitar() -> Self {
        Alphabet { names: vec!["t".into(), "a".into()] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub struct WordDisplay<'a> {
    word: &'a FreeWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.alphabet.names.get(s.generator).map(String::as_str).unwrap_or("?");
            if s.exponent == BigInt::from(1) {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}
