//! Free-group words, the word grammar, Baumslag-Solitar parameters and
//! finite presentations.

mod grammar;
mod word;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use grammar::{format_word, parse_word};
pub use word::{commutator_word, left_normed_commutator, Alphabet, FreeWord, Syllable, WordDisplay};

/// Generator index of the stable letter `t` (written `x` in the commutator form of the relator).
pub const T: usize = 0;
/// Generator index of `a` (written `y` there).
pub const A: usize = 1;

/// Largest accepted magnitude for `m` and `n`.
pub const MAX_PARAMETER: i64 = 1_000_000_000;

/// Normalized parameters of `BS(m, n) = <t, a | t^-1 a^m t = a^n>` with `0 < m <= |n|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BSParams {
    pub m: i64,
    pub n: i64,
    pub d: i64,
    pub m1: i64,
    pub n1: i64,
    pub delta: i64,
}

impl BSParams {
    /// Normalizes `(m, n)`, discarding the record of applied moves.
    pub fn new(m: i64, n: i64) -> Result<Self> {
        normalize_bs(m, n).map(|norm| norm.params)
    }

    pub fn is_unimodular(&self) -> bool {
        self.m == self.n.abs()
    }
}

impl std::fmt::Display for BSParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BS({},{})", self.m, self.n)
    }
}

/// An isomorphism `BS(m,n) -> BS(m',n')` used during normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoMove {
    /// `BS(m,n) = BS(n,m)`, via `t -> t^-1`.
    Swap,
    /// `BS(m,n) = BS(-m,-n)`, via `a -> a^-1`.
    FlipSigns,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub input: (i64, i64),
    pub moves: Vec<IsoMove>,
    pub params: BSParams,
}

pub fn normalize_bs(m: i64, n: i64) -> Result<Normalization> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroParameter { m, n });
    }
    for v in [m, n] {
        if v.checked_abs().is_none_or(|a| a > MAX_PARAMETER) {
            return Err(Error::ParameterTooLarge(v));
        }
    }
    let (mut m0, mut n0) = (m, n);
    let mut moves = Vec::new();
    if m0.abs() > n0.abs() {
        std::mem::swap(&mut m0, &mut n0);
        moves.push(IsoMove::Swap);
    }
    if m0 < 0 {
        m0 = -m0;
        n0 = -n0;
        moves.push(IsoMove::FlipSigns);
    }
    let d = m0.gcd(&n0);
    let params = BSParams { m: m0, n: n0, d, m1: m0 / d, n1: n0 / d, delta: n0 - m0 };
    Ok(Normalization { input: (m, n), moves, params })
}

/// The relator `y^(n-m) [x, y^m]` with `(x, y) = (t, a)`, freely reduced.
///
/// It equals `a^(n-m) t^-1 a^-m t a^m`, a conjugate-equivalent form of `t^-1 a^m t a^-n`.
pub fn bs_relator(p: &BSParams) -> FreeWord {
    FreeWord::from_syllables([(A, p.delta), (T, -1), (A, -p.m), (T, 1), (A, p.m)])
}

/// A finite presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    alphabet: Alphabet,
    relators: Vec<FreeWord>,
}

impl GroupPresentation {
    pub fn new(alphabet: Alphabet, relators: Vec<FreeWord>) -> Result<Self> {
        for r in &relators {
            r.check_generators(alphabet.len())?;
        }
        Ok(GroupPresentation { alphabet, relators })
    }

    /// The free group of the given rank, generators `x, y, z` or `x1, x2, ...`.
    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::TooSmall { what: "rank", min: 1, got: 0 });
        }
        let names: Vec<String> = if rank <= 3 {
            ["x", "y", "z"][..rank].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=rank).map(|i| format!("x{i}")).collect()
        };
        Self::new(Alphabet::new(names)?, Vec::new())
    }

    pub fn baumslag_solitar(p: &BSParams) -> Self {
        GroupPresentation { alphabet: Alphabet::baumslag_solitar(), relators: vec![bs_relator(p)] }
    }

    /// `Z * Z_m = <t, a | a^m>`.
    pub fn free_product_zzm(m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::ModulusTooSmall(m));
        }
        Ok(GroupPresentation {
            alphabet: Alphabet::baumslag_solitar(),
            relators: vec![FreeWord::power(A, m)],
        })
    }

    /// Parses a presentation file: a header line `gens: t a` followed by one
    /// relator per line. Blank lines and text after `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet = None;
        let mut relators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match &alphabet {
                None => {
                    let rest = line.strip_prefix("gens:").ok_or_else(|| {
                        Error::Presentation(format!("line {}: expected header \"gens: ...\"", lineno + 1))
                    })?;
                    alphabet = Some(Alphabet::new(rest.split_whitespace())?);
                }
                Some(alpha) => {
                    let word = parse_word(line, alpha).map_err(|e| {
                        Error::Presentation(format!("line {}: {e}", lineno + 1))
                    })?;
                    relators.push(word);
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Presentation("missing \"gens:\" header".into()))?;
        Self::new(alphabet, relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.alphabet.names().join(" "));
        for r in &self.relators {
            out.push_str(&format_word(r, &self.alphabet));
            out.push('\n');
        }
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }
}
