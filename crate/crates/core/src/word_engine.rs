//! The word problem in `BS(m, n)` via Britton's lemma, and in `Z * Z_m` via
//! free-product normal forms.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::{Alphabet, BSParams, FreeWord, A, T};

/// One `t^epsilon a^residue` block of a Britton normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailEntry {
    pub epsilon: i8,
    pub residue: BigInt,
}

/// `a^head t^e1 a^r1 ... t^ek a^rk` with `0 <= r < m` after `t^-1` and
/// `0 <= r < |n|` after `t`, and no pinch. Unique per group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrittonNormalForm {
    pub head: BigInt,
    pub tail: Vec<TailEntry>,
}

impl BrittonNormalForm {
    pub fn is_identity(&self) -> bool {
        self.head.is_zero() && self.tail.is_empty()
    }

    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn to_word(&self) -> FreeWord {
        let mut w = FreeWord::power(A, self.head.clone());
        for e in &self.tail {
            w.push(T, BigInt::from(e.epsilon));
            w.push(A, e.residue.clone());
        }
        w
    }

    /// Checks residue ranges and pinch-freeness, i.e. that no rewrite rule applies.
    pub fn is_reduced(&self, p: &BSParams) -> bool {
        let m = BigInt::from(p.m);
        let n = BigInt::from(p.n.abs());
        let ranges_ok = self.tail.iter().all(|e| {
            let bound = if e.epsilon < 0 { &m } else { &n };
            (e.epsilon == 1 || e.epsilon == -1) && !e.residue.is_negative() && &e.residue < bound
        });
        let pinch = self.tail.windows(2).any(|w| w[0].residue.is_zero() && w[0].epsilon == -w[1].epsilon);
        ranges_ok && !pinch
    }

    pub fn t_exponent_sum(&self) -> BigInt {
        self.tail.iter().map(|e| BigInt::from(e.epsilon)).sum()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> String {
        self.to_word().display(alphabet).to_string()
    }
}

/// Reduces `w` to its Britton normal form in `BS(m, n)`.
///
/// Letters are prepended right to left onto an already reduced suffix, so the
/// whole reduction is a single pass.
pub fn britton_reduce(p: &BSParams, w: &FreeWord) -> BrittonNormalForm {
    let m = BigInt::from(p.m);
    let n = BigInt::from(p.n);
    let n_abs = BigInt::from(p.n.abs());
    let mut head = BigInt::zero();
    let mut tail: VecDeque<TailEntry> = VecDeque::new();
    for s in w.syllables().iter().rev() {
        if s.generator != T {
            head += &s.exponent;
            continue;
        }
        let epsilon: i8 = if s.exponent.is_positive() { 1 } else { -1 };
        let mut count = s.exponent.abs();
        while !count.is_zero() {
            count -= 1u8;
            let (q, j) = if epsilon < 0 {
                // t^-1 a^z = a^(qn) t^-1 a^j with z = qm + j
                let (q, j) = head.div_mod_floor(&m);
                (&q * &n, j)
            } else {
                // t a^z = a^(qm) t a^j with z = qn + j
                let j = head.mod_floor(&n_abs);
                let q = (&head - &j) / &n;
                (&q * &m, j)
            };
            let pinch = j.is_zero() && tail.front().is_some_and(|f| f.epsilon == -epsilon);
            if pinch {
                let front = tail.pop_front().expect("pinch implies a front entry");
                head = q + front.residue;
            } else {
                head = q;
                tail.push_front(TailEntry { epsilon, residue: j });
            }
        }
    }
    BrittonNormalForm { head, tail: tail.into() }
}

pub fn is_identity(p: &BSParams, w: &FreeWord) -> bool {
    britton_reduce(p, w).is_identity()
}

pub fn words_equal(p: &BSParams, u: &FreeWord, v: &FreeWord) -> bool {
    britton_reduce(p, u) == britton_reduce(p, v)
}

pub fn t_exponent_sum(w: &FreeWord) -> BigInt {
    w.exponent_sum(T)
}

/// Normal form in `Z * Z_m = <t, a | a^m>`: alternating nonzero `t`-powers and
/// `a`-powers with residues in `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeProductNormalForm {
    pub word: FreeWord,
}

impl FreeProductNormalForm {
    pub fn is_identity(&self) -> bool {
        self.word.is_identity()
    }
}

pub fn free_product_reduce(m: i64, w: &FreeWord) -> Result<FreeProductNormalForm> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    let modulus = BigInt::from(m);
    let reduce = |g: usize, e: BigInt| if g == A { e.mod_floor(&modulus) } else { e };
    // Adjacent stack entries always carry distinct generators.
    let mut stack: Vec<(usize, BigInt)> = Vec::new();
    for s in w.syllables() {
        let g = s.generator;
        let mut e = s.exponent.clone();
        if stack.last().is_some_and(|(top, _)| *top == g) {
            let (_, prev) = stack.pop().expect("checked non-empty");
            e += prev;
        }
        let e = reduce(g, e);
        if !e.is_zero() {
            stack.push((g, e));
        }
    }
    let word = FreeWord::from_syllables(stack);
    debug_assert!(word.syllables().iter().all(|s| s.generator != A || (s.exponent >= BigInt::one() && s.exponent < modulus)));
    Ok(FreeProductNormalForm { word })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{bs_relator, format_word, parse_word};

    fn bs(m: i64, n: i64) -> BSParams {
        BSParams::new(m, n).unwrap()
    }

    fn word(s: &str) -> FreeWord {
        parse_word(s, &Alphabet::baumslag_solitar()).unwrap()
    }

    #[test]
    fn defining_relation_reduces() {
        let nf = britton_reduce(&bs(2, 3), &word("t^-1 a^2 t"));
        assert_eq!(nf.head, BigInt::from(3));
        assert!(nf.tail.is_empty());
        let nf = britton_reduce(&bs(2, -2), &word("t^-1 a^2 t"));
        assert_eq!(nf.head, BigInt::from(-2));
        assert!(nf.tail.is_empty());
    }

    #[test]
    fn commutator_examples() {
        let p = bs(2, 3);
        assert!(is_identity(&p, &word("[t^-1 a^2 t, a]")));
        let nf = britton_reduce(&p, &word("[t^-1 a t, a]"));
        assert_eq!(nf.t_length(), 4);
        assert!(nf.is_reduced(&p));
        assert!(!nf.is_identity());
        assert!(!is_identity(&p, &word("a")));
        assert!(is_identity(&bs(6, 9), &word("[a^6, t] * a^-3")));
    }

    #[test]
    fn relators_vanish() {
        for (m, n) in [(1, 3), (2, 2), (2, -2), (2, 3), (6, 9), (3, -5), (1, -1)] {
            let p = bs(m, n);
            assert!(is_identity(&p, &bs_relator(&p)), "BS({m},{n})");
            let a_n = FreeWord::power(A, p.n);
            let conj = word("t^-1").concat(&FreeWord::power(A, p.m)).concat(&word("t"));
            assert!(words_equal(&p, &a_n, &conj));
        }
        assert!(!words_equal(&bs(2, 3), &word("t"), &word("a")));
    }

    #[test]
    fn normal_form_round_trips_to_equal_element() {
        let p = bs(2, -3);
        let w = word("t a^5 t^-2 a^-7 t a t^3 a^2");
        let nf = britton_reduce(&p, &w);
        assert!(nf.is_reduced(&p));
        assert_eq!(britton_reduce(&p, &nf.to_word()), nf);
        assert_eq!(nf.t_exponent_sum(), t_exponent_sum(&w));
    }

    #[test]
    fn free_product_examples() {
        let bs = Alphabet::baumslag_solitar();
        assert_eq!(format_word(&free_product_reduce(2, &word("a^3")).unwrap().word, &bs), "a");
        assert_eq!(format_word(&free_product_reduce(2, &word("a^2 t a^4")).unwrap().word, &bs), "t");
        let nf = free_product_reduce(6, &word("[t^-1 a^2 t, a^3]")).unwrap();
        assert_eq!(format_word(&nf.word, &bs), "t^-1 a^4 t a^3 t^-1 a^2 t a^3");
        assert!(free_product_reduce(6, &word("t a^6 t^-1")).unwrap().is_identity());
        assert!(free_product_reduce(1, &word("a")).is_err());
    }
}
