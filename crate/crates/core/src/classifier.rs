//! Residual-property criteria for `BS(m, n)` and the explicit generating
//! families of `gamma_omega(G)`, `N_omega` and `(Np)_omega`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::{commutator_word, Alphabet, BSParams, FreeWord, A, T};

pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2i64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

fn require_prime(p: i64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The prime `p` with `n = p^r`, `r >= 1`, if any.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Splits `n = q^r * rest` with `q` not dividing `rest`.
fn split_prime(n: i64, q: i64) -> (u32, i64) {
    let (mut r, mut rest) = (0, n);
    while rest % q == 0 {
        rest /= q;
        r += 1;
    }
    (r, rest)
}

pub fn is_residually_finite(p: &BSParams) -> bool {
    p.m == 1 || p.is_unimodular()
}

pub fn is_residually_nilpotent(p: &BSParams) -> bool {
    (p.m == 1 && p.n != 2) || (p.is_unimodular() && prime_power_base(p.m as u64).is_some())
}

pub fn is_residually_p(p: &BSParams, prime: i64) -> Result<bool> {
    require_prime(prime)?;
    let m1_clause = p.m == 1 && (p.n - 1).rem_euclid(prime) == 0;
    let equal_clause = p.n == p.m && prime_power_base(p.m as u64) == Some(prime as u64);
    let opposite_clause = p.n == -p.m && prime == 2 && prime_power_base(p.m as u64) == Some(2);
    Ok(m1_clause || equal_clause || opposite_clause)
}

/// All ordered pairs `(mu, nu)` of positive integers with `gcd = 1` and `mu * nu = d`,
/// sorted by `mu`.
pub fn coprime_factor_pairs(d: i64) -> Result<Vec<(i64, i64)>> {
    if d < 1 {
        return Err(Error::TooSmall { what: "d", min: 1, got: d });
    }
    let primes = factorize(d as u64);
    let mut pairs = Vec::with_capacity(1 << primes.len());
    for mask in 0u32..(1 << primes.len()) {
        let mu: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, (p, e))| p.pow(*e))
            .product();
        pairs.push((mu as i64, d / mu as i64));
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// Which way the conjugating power of `t` is applied in a template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `[t^-k a^mu t^k, a^nu]`
    NegativeFirst,
    /// `[t^k a^mu t^-k, a^nu]`
    PositiveFirst,
}

/// The family `{[t^-k a^mu t^k, a^nu] : k in Z}` (or the opposite orientation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Template {
    pub mu: i64,
    pub nu: i64,
    pub orientation: Orientation,
}

impl Template {
    pub fn new(mu: i64, nu: i64) -> Self {
        Template { mu, nu, orientation: Orientation::NegativeFirst }
    }

    pub fn positive_first(mu: i64, nu: i64) -> Self {
        Template { mu, nu, orientation: Orientation::PositiveFirst }
    }

    pub fn word(&self, k: i64) -> FreeWord {
        let conj = match self.orientation {
            Orientation::NegativeFirst => k,
            Orientation::PositiveFirst => -k,
        };
        let inner = FreeWord::from_syllables([(T, -conj), (A, self.mu), (T, conj)]);
        commutator_word(&inner, &FreeWord::power(A, self.nu))
    }

    pub fn describe(&self) -> String {
        let (mu, nu) = (a_power(self.mu), a_power(self.nu));
        match self.orientation {
            Orientation::NegativeFirst => format!("[t^-k {mu} t^k, {nu}]"),
            Orientation::PositiveFirst => format!("[t^k {mu} t^-k, {nu}]"),
        }
    }
}

fn a_power(e: i64) -> String {
    if e == 1 {
        "a".to_string()
    } else {
        format!("a^{e}")
    }
}

/// A finite description of a normal-closure generating set indexed by `k in Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorFamily {
    pub constant_words: Vec<FreeWord>,
    pub templates: Vec<Template>,
    pub extra_words: Vec<FreeWord>,
}

impl GeneratorFamily {
    pub fn is_empty(&self) -> bool {
        self.constant_words.is_empty() && self.templates.is_empty() && self.extra_words.is_empty()
    }

    /// Every generator with `|k| <= k_window`, labelled for reporting.
    pub fn instances(&self, k_window: u32) -> Vec<(String, FreeWord)> {
        let bs = Alphabet::baumslag_solitar();
        let mut out: Vec<(String, FreeWord)> = Vec::new();
        for w in self.constant_words.iter().chain(&self.extra_words) {
            out.push((w.display(&bs).to_string(), w.clone()));
        }
        let k_window = i64::from(k_window);
        for tpl in &self.templates {
            for k in -k_window..=k_window {
                out.push((format!("{} at k={k}", tpl.describe()), tpl.word(k)));
            }
        }
        out
    }
}

pub fn instantiate(family: &GeneratorFamily, k_window: u32) -> Vec<FreeWord> {
    family.instances(k_window).into_iter().map(|(_, w)| w).collect()
}

fn coprime_templates(d: i64) -> Vec<Template> {
    coprime_factor_pairs(d)
        .expect("d is positive")
        .into_iter()
        .map(|(mu, nu)| Template::new(mu, nu))
        .collect()
}

/// `true` when some prime divides `n1 - m1`, i.e. `|n1 - m1| != 1`.
pub fn has_congruence_prime(p: &BSParams) -> bool {
    (p.n1 - p.m1).abs() != 1
}

/// Which description of `gamma_omega(G)` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaOmegaCase {
    /// `d = 1`, `|n - m| = 1`: the normal closure of `a`.
    NormalClosureOfA,
    /// `d = 1`, `|n - m| != 1`: the commutators `[t^-k a t^k, a]`.
    CoprimeCommutators,
    /// `d >= 2`, `|n1 - m1| = 1`: `a^d` together with the coprime commutators.
    PowerAndCommutators,
    /// `d >= 2`, `|n1 - m1| != 1`: the coprime commutators only.
    CommutatorsOnly,
}

pub fn gamma_omega_case(p: &BSParams) -> GammaOmegaCase {
    match (p.d == 1, has_congruence_prime(p)) {
        (true, false) => GammaOmegaCase::NormalClosureOfA,
        (true, true) => GammaOmegaCase::CoprimeCommutators,
        (false, false) => GammaOmegaCase::PowerAndCommutators,
        (false, true) => GammaOmegaCase::CommutatorsOnly,
    }
}

pub fn gamma_omega_generators(p: &BSParams) -> GeneratorFamily {
    match gamma_omega_case(p) {
        GammaOmegaCase::NormalClosureOfA => GeneratorFamily {
            constant_words: vec![FreeWord::letter(A)],
            ..Default::default()
        },
        GammaOmegaCase::PowerAndCommutators => GeneratorFamily {
            constant_words: vec![FreeWord::power(A, p.d)],
            templates: coprime_templates(p.d),
            ..Default::default()
        },
        GammaOmegaCase::CoprimeCommutators | GammaOmegaCase::CommutatorsOnly => GeneratorFamily {
            templates: coprime_templates(p.d),
            ..Default::default()
        },
    }
}

pub fn n_omega_generators(p: &BSParams) -> GeneratorFamily {
    GeneratorFamily { templates: vec![Template::positive_first(p.d, 1)], ..Default::default() }
}

pub fn np_omega_generators(p: &BSParams, q: i64) -> Result<GeneratorFamily> {
    require_prime(q)?;
    let (r, m_rest) = split_prime(p.m, q);
    let (s, n_rest) = split_prime(p.n, q);
    if r != s || (m_rest - n_rest) % q != 0 {
        let xi = r.min(s);
        return Ok(GeneratorFamily {
            constant_words: vec![FreeWord::power(A, q.pow(xi))],
            ..Default::default()
        });
    }
    let d = m_rest.gcd(&n_rest);
    let (u, v) = (m_rest / d, n_rest / d);
    let qr = q.pow(r);
    Ok(GeneratorFamily {
        extra_words: vec![FreeWord::from_syllables([(T, -1), (A, qr * u), (T, 1), (A, -qr * v)])],
        templates: vec![Template::positive_first(qr, 1)],
        ..Default::default()
    })
}

pub fn zzm_gamma_omega_generators(m: i64) -> Result<GeneratorFamily> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    Ok(GeneratorFamily { templates: coprime_templates(m), ..Default::default() })
}

/// Which residual-finiteness / nilpotence clause describes the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualCase {
    /// `m = 1`, `n != 2`: residually nilpotent.
    SolvableResiduallyNilpotent,
    /// `BS(1, 2)`: residually finite, not residually nilpotent.
    SolvableNotResiduallyNilpotent,
    /// `|n| = m = p^r`: residually nilpotent.
    UnimodularPrimePower,
    /// `|n| = m` not a prime power: residually finite only.
    UnimodularComposite,
    /// `1 < m < |n|`: not residually finite.
    NotResiduallyFinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub params: BSParams,
    pub residually_finite: bool,
    pub residually_nilpotent: bool,
    pub residually_p: BTreeMap<i64, bool>,
    pub residual_case: ResidualCase,
    pub gamma_omega_case: GammaOmegaCase,
}

pub fn classify(p: &BSParams, primes: &[i64]) -> Result<ResidualReport> {
    let residual_case = if p.m == 1 {
        if p.n == 2 {
            ResidualCase::SolvableNotResiduallyNilpotent
        } else {
            ResidualCase::SolvableResiduallyNilpotent
        }
    } else if p.is_unimodular() {
        if prime_power_base(p.m as u64).is_some() {
            ResidualCase::UnimodularPrimePower
        } else {
            ResidualCase::UnimodularComposite
        }
    } else {
        ResidualCase::NotResiduallyFinite
    };
    let mut residually_p = BTreeMap::new();
    for &q in primes {
        residually_p.insert(q, is_residually_p(p, q)?);
    }
    Ok(ResidualReport {
        params: *p,
        residually_finite: is_residually_finite(p),
        residually_nilpotent: is_residually_nilpotent(p),
        residually_p,
        residual_case,
        gamma_omega_case: gamma_omega_case(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{format_word, parse_word};

    fn bs(m: i64, n: i64) -> BSParams {
        BSParams::new(m, n).unwrap()
    }

    fn pairs(f: &GeneratorFamily) -> Vec<(i64, i64)> {
        f.templates.iter().map(|t| (t.mu, t.nu)).collect()
    }

    #[test]
    fn residual_predicates() {
        assert!(is_residually_finite(&bs(1, 5)));
        assert!(is_residually_finite(&bs(2, -2)));
        assert!(!is_residually_finite(&bs(2, 3)));
        assert!(!is_residually_nilpotent(&bs(1, 2)));
        assert!(is_residually_nilpotent(&bs(4, 4)));
        assert!(!is_residually_nilpotent(&bs(6, 6)));
        assert!(is_residually_p(&bs(1, 4), 3).unwrap());
        assert!(is_residually_p(&bs(2, -2), 2).unwrap());
        assert!(!is_residually_p(&bs(2, 2), 3).unwrap());
        assert_eq!(is_residually_p(&bs(2, 2), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn coprime_pairs() {
        assert_eq!(coprime_factor_pairs(1).unwrap(), vec![(1, 1)]);
        assert_eq!(coprime_factor_pairs(12).unwrap(), vec![(1, 12), (3, 4), (4, 3), (12, 1)]);
        assert_eq!(coprime_factor_pairs(30).unwrap().len(), 8);
        assert!(coprime_factor_pairs(0).is_err());
    }

    #[test]
    fn gamma_omega_families() {
        let f = gamma_omega_generators(&bs(2, 3));
        assert_eq!(f.constant_words, vec![FreeWord::letter(A)]);
        assert!(f.templates.is_empty());
        let f = gamma_omega_generators(&bs(3, 5));
        assert!(f.constant_words.is_empty());
        assert_eq!(pairs(&f), vec![(1, 1)]);
        let f = gamma_omega_generators(&bs(6, 9));
        assert_eq!(f.constant_words, vec![FreeWord::power(A, 3)]);
        assert_eq!(pairs(&f), vec![(1, 3), (3, 1)]);
        assert_eq!(instantiate(&f, 1).len(), 7);
        for (m, n) in [(6, 10), (2, 2)] {
            let f = gamma_omega_generators(&bs(m, n));
            assert!(f.constant_words.is_empty());
            assert_eq!(pairs(&f), vec![(1, 2), (2, 1)]);
        }
    }

    #[test]
    fn moldavanskii_families() {
        let alpha = Alphabet::baumslag_solitar();
        let f = np_omega_generators(&bs(4, 6), 2).unwrap();
        assert_eq!(f.constant_words, vec![FreeWord::power(A, 2)]);
        let f = np_omega_generators(&bs(4, 6), 3).unwrap();
        assert_eq!(f.constant_words, vec![FreeWord::letter(A)]);
        let f = np_omega_generators(&bs(2, 2), 2).unwrap();
        assert_eq!(format_word(&f.extra_words[0], &alpha), "t^-1 a^2 t a^-2");
        assert_eq!(f.templates, vec![Template::positive_first(2, 1)]);
        let f = n_omega_generators(&bs(4, 6));
        assert_eq!(f.templates[0].word(1), parse_word("[t a^2 t^-1, a]", &alpha).unwrap());
        assert!(np_omega_generators(&bs(4, 6), 1).is_err());
    }

    #[test]
    fn zzm_families() {
        let f = zzm_gamma_omega_generators(6).unwrap();
        assert_eq!(pairs(&f), vec![(1, 6), (2, 3), (3, 2), (6, 1)]);
        assert_eq!(pairs(&zzm_gamma_omega_generators(4).unwrap()), vec![(1, 4), (4, 1)]);
        assert_eq!(pairs(&zzm_gamma_omega_generators(12).unwrap()), vec![(1, 12), (3, 4), (4, 3), (12, 1)]);
        assert!(zzm_gamma_omega_generators(1).is_err());
    }

    #[test]
    fn instantiation_edge_cases() {
        let f = GeneratorFamily { templates: vec![Template::new(1, 1)], ..Default::default() };
        let words = instantiate(&f, 0);
        assert_eq!(words.len(), 1);
        assert!(words[0].is_identity());
        assert!(instantiate(&GeneratorFamily::default(), 3).is_empty());
    }

    #[test]
    fn classify_reports_cases() {
        let r = classify(&bs(2, 3), &[2]).unwrap();
        assert!(!r.residually_finite && !r.residually_nilpotent);
        assert_eq!(r.gamma_omega_case, GammaOmegaCase::NormalClosureOfA);
        assert_eq!(r.residual_case, ResidualCase::NotResiduallyFinite);
        assert_eq!(classify(&bs(6, 6), &[]).unwrap().residual_case, ResidualCase::UnimodularComposite);
    }
}
