//! Desk-scale checks of the structural results, each producing a report with
//! one line per tested instance.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::{
    coprime_factor_pairs, factorize, gamma_omega_generators, is_prime, is_residually_nilpotent, n_omega_generators,
    np_omega_generators, zzm_gamma_omega_generators,
};
use crate::error::{Error, Result};
use crate::free_lie::grc_order_bound;
use crate::nilpotent_quotient::{
    commutator_lattice, nilpotent_quotient, normal_closure_lattice, ExponentLattice, PcPresentation,
};
use crate::presentations::{commutator_word, BSParams, FreeWord, GroupPresentation, A, T};
use crate::word_engine::{free_product_reduce, is_identity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub description: String,
    pub observed: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub details: Vec<Instance>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(check: Check) -> Self {
        VerificationReport {
            check: check.name().to_string(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            details: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn with_group(self, p: &BSParams) -> Self {
        self.param("m", p.m).param("n", p.n)
    }

    fn record(&mut self, description: impl Into<String>, observed: impl Into<String>, expected: impl Into<String>, ok: bool) {
        self.details.push(Instance { description: description.into(), observed: observed.into(), expected: expected.into(), ok });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn not_applicable(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::NotApplicable;
        self.note(reason);
        self
    }

    /// Pass when every instance matched, fail otherwise.
    fn conclude(mut self) -> Self {
        self.verdict = if self.details.iter().all(|i| i.ok) { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.details.iter().filter(|i| !i.ok)
    }
}

/// Every check the verifier knows, by its command-line name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    GammaOmegaVanishing,
    TrivialWhenResNilpotent,
    Thm2Identity,
    Thm2QuotientLevel,
    CorollaryUser,
    LemmaKofinas,
    BoundsChain,
    SubgroupRelation,
    CommutatorIdentities,
    GrcFiniteness,
    ZzmVanishing,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::GammaOmegaVanishing,
        Check::TrivialWhenResNilpotent,
        Check::Thm2Identity,
        Check::Thm2QuotientLevel,
        Check::CorollaryUser,
        Check::LemmaKofinas,
        Check::BoundsChain,
        Check::SubgroupRelation,
        Check::CommutatorIdentities,
        Check::GrcFiniteness,
        Check::ZzmVanishing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::GammaOmegaVanishing => "gamma-omega-vanishing",
            Check::TrivialWhenResNilpotent => "trivial-when-res-nilpotent",
            Check::Thm2Identity => "thm2-identity",
            Check::Thm2QuotientLevel => "thm2-quotient-level",
            Check::CorollaryUser => "corollary-user",
            Check::LemmaKofinas => "lemma-kofinas",
            Check::BoundsChain => "bounds-chain",
            Check::SubgroupRelation => "subgroup-relation",
            Check::CommutatorIdentities => "commutator-identities",
            Check::GrcFiniteness => "grc-finiteness",
            Check::ZzmVanishing => "zzm-vanishing",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shared knobs for a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub class: usize,
    pub k_window: u32,
    pub exp_window: u32,
    pub primes: Vec<i64>,
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { class: 5, k_window: 3, exp_window: 2, primes: vec![2, 3], sample_size: 200, seed: 0x5eed }
    }
}

fn bs_quotient(p: &BSParams, class: usize) -> Result<PcPresentation> {
    nilpotent_quotient(&GroupPresentation::baumslag_solitar(p), class)
}

/// Lowest weight carrying a nonzero coordinate, for reporting.
fn lowest_weight(pc: &PcPresentation, exps: &[BigInt]) -> String {
    match exps.iter().zip(pc.weights()).find(|(e, _)| !e.is_zero()) {
        Some((_, w)) => format!("survives at weight {w}"),
        None => format!("trivial modulo gamma_{}", pc.class() + 1),
    }
}

/// Records, for each word, whether its image vanishes through the class.
fn record_vanishing(report: &mut VerificationReport, pc: &PcPresentation, words: &[(String, FreeWord)]) -> Result<()> {
    let col = pc.collector();
    let expected = format!("trivial modulo gamma_{}", pc.class() + 1);
    for (label, w) in words {
        let img = pc.image_with(&col, w)?;
        let ok = pc.vanishes_through(&img, pc.class());
        report.record(label.clone(), lowest_weight(pc, &img), expected.clone(), ok);
    }
    Ok(())
}

/// Every instantiated generator of the `gamma_omega` family lies in `gamma_{c+1}`.
pub fn verify_gamma_omega_vanishing(p: &BSParams, c_max: usize, k_window: u32) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new(Check::GammaOmegaVanishing).with_group(p).param("class", c_max).param("k_window", k_window);
    let pc = bs_quotient(p, c_max)?;
    record_vanishing(&mut report, &pc, &gamma_omega_generators(p).instances(k_window))?;
    Ok(report.conclude())
}

/// In a residually nilpotent group every instantiated generator is trivial.
pub fn verify_trivial_when_res_nilpotent(p: &BSParams, k_window: u32) -> VerificationReport {
    let report = VerificationReport::new(Check::TrivialWhenResNilpotent).with_group(p).param("k_window", k_window);
    if !is_residually_nilpotent(p) {
        return report.not_applicable("the group is not residually nilpotent");
    }
    let mut report = report;
    for (label, w) in gamma_omega_generators(p).instances(k_window) {
        let trivial = is_identity(p, &w);
        report.record(label, if trivial { "identity" } else { "nontrivial" }, "identity", trivial);
    }
    report.conclude()
}

/// `[a^m, t] = a^{-(m1 - n1) d}` when `|m1 - n1| = 1`, and for `d = 1` also
/// `[t, a^-m] = a^{-(m1 - n1)}`.
pub fn verify_thm2_identity(p: &BSParams) -> VerificationReport {
    let report = VerificationReport::new(Check::Thm2Identity).with_group(p);
    let s = p.m1 - p.n1;
    if s.abs() != 1 {
        return report.not_applicable(format!("|m1 - n1| = {} is not 1", s.abs()));
    }
    let mut report = report;
    let am = FreeWord::power(A, p.m);
    let t = FreeWord::letter(T);
    let mut identity = |lhs: FreeWord, rhs: FreeWord, label: String| {
        let ok = is_identity(p, &lhs.concat(&rhs.inverse()));
        report.record(label, if ok { "equal" } else { "different" }, "equal", ok);
    };
    identity(commutator_word(&am, &t), FreeWord::power(A, -s * p.d), format!("[a^{}, t] = a^{}", p.m, -s * p.d));
    if p.d == 1 {
        identity(
            commutator_word(&t, &FreeWord::power(A, -p.m)),
            FreeWord::power(A, -s),
            format!("[t, a^-{}] = a^{}", p.m, -s),
        );
    }
    report.conclude()
}

/// `[A, G] = A` for `A` the normal closure of the instantiated generators in
/// the class-`c_max` quotient, with a stability probe on the `k` window.
pub fn verify_thm2_quotient_level(p: &BSParams, c_max: usize, k_window: u32) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new(Check::Thm2QuotientLevel).with_group(p).param("class", c_max).param("k_window", k_window);
    let pc = bs_quotient(p, c_max)?;
    let family = gamma_omega_generators(p);
    let closure = |k: u32| -> Result<ExponentLattice> {
        let words: Vec<FreeWord> = family.instances(k).into_iter().map(|(_, w)| w).collect();
        normal_closure_lattice(&pc, &words)
    };
    let mut k = k_window;
    let mut lattice = closure(k)?;
    let mut stable = false;
    for _ in 0..2 {
        let wider = closure(k + 1)?;
        if wider == lattice {
            stable = true;
            break;
        }
        k += 1;
        lattice = wider;
    }
    if !stable {
        report.verdict = Verdict::Inconclusive;
        report.note(format!("the closure still grew after widening the k window to {}", k + 1));
        return Ok(report);
    }
    report.note(format!("closure stable from k window {k}"));
    report.note("the instantiated family is a finite sub-family; only its closure is compared");
    let bracket = commutator_lattice(&pc, &lattice, &pc.full_lattice())?;
    let rows = |l: &ExponentLattice| format!("{} basis rows", l.basis().rows());
    report.record("[A, G] = A in the quotient", rows(&bracket), rows(&lattice), bracket == lattice);
    Ok(report.conclude())
}

/// Both commutator families `[(t^-k a^d t^k)^x, a^y]` and `[(t^-k a t^k)^y, (a^d)^x]`
/// vanish in the class-`c_max` quotient.
pub fn verify_corollary_user(p: &BSParams, c_max: usize, k_window: u32, exp_window: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Check::CorollaryUser)
        .with_group(p)
        .param("class", c_max)
        .param("k_window", k_window)
        .param("exp_window", exp_window);
    let pc = bs_quotient(p, c_max)?;
    let (kw, ew) = (i64::from(k_window), i64::from(exp_window));
    let mut words = Vec::new();
    for k in -kw..=kw {
        let conj = |e: i64| FreeWord::from_syllables([(T, -k), (A, e), (T, k)]);
        for x in -ew..=ew {
            for y in -ew..=ew {
                words.push((
                    format!("[(t^-{k} a^{} t^{k})^{x}, a^{y}]", p.d),
                    commutator_word(&conj(p.d).pow(x), &FreeWord::power(A, y)),
                ));
                words.push((
                    format!("[(t^-{k} a t^{k})^{y}, (a^{})^{x}]", p.d),
                    commutator_word(&conj(1).pow(y), &FreeWord::power(A, p.d * x)),
                ));
            }
        }
    }
    record_vanishing(&mut report, &pc, &words)?;
    Ok(report.conclude())
}

/// `[t^-k a^mu t^k, a^nu]` vanishes for every coprime `mu nu = d`.
pub fn verify_lemma_kofinas(p: &BSParams, c_max: usize, k_window: u32) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new(Check::LemmaKofinas).with_group(p).param("class", c_max).param("k_window", k_window);
    let pc = bs_quotient(p, c_max)?;
    let kw = i64::from(k_window);
    let mut words = Vec::new();
    for (mu, nu) in coprime_factor_pairs(p.d)? {
        for k in -kw..=kw {
            let inner = FreeWord::from_syllables([(T, -k), (A, mu), (T, k)]);
            words.push((format!("[t^-{k} a^{mu} t^{k}, a^{nu}]"), commutator_word(&inner, &FreeWord::power(A, nu))));
        }
    }
    record_vanishing(&mut report, &pc, &words)?;
    Ok(report.conclude())
}

/// Closures of the `N_omega`, `gamma_omega` and `(Np)_omega` families are nested.
pub fn verify_bounds_chain(p: &BSParams, c_max: usize, k_window: u32, primes: &[i64]) -> Result<VerificationReport> {
    let primes_text = primes.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let mut report = VerificationReport::new(Check::BoundsChain)
        .with_group(p)
        .param("class", c_max)
        .param("k_window", k_window)
        .param("primes", primes_text);
    if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::NotPrime(q));
    }
    let pc = bs_quotient(p, c_max)?;
    let closure = |words: Vec<FreeWord>| normal_closure_lattice(&pc, &words);
    let words = |f: crate::classifier::GeneratorFamily| f.instances(k_window).into_iter().map(|(_, w)| w).collect();
    let n_omega = closure(words(n_omega_generators(p)))?;
    let gamma_omega = closure(words(gamma_omega_generators(p)))?;
    let size = |l: &ExponentLattice| format!("{} basis rows", l.basis().rows());
    let inner = n_omega.is_subset_of(&gamma_omega)?;
    report.record("N_omega <= gamma_omega", size(&n_omega), format!("contained in {}", size(&gamma_omega)), inner);
    for &q in primes {
        let np_omega = closure(words(np_omega_generators(p, q)?))?;
        let outer = gamma_omega.is_subset_of(&np_omega)?;
        report.record(
            format!("gamma_omega <= (N{q})_omega"),
            size(&gamma_omega),
            format!("contained in {}", size(&np_omega)),
            outer,
        );
    }
    Ok(report.conclude())
}

/// With `u = a^{q^mu}` for `q^mu || d`, `t^-1 u^{m/q^mu} t = u^{n/q^mu}`.
pub fn verify_subgroup_relation(p: &BSParams, q: i64) -> Result<VerificationReport> {
    let report = VerificationReport::new(Check::SubgroupRelation).with_group(p).param("prime", q);
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p.d % q != 0 {
        return Ok(report.not_applicable(format!("{q} does not divide d = {}", p.d)));
    }
    let mut report = report;
    let mut qmu = 1i64;
    while p.d % (qmu * q) == 0 {
        qmu *= q;
    }
    let (mj, nj) = (p.m / qmu, p.n / qmu);
    let lhs = FreeWord::from_syllables([(T, -1), (A, qmu * mj), (T, 1)]);
    let rhs = FreeWord::power(A, qmu * nj);
    let ok = is_identity(p, &lhs.concat(&rhs.inverse()));
    report.record(
        format!("u = a^{qmu}: t^-1 u^{mj} t = u^{nj}"),
        if ok { "equal" } else { "different" },
        "equal",
        ok,
    );
    report.note(format!("subgroup <u, t> presents BS({mj}, {nj})"));
    Ok(report.conclude())
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::from_syllables((0..len).map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

/// Commutator expansion identities in a free group of rank 3, and the power
/// congruences `[x^k, y] = [x, y^k] = [x, y]^k` modulo `[N, G]` in free
/// nilpotent quotients of rank 2.
pub fn verify_commutator_identities(sample_size: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Check::CommutatorIdentities).param("sample_size", sample_size).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = |u: &FreeWord, v: &FreeWord| commutator_word(u, v);
    let mut left_fail = 0;
    let mut right_fail = 0;
    for _ in 0..sample_size {
        let (a, b, cc) = (random_word(&mut rng, 3, 6), random_word(&mut rng, 3, 6), random_word(&mut rng, 3, 6));
        let ac = c(&a, &cc);
        let ab = c(&a, &b);
        if c(&a.concat(&b), &cc) != ac.concat(&c(&ac, &b)).concat(&c(&b, &cc)) {
            left_fail += 1;
        }
        if c(&a, &b.concat(&cc)) != ac.concat(&ab).concat(&c(&ab, &cc)) {
            right_fail += 1;
        }
    }
    let summary = |fails: usize| format!("{} of {sample_size} triples hold", sample_size - fails);
    report.record("[ab, c] = [a, c][[a, c], b][b, c]", summary(left_fail), summary(0), left_fail == 0);
    report.record("[a, bc] = [a, c][a, b][[a, b], c]", summary(right_fail), summary(0), right_fail == 0);

    // x in gamma_j and y a generator: [x, y] lies in N = gamma_{j+1}, so [N, G] = gamma_{j+2}.
    let class = 4;
    let pc = nilpotent_quotient(&GroupPresentation::free(2)?, class)?;
    let col = pc.collector();
    let (x, y) = (FreeWord::letter(0), FreeWord::letter(1));
    let xy = c(&x, &y);
    let pairs = [("x", x.clone(), "y", y.clone(), 1), ("y", y.clone(), "x", x.clone(), 1), ("[x,y]", xy.clone(), "x", x, 2), ("[x,y]", xy, "y", y, 2)];
    for (xn, xw, yn, yw, j) in pairs {
        let base = c(&xw, &yw);
        for k in 1..=5i64 {
            let targets = [
                (format!("[{xn}^{k}, {yn}]"), c(&xw.pow(k), &yw)),
                (format!("[{xn}, {yn}^{k}]"), c(&xw, &yw.pow(k))),
            ];
            for (label, w) in targets {
                let diff = w.concat(&base.pow(-k));
                let img = pc.image_with(&col, &diff)?;
                let ok = pc.vanishes_through(&img, j + 1);
                report.record(
                    format!("{label} = [{xn},{yn}]^{k} mod gamma_{}", j + 2),
                    lowest_weight(&pc, &img),
                    format!("trivial modulo gamma_{}", j + 2),
                    ok,
                );
            }
        }
    }
    Ok(report.conclude())
}

/// `gr_1 = Z + Z/|delta|` (or `Z^2`), and for `2 <= i <= c_max`, `gr_i` is
/// finite with order dividing the bound.
pub fn verify_grc_finiteness(p: &BSParams, c_max: usize) -> Result<VerificationReport> {
    if c_max < 2 {
        return Err(Error::TooSmall { what: "class", min: 2, got: c_max as i64 });
    }
    let mut report = VerificationReport::new(Check::GrcFiniteness).with_group(p).param("class", c_max);
    let pc = bs_quotient(p, c_max)?;
    let gr = pc.graded_quotients();
    let expected_gr1 = match p.delta.abs() {
        0 => "Z^2".to_string(),
        1 => "Z".to_string(),
        k => format!("Z + Z/{k}"),
    };
    report.record("gr_1", gr[0].to_string(), expected_gr1.clone(), gr[0].to_string() == expected_gr1);
    for (i, g) in gr.iter().enumerate().skip(1) {
        let c = i + 1;
        let bound = grc_order_bound(p, c)?;
        let ok = g.order().is_some_and(|o| !o.is_zero() && bound.is_multiple_of(&o));
        let observed = match g.order() {
            Some(o) => format!("{g} (order {o})"),
            None => format!("{g} (infinite)"),
        };
        report.record(format!("gr_{c}"), observed, format!("finite, order dividing {bound}"), ok);
    }
    Ok(report.conclude())
}

/// In `Z * Z_m`, every instantiated generator vanishes in the class-`c_max`
/// quotient; for composite non-prime-power `m` some generator is still a
/// nontrivial element, and for prime powers all of them are trivial words.
pub fn verify_zzm_vanishing(m: i64, c_max: usize, k_window: u32) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new(Check::ZzmVanishing).param("modulus", m).param("class", c_max).param("k_window", k_window);
    let family = zzm_gamma_omega_generators(m)?;
    let pc = nilpotent_quotient(&GroupPresentation::free_product_zzm(m)?, c_max)?;
    let instances = family.instances(k_window);
    record_vanishing(&mut report, &pc, &instances)?;
    let mut nontrivial = Vec::new();
    for (label, w) in &instances {
        if !free_product_reduce(m, w)?.is_identity() {
            nontrivial.push(label.clone());
        }
    }
    let distinct_primes = factorize(m as u64).len();
    if distinct_primes >= 2 {
        let observed = match nontrivial.first() {
            Some(label) => format!("{} nontrivial, e.g. {label}", nontrivial.len()),
            None => "all trivial".to_string(),
        };
        report.record("some generator is a nontrivial element", observed, "at least one nontrivial", !nontrivial.is_empty());
    } else {
        let observed = format!("{} nontrivial", nontrivial.len());
        report.record("prime-power modulus: all generators trivial", observed, "0 nontrivial", nontrivial.is_empty());
    }
    Ok(report.conclude())
}

/// Runs `check` for the group with the given configuration. Checks that need
/// an auxiliary prime use every prime in `config.primes`, and the free-product
/// check uses modulus `d`.
pub fn run_check(check: Check, p: &BSParams, config: &VerifyConfig) -> Result<VerificationReport> {
    let c = config.class;
    let k = config.k_window;
    match check {
        Check::GammaOmegaVanishing => verify_gamma_omega_vanishing(p, c, k),
        Check::TrivialWhenResNilpotent => Ok(verify_trivial_when_res_nilpotent(p, k)),
        Check::Thm2Identity => Ok(verify_thm2_identity(p)),
        Check::Thm2QuotientLevel => verify_thm2_quotient_level(p, c, k),
        Check::CorollaryUser => verify_corollary_user(p, c, k, config.exp_window),
        Check::LemmaKofinas => verify_lemma_kofinas(p, c, k),
        Check::BoundsChain => verify_bounds_chain(p, c, k, &config.primes),
        Check::SubgroupRelation => {
            let primes: Vec<i64> = factorize(p.d as u64).into_iter().map(|(q, _)| q as i64).collect();
            let mut report = VerificationReport::new(Check::SubgroupRelation).with_group(p);
            if primes.is_empty() {
                return Ok(report.not_applicable("d = 1 has no prime divisors"));
            }
            for q in primes {
                let sub = verify_subgroup_relation(p, q)?;
                report.details.extend(sub.details);
                report.notes.extend(sub.notes);
            }
            Ok(report.param("primes", "divisors of d").conclude())
        }
        Check::CommutatorIdentities => verify_commutator_identities(config.sample_size, config.seed),
        Check::GrcFiniteness => verify_grc_finiteness(p, c.max(2)),
        Check::ZzmVanishing => {
            if p.d < 2 {
                let report = VerificationReport::new(Check::ZzmVanishing).with_group(p);
                return Ok(report.not_applicable("d = 1 gives no free product Z * Z_d"));
            }
            verify_zzm_vanishing(p.d, c, k)
        }
    }
}

/// Runs every check; resource errors abort the whole run.
pub fn verify_all(p: &BSParams, config: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    Check::ALL.into_iter().map(|check| run_check(check, p, config)).collect()
}

/// Combined verdict: fail beats inconclusive beats pass; not-applicable is neutral.
pub fn overall_verdict(reports: &[VerificationReport]) -> Verdict {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else if reports.iter().all(|r| r.verdict == Verdict::NotApplicable) && !reports.is_empty() {
        Verdict::NotApplicable
    } else {
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(m: i64, n: i64) -> BSParams {
        BSParams::new(m, n).unwrap()
    }

    #[test]
    fn identity_checks() {
        assert_eq!(verify_thm2_identity(&bs(6, 9)).verdict, Verdict::Pass);
        let r = verify_thm2_identity(&bs(2, 3));
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details.len(), 2);
        assert_eq!(verify_thm2_identity(&bs(6, 10)).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn subgroup_relation() {
        assert_eq!(verify_subgroup_relation(&bs(6, 12), 2).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_subgroup_relation(&bs(6, 12), 3).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_subgroup_relation(&bs(2, 3), 5).unwrap().verdict, Verdict::NotApplicable);
        assert!(verify_subgroup_relation(&bs(2, 3), 4).is_err());
    }

    #[test]
    fn residually_nilpotent_degeneracy() {
        assert_eq!(verify_trivial_when_res_nilpotent(&bs(1, 3), 2).verdict, Verdict::Pass);
        assert_eq!(verify_trivial_when_res_nilpotent(&bs(2, 2), 2).verdict, Verdict::Pass);
        assert_eq!(verify_trivial_when_res_nilpotent(&bs(2, 3), 2).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn quotient_checks_pass_on_small_groups() {
        assert_eq!(verify_gamma_omega_vanishing(&bs(2, 3), 4, 2).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_grc_finiteness(&bs(2, 4), 4).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_thm2_quotient_level(&bs(2, 3), 3, 1).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_bounds_chain(&bs(2, 2), 3, 1, &[2]).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_zzm_vanishing(6, 3, 1).unwrap().verdict, Verdict::Pass);
        assert_eq!(verify_zzm_vanishing(4, 3, 1).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn commutator_identities_hold() {
        let r = verify_commutator_identities(50, 7).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::from_name(c.name()), Some(c));
        }
    }
}
