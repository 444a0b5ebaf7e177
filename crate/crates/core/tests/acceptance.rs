//! Acceptance suite: every criterion prints one pass/fail line with its
//! runtime, and the process exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solitar_core::classifier::{
    gamma_omega_generators, is_residually_finite, is_residually_nilpotent, is_residually_p,
};
use solitar_core::fixtures::{params, ACCEPTANCE, RESIDUALLY_NILPOTENT};
use solitar_core::free_lie::{
    bracket, hall_basis, lattice_index, lattice_index_by_determinant, psi_substitute, witt_rank, HallTree,
    LieElement,
};
use solitar_core::linalg::{AbelianInvariants, IntMatrix};
use solitar_core::nilpotent_quotient::nilpotent_quotient;
use solitar_core::presentations::{bs_relator, A, T};
use solitar_core::verifier::{
    verify_commutator_identities, verify_gamma_omega_vanishing, verify_grc_finiteness, verify_thm2_identity,
    verify_thm2_quotient_level, verify_trivial_when_res_nilpotent, Verdict, VerificationReport,
};
use solitar_core::word_engine::{britton_reduce, is_identity};
use solitar_core::{BSParams, FreeWord, GroupPresentation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn passed(report: &VerificationReport, p: &BSParams) -> std::result::Result<(), String> {
    ensure(report.verdict == Verdict::Pass, || {
        let first = report.failures().next().map(|i| format!(": {} gave {}", i.description, i.observed));
        format!("{} on {p} is {}{}", report.check, report.verdict, first.unwrap_or_default())
    })
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Counts aperiodic binary necklaces of length `c` by brute force: a word
/// counts when it is strictly smaller than all its proper rotations.
fn lyndon_count(c: u32) -> u64 {
    let mask = (1u64 << c) - 1;
    (0..1u64 << c)
        .filter(|&w| (1..c).all(|r| w < (((w << r) | (w >> (c - r))) & mask)))
        .count() as u64
}

fn witt_hall_agreement() -> Outcome {
    let start = Instant::now();
    let expected = [2u64, 1, 2, 3, 6, 9, 18, 30, 56, 99];
    for (i, &want) in expected.iter().enumerate() {
        let c = i as u32 + 1;
        let hall = hall_basis(c as usize).len() as u64;
        let witt = witt_rank(c);
        let necklaces = lyndon_count(c);
        ensure(hall == want && witt == BigInt::from(want) && necklaces == want, || {
            format!("degree {c}: hall {hall}, witt {witt}, necklaces {necklaces}, expected {want}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok("degrees 1..10 give 2,1,2,3,6,9,18,30,56,99".into())
}

fn free_group_quotient() -> Outcome {
    let start = Instant::now();
    let pc = nilpotent_quotient(&GroupPresentation::free(2).map_err(err)?, 6).map_err(err)?;
    let ranks: Vec<String> = pc.graded_quotients().iter().map(|g| g.to_string()).collect();
    for (i, g) in pc.graded_quotients().iter().enumerate() {
        let want = witt_rank(i as u32 + 1);
        ensure(g.torsion.is_empty() && BigInt::from(g.free_rank) == want, || {
            format!("gr_{} is {g}, expected free of rank {want}", i + 1)
        })?;
    }
    let failures = pc.consistency_failures();
    ensure(failures.is_empty(), || format!("inconsistent pc presentation: {}", failures[0]))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("gr = {}", ranks.join(", ")))
}

/// Abelianization straight from the exponent sums of the relator.
fn abelianization(p: &BSParams) -> AbelianInvariants {
    let r = bs_relator(p);
    let row = vec![r.exponent_sum(T), r.exponent_sum(A)];
    AbelianInvariants::from_relations(2, &IntMatrix::from_rows(2, vec![row]))
}

fn first_graded_quotient() -> Outcome {
    for p in params(&ACCEPTANCE) {
        let pc = nilpotent_quotient(&GroupPresentation::baumslag_solitar(&p), 2).map_err(err)?;
        let gr1 = &pc.graded_quotients()[0];
        let direct = match p.delta.abs() {
            0 => AbelianInvariants::free(2),
            1 => AbelianInvariants::free(1),
            k => AbelianInvariants { free_rank: 1, torsion: vec![BigInt::from(k)] },
        };
        let ab = abelianization(&p);
        ensure(*gr1 == direct && ab == direct, || format!("{p}: gr_1 = {gr1}, abelianization {ab}, expected {direct}"))?;
    }
    Ok(format!("{} fixtures", ACCEPTANCE.len()))
}

fn graded_finiteness() -> Outcome {
    let start = Instant::now();
    let finite = [(2, 2), (2, 4), (6, 10), (6, 9), (2, -2), (6, 12), (2, 3), (3, 5)];
    for p in params(&finite) {
        passed(&verify_grc_finiteness(&p, 5).map_err(err)?, &p)?;
    }
    let p = BSParams::new(2, 3).map_err(err)?;
    let pc = nilpotent_quotient(&GroupPresentation::baumslag_solitar(&p), 5).map_err(err)?;
    for (i, g) in pc.graded_quotients().iter().enumerate().skip(1) {
        ensure(g.is_trivial(), || format!("BS(2,3) gr_{} = {g}, expected trivial", i + 1))?;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} groups, classes 2..5; BS(2,3) trivial above weight 1", finite.len()))
}

fn necessity() -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    for p in params(&ACCEPTANCE) {
        let report = verify_gamma_omega_vanishing(&p, 5, 3).map_err(err)?;
        passed(&report, &p)?;
        instances += report.details.len();
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{instances} generator instances vanish at class 5"))
}

fn quotient_level_equality() -> Outcome {
    for p in params(&ACCEPTANCE) {
        passed(&verify_thm2_quotient_level(&p, 4, 3).map_err(err)?, &p)?;
    }
    Ok(format!("{} fixtures at class 4", ACCEPTANCE.len()))
}

fn proof_identities() -> Outcome {
    let mut checked = 0;
    for p in params(&[(2, 3), (6, 9), (2, 4), (6, 12)]) {
        let start = Instant::now();
        let report = verify_thm2_identity(&p);
        passed(&report, &p)?;
        within(start.elapsed(), Duration::from_secs(1))?;
        checked += report.details.len();
    }
    Ok(format!("{checked} identities by Britton reduction"))
}

fn residually_nilpotent_degeneracy() -> Outcome {
    let mut count = 0;
    for p in params(&RESIDUALLY_NILPOTENT) {
        ensure(is_residually_nilpotent(&p), || format!("{p} not classified residually nilpotent"))?;
        passed(&verify_trivial_when_res_nilpotent(&p, 3), &p)?;
        for (label, w) in gamma_omega_generators(&p).instances(3) {
            ensure(britton_reduce(&p, &w).is_identity(), || format!("{p}: {label} is nontrivial"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances reduce to 1"))
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> FreeWord {
    FreeWord::from_syllables((0..len).map(|_| {
        if rng.gen_bool(0.5) {
            (T, if rng.gen_bool(0.5) { 1 } else { -1 })
        } else {
            (A, rng.gen_range(-12..=12))
        }
    }))
}

/// A word with at least one `t` and no subword `t^-1 a^{km} t` or `t a^{kn} t^-1`.
fn pinch_free_word(rng: &mut ChaCha8Rng, p: &BSParams) -> FreeWord {
    let mut ts: Vec<i64> = vec![if rng.gen_bool(0.5) { 1 } else { -1 }];
    for _ in 1..rng.gen_range(1..=6) {
        let prev = *ts.last().expect("nonempty");
        let modulus = if prev < 0 { p.m } else { p.n.abs() };
        // with modulus 1 every a^r between opposite letters would pinch
        let e = if modulus == 1 || rng.gen_bool(0.5) { prev } else { -prev };
        ts.push(e);
    }
    let mut syllables = vec![(A, rng.gen_range(-20..=20))];
    for (i, &e) in ts.iter().enumerate() {
        syllables.push((T, e));
        let mut r = rng.gen_range(-20..=20);
        if let Some(&next) = ts.get(i + 1) {
            let modulus = if e < 0 { p.m } else { p.n.abs() };
            while next == -e && r % modulus == 0 {
                r = rng.gen_range(-20..=20);
            }
        }
        syllables.push((A, r));
    }
    FreeWord::from_syllables(syllables)
}

fn britton_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in params(&ACCEPTANCE) {
        let r = bs_relator(&p);
        for _ in 0..1000 {
            let (u, v, g) = (random_word(&mut rng, 8), random_word(&mut rng, 8), random_word(&mut rng, 4));
            let rel = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
            let w = u.concat(&v);
            let inserted = u.concat(&rel.conjugate(&g)).concat(&v);
            ensure(britton_reduce(&p, &w) == britton_reduce(&p, &inserted), || {
                format!("{p}: inserting a relator changed the normal form of {w:?}")
            })?;
        }
        for _ in 0..1000 {
            let w = pinch_free_word(&mut rng, &p);
            ensure(!is_identity(&p, &w), || format!("{p}: pinch-free {w:?} reduced to 1"))?;
        }
    }
    Ok(format!("2000 words on each of {} fixtures", ACCEPTANCE.len()))
}

fn random_lie(rng: &mut ChaCha8Rng) -> LieElement {
    let mut e = LieElement::zero();
    for _ in 0..3 {
        let basis = hall_basis(rng.gen_range(1..=3));
        let tree: HallTree = basis[rng.gen_range(0..basis.len())].clone();
        e.add_term(tree, BigInt::from(rng.gen_range(-4..=4)));
    }
    e
}

fn lie_ring_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..60 {
        let (u, v, w) = (random_lie(&mut rng), random_lie(&mut rng), random_lie(&mut rng));
        ensure(bracket(&u, &v) == bracket(&v, &u).neg(), || "antisymmetry fails".into())?;
        let jacobi = bracket(&bracket(&u, &v), &w).add(&bracket(&bracket(&v, &w), &u)).add(&bracket(&bracket(&w, &u), &v));
        ensure(jacobi.is_zero(), || "Jacobi identity fails".into())?;
        for kappa in [2, 3, 5] {
            let k = BigInt::from(kappa);
            let lhs = psi_substitute(&k, &bracket(&u, &v));
            let rhs = bracket(&psi_substitute(&k, &u), &psi_substitute(&k, &v));
            ensure(lhs == rhs, || format!("psi with kappa {kappa} is not multiplicative"))?;
        }
    }
    for c in 1..=8 {
        for kappa in [2, 3, 5] {
            let k = BigInt::from(kappa);
            let (formula, det) = (lattice_index(c, &k), lattice_index_by_determinant(c, &k));
            ensure(formula == det.abs(), || format!("degree {c}, kappa {kappa}: {formula} vs det {det}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok("60 random triples; indices agree for degrees 1..8".into())
}

fn classification_grid() -> Outcome {
    let mut groups = 0;
    for m in 1..=12i64 {
        for abs_n in m..=12 {
            for n in [abs_n, -abs_n] {
                let p = BSParams::new(m, n).map_err(err)?;
                groups += 1;
                let rn = is_residually_nilpotent(&p);
                ensure(!rn || is_residually_finite(&p), || format!("{p}: residually nilpotent but not finite"))?;
                for q in [2, 3, 5, 7] {
                    let rp = is_residually_p(&p, q).map_err(err)?;
                    ensure(!rp || rn, || format!("{p}: residually {q} but not residually nilpotent"))?;
                }
            }
        }
    }
    Ok(format!("{groups} groups, primes 2,3,5,7"))
}

fn commutator_calculus() -> Outcome {
    let report = verify_commutator_identities(200, 12).map_err(err)?;
    ensure(report.verdict == Verdict::Pass, || {
        report.failures().next().map(|i| i.description.clone()).unwrap_or_default()
    })?;
    Ok(format!("{} identity groups", report.details.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Hall basis sizes match Witt ranks", witt_hall_agreement),
        ("free rank-2 quotient has Witt-rank graded pieces", free_group_quotient),
        ("gr_1 matches the abelianization", first_graded_quotient),
        ("higher graded quotients are finite and bounded", graded_finiteness),
        ("gamma_omega generators vanish in nilpotent quotients", necessity),
        ("[A, G] = A in nilpotent quotients", quotient_level_equality),
        ("commutator identities from the proof hold in the group", proof_identities),
        ("residually nilpotent groups have trivial generators", residually_nilpotent_degeneracy),
        ("Britton normal forms are sound", britton_soundness),
        ("Lie ring laws and lattice indices", lie_ring_laws),
        ("residual property implications", classification_grid),
        ("commutator expansions and power congruences", commutator_calculus),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[{:>2}] PASS {name} ({detail}) in {elapsed:.2?}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{:>2}] FAIL {name}: {why} in {elapsed:.2?}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
