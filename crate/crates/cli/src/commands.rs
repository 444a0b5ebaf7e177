use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use num_bigint::BigInt;
use serde_json::{json, Value};

use solitar_core::classifier::{
    classify as classify_group, gamma_omega_generators, n_omega_generators, np_omega_generators, GammaOmegaCase,
    GeneratorFamily, ResidualCase,
};
use solitar_core::free_lie::{grc_order_bound, hall_basis, lattice_index, lattice_index_by_determinant, witt_rank};
use solitar_core::nilpotent_quotient::{nilpotent_quotient_with_budget, Budget, PcPresentation};
use solitar_core::presentations::{format_word, normalize_bs, parse_word, Alphabet, Normalization};
use solitar_core::verifier::{overall_verdict, run_check, verify_all, Check, Verdict, VerificationReport, VerifyConfig};
use solitar_core::word_engine::britton_reduce;
use solitar_core::{BSParams, GroupPresentation};

use crate::{GeneratorSet, LieQuery, Output, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

pub(crate) fn parse_check(name: &str) -> Result<Check, String> {
    Check::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check {name:?}; expected one of {}", names.join(", "))
    })
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub(crate) fn big(v: &BigInt) -> Value {
    i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::String(v.to_string()))
}

fn bigs(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(big).collect())
}

fn normalize(m: i64, n: i64) -> anyhow::Result<Normalization> {
    normalize_bs(m, n).with_context(|| format!("cannot use BS({m}, {n})"))
}

fn group_params(norm: &Normalization) -> Value {
    let p = &norm.params;
    json!({
        "input": {"m": norm.input.0, "n": norm.input.1},
        "m": p.m, "n": p.n, "d": p.d, "m1": p.m1, "n1": p.n1, "delta": p.delta,
        "moves": norm.moves,
    })
}

fn group_header(norm: &Normalization) -> String {
    let p = norm.params;
    if norm.moves.is_empty() {
        format!("{p}\n")
    } else {
        format!("{p} (normalized from BS({},{}))\n", norm.input.0, norm.input.1)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn residual_case_text(c: ResidualCase) -> &'static str {
    match c {
        ResidualCase::SolvableResiduallyNilpotent => "m = 1, n != 2: residually nilpotent",
        ResidualCase::SolvableNotResiduallyNilpotent => "BS(1,2): residually finite, not residually nilpotent",
        ResidualCase::UnimodularPrimePower => "|n| = m a prime power: residually nilpotent",
        ResidualCase::UnimodularComposite => "|n| = m not a prime power: residually finite only",
        ResidualCase::NotResiduallyFinite => "1 < m < |n|: not residually finite",
    }
}

fn gamma_case_text(c: GammaOmegaCase) -> &'static str {
    match c {
        GammaOmegaCase::NormalClosureOfA => "normal closure of a",
        GammaOmegaCase::CoprimeCommutators => "normal closure of [t^-k a t^k, a]",
        GammaOmegaCase::PowerAndCommutators => "normal closure of a^d and [t^-k a^mu t^k, a^nu], mu nu = d coprime",
        GammaOmegaCase::CommutatorsOnly => "normal closure of [t^-k a^mu t^k, a^nu], mu nu = d coprime",
    }
}

pub(crate) fn classify(m: i64, n: i64, primes: &[i64]) -> anyhow::Result<Output> {
    let norm = normalize(m, n)?;
    let report = classify_group(&norm.params, primes)?;
    let mut text = group_header(&norm);
    writeln!(text, "residually finite:    {}", yes_no(report.residually_finite))?;
    writeln!(text, "residually nilpotent: {}", yes_no(report.residually_nilpotent))?;
    for (q, v) in &report.residually_p {
        writeln!(text, "residually {q}-finite: {}", yes_no(*v))?;
    }
    writeln!(text, "case: {}", residual_case_text(report.residual_case))?;
    writeln!(text, "gamma_omega: {}", gamma_case_text(report.gamma_omega_case))?;
    Ok(Output {
        params: json!({"group": group_params(&norm), "primes": primes}),
        result: serde_json::to_value(&report)?,
        text,
        code: EXIT_OK,
    })
}

fn family_json(family: &GeneratorFamily, bs: &Alphabet) -> Value {
    let words = |ws: &[solitar_core::FreeWord]| ws.iter().map(|w| format_word(w, bs)).collect::<Vec<_>>();
    json!({
        "constant_words": words(&family.constant_words),
        "extra_words": words(&family.extra_words),
        "templates": family.templates.iter().map(|t| json!({
            "mu": t.mu, "nu": t.nu, "orientation": t.orientation, "description": t.describe(),
        })).collect::<Vec<_>>(),
    })
}

pub(crate) fn generators(
    m: i64,
    n: i64,
    set: GeneratorSet,
    prime: Option<i64>,
    k_window: u32,
    instances: bool,
) -> anyhow::Result<Output> {
    let norm = normalize(m, n)?;
    let p = &norm.params;
    let (name, family) = match set {
        GeneratorSet::GammaOmega => ("gamma-omega", gamma_omega_generators(p)),
        GeneratorSet::NOmega => ("n-omega", n_omega_generators(p)),
        GeneratorSet::NpOmega => {
            let Some(q) = prime else { bail!("--set np-omega needs --prime") };
            ("np-omega", np_omega_generators(p, q)?)
        }
    };
    let bs = Alphabet::baumslag_solitar();
    let mut result = family_json(&family, &bs);
    let mut text = group_header(&norm);
    writeln!(text, "{name} is the normal closure of:")?;
    for w in family.constant_words.iter().chain(&family.extra_words) {
        writeln!(text, "  {}", format_word(w, &bs))?;
    }
    for t in &family.templates {
        writeln!(text, "  {}  for all k", t.describe())?;
    }
    if instances {
        let listed = family.instances(k_window);
        writeln!(text, "instances with |k| <= {k_window}:")?;
        for (label, w) in &listed {
            writeln!(text, "  {label}: {}", format_word(w, &bs))?;
        }
        result["instances"] = listed
            .iter()
            .map(|(label, w)| json!({"label": label, "word": format_word(w, &bs)}))
            .collect();
    }
    Ok(Output {
        params: json!({"group": group_params(&norm), "set": name, "prime": prime, "k_window": k_window}),
        result,
        text,
        code: EXIT_OK,
    })
}

pub(crate) fn reduce(m: i64, n: i64, word: &str) -> anyhow::Result<Output> {
    let norm = normalize(m, n)?;
    let bs = Alphabet::baumslag_solitar();
    let w = parse_word(word, &bs).with_context(|| format!("malformed word {word:?}"))?;
    let nf = britton_reduce(&norm.params, &w);
    let normal_form = nf.display(&bs);
    Ok(Output {
        params: json!({"group": group_params(&norm), "word": word}),
        result: json!({
            "input": format_word(&w, &bs),
            "normal_form": normal_form,
            "is_identity": nf.is_identity(),
            "t_sum": big(&nf.t_exponent_sum()),
        }),
        text: format!("{normal_form}\n"),
        code: EXIT_OK,
    })
}

fn nq_json(pc: &PcPresentation) -> Value {
    let weights = pc.weights();
    let graded: Vec<Value> = pc
        .graded_quotients()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "weight": i + 1,
                "invariants": g.to_string(),
                "free_rank": g.free_rank,
                "torsion": bigs(&g.torsion),
            })
        })
        .collect();
    let generators: Vec<Value> = (0..pc.len())
        .map(|i| json!({"label": pc.labels()[i], "weight": weights[i], "relative_order": big(&pc.relative_orders()[i])}))
        .collect();
    let epimorphism: Vec<Value> = pc
        .generator_names()
        .iter()
        .zip(pc.epimorphism())
        .map(|(name, img)| json!({"generator": name, "image": bigs(img)}))
        .collect();
    json!({
        "class": pc.class(),
        "pc_generators": generators,
        "graded_quotients": graded,
        "epimorphism": epimorphism,
        "consistent": pc.consistency_failures().is_empty(),
    })
}

fn nq_text(pc: &PcPresentation) -> anyhow::Result<String> {
    let mut text = String::new();
    writeln!(text, "class {} quotient with {} pc generators", pc.class(), pc.len())?;
    for (i, g) in pc.graded_quotients().iter().enumerate() {
        writeln!(text, "  gr_{} = {g}", i + 1)?;
    }
    let show = |e: &BigInt| if e == &BigInt::from(0) { "inf".to_string() } else { e.to_string() };
    writeln!(text, "pc generators (weight, relative order):")?;
    for i in 0..pc.len() {
        writeln!(text, "  b{i} = {}  ({}, {})", pc.labels()[i], pc.weights()[i], show(&pc.relative_orders()[i]))?;
    }
    writeln!(text, "epimorphism:")?;
    for (name, img) in pc.generator_names().iter().zip(pc.epimorphism()) {
        let img: Vec<String> = img.iter().map(BigInt::to_string).collect();
        writeln!(text, "  {name} -> ({})", img.join(", "))?;
    }
    let failures = pc.consistency_failures();
    if !failures.is_empty() {
        writeln!(text, "inconsistent: {}", failures.join("; "))?;
    }
    Ok(text)
}

pub(crate) fn nq(
    group: Option<(i64, i64)>,
    presentation: Option<&Path>,
    class: usize,
    max_generators: Option<usize>,
    max_bits: Option<u64>,
) -> anyhow::Result<Output> {
    let mut budget = Budget::default();
    if let Some(g) = max_generators {
        budget.max_generators = g;
    }
    if let Some(b) = max_bits {
        budget.max_bits = b;
    }
    let (pres, mut params, header) = match (group, presentation) {
        (Some((m, n)), _) => {
            let norm = normalize(m, n)?;
            let header = group_header(&norm);
            (GroupPresentation::baumslag_solitar(&norm.params), json!({"group": group_params(&norm)}), header)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let pres = GroupPresentation::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
            let header = format!("presentation {}\n", path.display());
            (pres, json!({"presentation": path.display().to_string()}), header)
        }
        (None, None) => bail!("give -m and -n or --presentation"),
    };
    params["class"] = json!(class);
    params["budget"] = json!({"max_generators": budget.max_generators, "max_bits": budget.max_bits});
    let pc = nilpotent_quotient_with_budget(&pres, class, budget)?;
    let code = if pc.consistency_failures().is_empty() { EXIT_OK } else { EXIT_FAIL };
    Ok(Output { params, result: nq_json(&pc), text: header + &nq_text(&pc)?, code })
}

pub(crate) fn lie(query: &LieQuery) -> anyhow::Result<Output> {
    if let Some(c) = query.basis {
        let trees: Vec<String> = hall_basis(c).iter().map(ToString::to_string).collect();
        let text = trees.iter().map(|t| format!("{t}\n")).collect();
        return Ok(Output { params: json!({"basis": c}), result: json!(trees), text, code: EXIT_OK });
    }
    if let Some(c) = query.witt {
        if c == 0 {
            bail!("degree must be positive");
        }
        let r = witt_rank(c);
        return Ok(Output { params: json!({"witt": c}), result: big(&r), text: format!("{r}\n"), code: EXIT_OK });
    }
    if let Some(args) = &query.index {
        let (c, kappa) = (args[0], BigInt::from(args[1]));
        if c < 1 {
            bail!("degree must be positive");
        }
        let index = lattice_index(c as usize, &kappa);
        let det = lattice_index_by_determinant(c as usize, &kappa);
        let code = if index == det { EXIT_OK } else { EXIT_FAIL };
        return Ok(Output {
            params: json!({"degree": c, "kappa": args[1]}),
            result: json!({"index": big(&index), "determinant": big(&det)}),
            text: format!("index {index} (|det psi| = {det})\n"),
            code,
        });
    }
    if let Some(args) = &query.bound {
        let norm = normalize(args[0], args[1])?;
        let c = usize::try_from(args[2]).context("class must be nonnegative")?;
        let bound = grc_order_bound(&norm.params, c)?;
        return Ok(Output {
            params: json!({"group": group_params(&norm), "class": c}),
            result: big(&bound),
            text: format!("{}|gr_{c}| divides {bound}\n", group_header(&norm)),
            code: EXIT_OK,
        });
    }
    bail!("choose one of --basis, --witt, --index, --bound")
}

pub(crate) fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass | Verdict::NotApplicable => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_USAGE,
    }
}

pub(crate) fn report_text(r: &VerificationReport, out: &mut String) -> std::fmt::Result {
    writeln!(out, "{}: {}", r.check, r.verdict)?;
    for i in &r.details {
        let mark = if i.ok { "ok  " } else { "FAIL" };
        writeln!(out, "  {mark} {}: {} (expected {})", i.description, i.observed, i.expected)?;
    }
    for note in &r.notes {
        writeln!(out, "  note: {note}")?;
    }
    Ok(())
}

pub(crate) fn verify(m: i64, n: i64, check: Option<Check>, config: &VerifyConfig) -> anyhow::Result<Output> {
    let norm = normalize(m, n)?;
    let p: BSParams = norm.params;
    let reports = match check {
        Some(c) => vec![run_check(c, &p, config)?],
        None => verify_all(&p, config)?,
    };
    let overall = overall_verdict(&reports);
    let mut text = group_header(&norm);
    for r in &reports {
        report_text(r, &mut text)?;
    }
    writeln!(text, "overall: {overall}")?;
    Ok(Output {
        params: json!({
            "group": group_params(&norm),
            "check": check.map(|c| c.name()).unwrap_or("all"),
            "config": config,
        }),
        result: json!({"verdict": overall, "reports": reports}),
        text,
        code: verdict_code(overall),
    })
}
