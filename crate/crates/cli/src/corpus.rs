//! Fixture corpus runner.
//!
//! A corpus file has one row per line: `m n key=value ...`. Blank lines and
//! text after `#` are ignored. Recognized keys:
//!
//! - `residually_finite`, `residually_nilpotent`: `true` or `false`
//! - `residually_p`: comma-separated primes among 2, 3, 5, 7 for which the
//!   group is residually p, or `none`
//! - `gamma_omega_case`: one of the classifier's case names
//! - `checks`: `all`, `none` or a comma-separated list of check names
//! - `class`, `k_window`: override the run-wide defaults for this row

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use solitar_core::classifier::{classify, GammaOmegaCase};
use solitar_core::verifier::{run_check, Check, Verdict, VerifyConfig};
use solitar_core::BSParams;

use crate::commands::report_text;
use crate::{Output, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

/// The 12-group corpus shipped with the tool.
pub const BUNDLED: &str = include_str!("../corpus/bundled.txt");

const CLASSIFY_PRIMES: [i64; 4] = [2, 3, 5, 7];

#[derive(Clone, Debug, Default)]
struct Expectations {
    residually_finite: Option<bool>,
    residually_nilpotent: Option<bool>,
    residually_p: Option<BTreeSet<i64>>,
    gamma_omega_case: Option<GammaOmegaCase>,
}

#[derive(Clone, Debug)]
struct Row {
    line: usize,
    m: i64,
    n: i64,
    expect: Expectations,
    checks: Vec<Check>,
    class: Option<usize>,
    k_window: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum RowStatus {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

#[derive(Debug, Serialize)]
struct CheckOutcome {
    check: String,
    verdict: Verdict,
    #[serde(skip)]
    text: String,
}

#[derive(Debug, Serialize)]
struct RowResult {
    line: usize,
    group: String,
    status: RowStatus,
    mismatches: Vec<String>,
    checks: Vec<CheckOutcome>,
    error: Option<String>,
}

fn parse_bool(key: &str, v: &str) -> anyhow::Result<bool> {
    v.parse().map_err(|_| anyhow!("{key} must be true or false, got {v:?}"))
}

fn parse_case(v: &str) -> anyhow::Result<GammaOmegaCase> {
    serde_json::from_value(json!(v)).map_err(|_| anyhow!("unknown gamma_omega_case {v:?}"))
}

fn parse_row(line: usize, text: &str) -> anyhow::Result<Row> {
    let mut fields = text.split_whitespace();
    let mut int = |what: &str| -> anyhow::Result<i64> {
        let f = fields.next().ok_or_else(|| anyhow!("missing {what}"))?;
        f.parse().map_err(|_| anyhow!("{what} must be an integer, got {f:?}"))
    };
    let (m, n) = (int("m")?, int("n")?);
    let mut row = Row { line, m, n, expect: Expectations::default(), checks: Vec::new(), class: None, k_window: None };
    for field in fields {
        let (key, value) = field.split_once('=').ok_or_else(|| anyhow!("expected key=value, got {field:?}"))?;
        match key {
            "residually_finite" => row.expect.residually_finite = Some(parse_bool(key, value)?),
            "residually_nilpotent" => row.expect.residually_nilpotent = Some(parse_bool(key, value)?),
            "residually_p" => {
                let primes = if value == "none" {
                    BTreeSet::new()
                } else {
                    value
                        .split(',')
                        .map(|q| q.parse::<i64>().map_err(|_| anyhow!("bad prime {q:?}")))
                        .collect::<anyhow::Result<_>>()?
                };
                if let Some(q) = primes.iter().find(|q| !CLASSIFY_PRIMES.contains(q)) {
                    bail!("residually_p lists {q}, only 2, 3, 5, 7 are tested");
                }
                row.expect.residually_p = Some(primes);
            }
            "gamma_omega_case" => row.expect.gamma_omega_case = Some(parse_case(value)?),
            "checks" => {
                row.checks = match value {
                    "all" => Check::ALL.to_vec(),
                    "none" => Vec::new(),
                    list => list
                        .split(',')
                        .map(|c| Check::from_name(c).ok_or_else(|| anyhow!("unknown check {c:?}")))
                        .collect::<anyhow::Result<_>>()?,
                }
            }
            "class" => row.class = Some(value.parse().map_err(|_| anyhow!("bad class {value:?}"))?),
            "k_window" => row.k_window = Some(value.parse().map_err(|_| anyhow!("bad k_window {value:?}"))?),
            other => bail!("unknown key {other:?}"),
        }
    }
    Ok(row)
}

fn parse_corpus(text: &str) -> anyhow::Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        rows.push(parse_row(i + 1, line).with_context(|| format!("line {}", i + 1))?);
    }
    Ok(rows)
}

fn mismatch<T: PartialEq + std::fmt::Debug>(out: &mut Vec<String>, key: &str, expected: &Option<T>, got: &T) {
    if let Some(want) = expected {
        if want != got {
            out.push(format!("{key}: expected {want:?}, got {got:?}"));
        }
    }
}

fn evaluate(row: &Row, defaults: &VerifyConfig) -> RowResult {
    let mut result = RowResult {
        line: row.line,
        group: format!("BS({},{})", row.m, row.n),
        status: RowStatus::Pass,
        mismatches: Vec::new(),
        checks: Vec::new(),
        error: None,
    };
    if let Err(e) = evaluate_into(row, defaults, &mut result) {
        result.status = RowStatus::Error;
        result.error = Some(e.to_string());
        return result;
    }
    let verdicts = || result.checks.iter().map(|c| c.verdict);
    result.status = if !result.mismatches.is_empty() || verdicts().any(|v| v == Verdict::Fail) {
        RowStatus::Fail
    } else if verdicts().any(|v| v == Verdict::Inconclusive) {
        RowStatus::Inconclusive
    } else {
        RowStatus::Pass
    };
    result
}

fn evaluate_into(row: &Row, defaults: &VerifyConfig, result: &mut RowResult) -> solitar_core::Result<()> {
    let p = BSParams::new(row.m, row.n)?;
    result.group = p.to_string();
    let report = classify(&p, &CLASSIFY_PRIMES)?;
    let e = &row.expect;
    let mm = &mut result.mismatches;
    mismatch(mm, "residually_finite", &e.residually_finite, &report.residually_finite);
    mismatch(mm, "residually_nilpotent", &e.residually_nilpotent, &report.residually_nilpotent);
    let rp: BTreeSet<i64> = report.residually_p.iter().filter(|(_, v)| **v).map(|(q, _)| *q).collect();
    mismatch(mm, "residually_p", &e.residually_p, &rp);
    mismatch(mm, "gamma_omega_case", &e.gamma_omega_case, &report.gamma_omega_case);
    let mut config = defaults.clone();
    config.class = row.class.unwrap_or(config.class);
    config.k_window = row.k_window.unwrap_or(config.k_window);
    for &check in &row.checks {
        let r = run_check(check, &p, &config)?;
        let mut text = String::new();
        report_text(&r, &mut text).expect("writing to a String");
        result.checks.push(CheckOutcome { check: r.check, verdict: r.verdict, text });
    }
    Ok(())
}

fn evaluate_all(rows: &[Row], jobs: usize, config: &VerifyConfig) -> anyhow::Result<Vec<RowResult>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().context("starting worker threads")?;
    Ok(pool.install(|| rows.par_iter().map(|row| evaluate(row, config)).collect()))
}

fn summary_code(results: &[RowResult]) -> i32 {
    let any = |s: RowStatus| results.iter().any(|r| r.status == s);
    if any(RowStatus::Fail) {
        EXIT_FAIL
    } else if any(RowStatus::Error) || any(RowStatus::Inconclusive) {
        EXIT_USAGE
    } else {
        EXIT_OK
    }
}

fn summary_text(results: &[RowResult]) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "{:<6} {:<12} {:<13} checks", "line", "group", "status");
    for r in results {
        let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let passed = r.checks.iter().filter(|c| matches!(c.verdict, Verdict::Pass | Verdict::NotApplicable)).count();
        let _ = writeln!(text, "{:<6} {:<12} {:<13} {passed}/{}", r.line, r.group, status, r.checks.len());
        for m in &r.mismatches {
            let _ = writeln!(text, "       mismatch {m}");
        }
        if let Some(e) = &r.error {
            let _ = writeln!(text, "       error: {e}");
        }
        for c in r.checks.iter().filter(|c| matches!(c.verdict, Verdict::Fail | Verdict::Inconclusive)) {
            for l in c.text.lines() {
                let _ = writeln!(text, "       {l}");
            }
        }
    }
    let count = |s: RowStatus| results.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        text,
        "{} rows: {} pass, {} fail, {} inconclusive, {} error",
        results.len(),
        count(RowStatus::Pass),
        count(RowStatus::Fail),
        count(RowStatus::Inconclusive),
        count(RowStatus::Error)
    );
    text
}

pub(crate) fn corpus_command(path: Option<&Path>, jobs: usize, config: &VerifyConfig) -> anyhow::Result<Output> {
    let (source, text) = match path {
        Some(p) => (p.display().to_string(), std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
        None => ("bundled".to_string(), BUNDLED.to_string()),
    };
    let rows = parse_corpus(&text).with_context(|| format!("malformed corpus {source}"))?;
    let results = evaluate_all(&rows, jobs, config)?;
    let code = summary_code(&results);
    Ok(Output {
        params: json!({"corpus": source, "jobs": jobs, "config": config}),
        result: json!({"rows": results, "exit_code": code}),
        text: summary_text(&results),
        code,
    })
}

/// Runs the corpus at `path` with default settings, printing the summary
/// table. Returns the exit status: 0 when every row passes, 1 on any
/// mismatch or failed check, 2 on malformed input or inconclusive checks.
pub fn run_corpus(path: &Path) -> i32 {
    match corpus_command(Some(path), 0, &VerifyConfig::default()) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
