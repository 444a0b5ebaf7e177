use std::io::Write;

use serde_json::Value;
use solitar_cli::run_with;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["solitar".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = run_with(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut with_flag = vec!["--json"];
    with_flag.extend_from_slice(args);
    let (code, out) = run(&with_flag);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad JSON ({e}): {out}")))
}

fn corpus_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn classify_non_residually_finite() {
    let (code, doc) = run_json(&["classify", "-m", "2", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["subcommand"], "classify");
    assert_eq!(doc["result"]["residually_finite"], false);
    assert_eq!(doc["result"]["residually_nilpotent"], false);
    assert_eq!(doc["result"]["gamma_omega_case"], "normal-closure-of-a");
}

#[test]
fn envelope_keys_come_first_in_order() {
    let (_, out) = run(&["--json", "lie", "--witt", "5"]);
    let doc: serde_json::Map<String, Value> = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = doc.keys().map(String::as_str).collect();
    assert_eq!(keys, ["tool_version", "subcommand", "params", "result"]);
    assert_eq!(doc["result"], 6);
}

#[test]
fn reduce_commutator_to_identity() {
    let (code, out) = run(&["reduce", "-m", "2", "-n", "3", "--word", "[t^-1 a^2 t, a]"]);
    assert_eq!((code, out.trim()), (0, "1"));
    let (_, doc) = run_json(&["reduce", "-m", "2", "-n", "3", "--word", "t^-1 a^2 t"]);
    assert_eq!(doc["result"]["normal_form"], "a^3");
    assert_eq!(doc["result"]["is_identity"], false);
    assert_eq!(doc["result"]["t_sum"], 0);
}

#[test]
fn negative_parameters_and_normalization() {
    let (code, doc) = run_json(&["classify", "-m", "3", "-n", "-2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["params"]["group"]["m"], 2);
    assert_eq!(doc["params"]["group"]["n"], -3);
    assert_eq!(doc["params"]["group"]["moves"], serde_json::json!(["swap", "flip_signs"]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["classify", "-m", "2", "-n", "3", "--bogus"]).0, 2);
    assert_eq!(run(&["reduce", "-m", "2", "-n", "3", "--word", "t^"]).0, 2);
    assert_eq!(run(&["classify", "-m", "0", "-n", "3"]).0, 2);
    assert_eq!(run(&["verify", "-m", "2", "-n", "3", "--check", "nonsense"]).0, 2);
    assert_eq!(run(&["generators", "-m", "2", "-n", "3", "--set", "np-omega"]).0, 2);
    assert_eq!(run(&["lie", "--basis", "2", "--witt", "2"]).0, 2);
}

#[test]
fn resource_limits_exit_two() {
    assert_eq!(run(&["nq", "-m", "2", "-n", "3", "--class", "6", "--max-generators", "5"]).0, 2);
}

#[test]
fn verify_all_passes() {
    let (code, out) = run(&["verify", "-m", "6", "-n", "9", "--all", "--class", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("overall: pass\n"));
}

#[test]
fn text_and_json_verdicts_agree() {
    let args = ["verify", "-m", "2", "-n", "4", "--check", "grc-finiteness", "--class", "4"];
    let (text_code, text) = run(&args);
    let (json_code, doc) = run_json(&args);
    assert_eq!(text_code, json_code);
    assert!(text.contains("grc-finiteness: pass"));
    assert_eq!(doc["result"]["verdict"], "pass");
    assert_eq!(doc["result"]["reports"][0]["verdict"], "pass");
}

#[test]
fn not_applicable_check_exits_zero() {
    let (code, doc) = run_json(&["verify", "-m", "6", "-n", "10", "--check", "thm2-identity"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["reports"][0]["verdict"], "not-applicable");
}

#[test]
fn nq_from_presentation_file() {
    let f = corpus_file("gens: x y\n# Heisenberg group\n[[x,y],x]\n[[x,y],y]\n");
    let (code, doc) = run_json(&["nq", "--presentation", f.path().to_str().unwrap(), "--class", "3"]);
    assert_eq!(code, 0);
    let gr: Vec<&str> = doc["result"]["graded_quotients"].as_array().unwrap().iter().map(|g| g["invariants"].as_str().unwrap()).collect();
    assert_eq!(gr, ["Z^2", "Z", "0"]);
    assert_eq!(doc["result"]["consistent"], true);
    assert_eq!(doc["result"]["epimorphism"][1]["image"], serde_json::json!([0, 1, 0]));
}

#[test]
fn lie_basis_lists_trees() {
    let (code, doc) = run_json(&["lie", "--basis", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"], serde_json::json!(["[[x,y],x]", "[[x,y],y]"]));
    let (_, doc) = run_json(&["lie", "--index", "4", "2"]);
    assert_eq!(doc["result"]["index"], doc["result"]["determinant"]);
    let (_, doc) = run_json(&["lie", "--bound", "2", "3", "4"]);
    assert_eq!(doc["result"], 1);
}

#[test]
fn bundled_corpus_passes() {
    let (code, out) = run(&["corpus", "--class", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("12 rows: 12 pass"));
}

#[test]
fn empty_corpus_has_zero_rows() {
    let f = corpus_file("# nothing here\n\n");
    let (code, doc) = run_json(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["rows"], serde_json::json!([]));
}

#[test]
fn wrong_expectation_names_the_row() {
    let f = corpus_file("2 2 residually_nilpotent=true\n2 3 residually_finite=true checks=thm2-identity\n");
    let (code, out) = run(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let bad = out.lines().find(|l| l.contains("fail")).unwrap();
    assert!(bad.starts_with("2 ") && bad.contains("BS(2,3)"), "{out}");
    assert!(out.contains("mismatch residually_finite"));
}

#[test]
fn malformed_corpus_exits_two() {
    let f = corpus_file("2 3\n2 x\n");
    assert_eq!(run(&["corpus", f.path().to_str().unwrap()]).0, 2);
    let f = corpus_file("2 3 colour=blue\n");
    assert_eq!(solitar_cli::run_corpus(f.path()), 2);
}

#[test]
fn corpus_output_keeps_row_order() {
    let f = corpus_file("6 12 checks=gamma-omega-vanishing\n1 3 checks=none\n2 3 checks=thm2-identity\n");
    let (code, doc) = run_json(&["corpus", f.path().to_str().unwrap(), "--jobs", "3", "--class", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<i64> = doc["result"]["rows"].as_array().unwrap().iter().map(|r| r["line"].as_i64().unwrap()).collect();
    assert_eq!(lines, [1, 2, 3]);
}
