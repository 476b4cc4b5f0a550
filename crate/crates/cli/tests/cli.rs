use std::process::Command;

use algint::corpus::{corpus_document, corpus_table, parse_corpus, run_corpus, BUNDLED};
use algint::expr::{parse_constant, parse_curve, parse_element};
use algint::run::{exit_code_for, run, Mode, ProblemSpec};
use algint_core::{Error, Field, Qt, Rat};
use proptest::prelude::*;
use serde_json::Value;

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/algint-result-1.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errs: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errs.is_empty(), "{errs:?}\n{doc:#}");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_algint"))
}

#[test]
fn documents_match_schema_in_every_mode() {
    let v = schema();
    let mut specs = vec![
        ProblemSpec::new(Mode::Reduce, "y^2 - x", "y/((x+1)*x^2)"),
        ProblemSpec::new(Mode::Decompose, "y^2 - x", "y/x^3"),
        ProblemSpec::new(Mode::Integrate, "y^2 - x^2 - 1", "1/y"),
        ProblemSpec::new(Mode::Integrate, "y^2 - x - t", "y"),
        ProblemSpec::new(Mode::Telescope, "y^2 - x*(x-1)*(x-t)", "1/y"),
        ProblemSpec::new(Mode::Integrate, "y^2 - x", "y/(x^"),
        ProblemSpec::new(Mode::Integrate, "y^2 - z", "y"),
        ProblemSpec::new(Mode::Integrate, "y^2 - x", "1/(y^2 - x)"),
    ];
    let mut max = ProblemSpec::new(Mode::Telescope, "y^2 - x*(x-1)*(x-t)", "1/y");
    max.max_order = 1;
    specs.push(max);
    let mut ver = ProblemSpec::new(Mode::Verify, "y^2 - x*(x-1)*(x-t)", "1/y");
    ver.operator = Some("1, 8*t - 4, 4*t^2 - 4*t".into());
    ver.certificate = Some("-2*y/(x - t)^2".into());
    ver.seed = Some(7);
    ver.timings = true;
    specs.push(ver);
    for s in &specs {
        assert_valid(&v, &run(s).doc);
    }
    let rows = run_corpus(&parse_corpus(BUNDLED), 2, 20);
    assert_valid(&v, &corpus_document(&rows, false));
    assert_valid(&v, &corpus_document(&rows, true));
}

#[test]
fn verify_accepts_the_known_operator_and_rejects_a_perturbed_one() {
    let mut s = ProblemSpec::new(Mode::Verify, "y^2 - x*(x-1)*(x-t)", "1/y");
    s.operator = Some("1, 8*t - 4, 4*t^2 - 4*t".into());
    s.certificate = Some("-2*y/(x - t)^2".into());
    let out = run(&s);
    assert_eq!(out.exit_code, 0, "{:#}", out.doc);
    assert_eq!(out.doc["verified"], true);
    s.operator = Some("1, 8*t - 3, 4*t^2 - 4*t".into());
    let out = run(&s);
    assert_eq!(out.exit_code, 1);
    assert_eq!(out.doc["verified"], false);
}

#[test]
fn exit_codes() {
    let status = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(status(&["integrate", "--curve", "y^2-x", "--integrand", "y/x^3"]), Some(0));
    assert_eq!(status(&["integrate", "--curve", "y^2-x", "--integrand", "y/(x^"]), Some(2));
    assert_eq!(status(&["integrate", "--curve", "y^2-w", "--integrand", "y"]), Some(2));
    assert_eq!(status(&["integrate", "--curve", "x^2", "--integrand", "y"]), Some(3));
    assert_eq!(status(&["integrate", "--curve", "y^2-x", "--integrand", "1/(y^2-x)"]), Some(3));
    assert_eq!(status(&["decompose", "--curve", "y^2-x^2", "--integrand", "1/(y-x)"]), Some(3));
    assert_eq!(
        status(&["telescope", "--curve", "y^2-x*(x-1)*(x-t)", "--integrand", "1/y", "--max-order", "1"]),
        Some(5)
    );
    assert_eq!(exit_code_for(&Error::UpdateCandidatesExhausted(String::new())), 4);
    assert_eq!(exit_code_for(&Error::SuitabilityFailure(String::new())), 4);
    assert_eq!(exit_code_for(&Error::MaxOrderExceeded { max_order: 1, trace: vec![] }), 5);
    assert_eq!(exit_code_for(&Error::Precondition(String::new())), 3);
}

#[test]
fn spec_examples_through_the_binary() {
    let out = bin()
        .args(["decompose", "--curve", "y^2 - x", "--integrand", "y/x^3", "--format", "structured"])
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["integrable"], true);
    let c = parse_curve::<Rat>("y^2 - x").unwrap();
    let anti = parse_element(&c, doc["result"]["antiderivative"].as_str().unwrap()).unwrap();
    assert_eq!(anti, parse_element(&c, "-2*y/(3*x^2)").unwrap());

    let out = bin().args(["reduce", "--curve", "y^2 - x", "--integrand", "y/((x+1)*x^2)", "--format", "structured"]).output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let basis: Vec<_> = doc["result"]["basis"].as_array().unwrap().iter().map(|s| parse_element(&c, s.as_str().unwrap()).unwrap()).collect();
    assert_eq!(basis, vec![c.one(), c.y()]);

    let out = bin().args(["telescope", "--curve", "y^2 - x*(x-1)*(x-t)", "--integrand", "1/y"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 2") && text.contains("verified: true"), "{text}");
}

#[test]
fn corpus_output_is_independent_of_parallelism() {
    let bytes = |jobs: &str| bin().args(["corpus", "--format", "structured", "--jobs", jobs]).output().unwrap().stdout;
    let one = bytes("1");
    assert!(!one.is_empty());
    assert_eq!(one, bytes("3"));
    assert_eq!(one, bytes("8"));
}

#[test]
fn bundled_corpus_verifies() {
    let rows = run_corpus(&parse_corpus(BUNDLED), 4, 20);
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert!(r.is_ok() && r.verified, "{} {}", r.name, r.status);
    }
}

#[test]
fn empty_and_malformed_corpora() {
    assert!(run_corpus(&parse_corpus(""), 4, 20).is_empty());
    assert_eq!(corpus_table(&[], false).lines().count(), 2);

    let text = [
        r#"{"name": "a", "curve": "y^2 - x", "integrand": "1/y", "mode": "integrate", "expect_integrable": true}"#,
        r#"{"name": "b", "curve": "y^2 - x""#,
        r#"{"name": "c", "curve": "y^2 - x", "integrand": "y/(x^", "mode": "integrate"}"#,
        r#"{"name": "d", "curve": "y^2 - x", "integrand": "y", "mode": "integrate", "expect_integrable": false}"#,
        r#"{"name": "e", "curve": "y^2 - x - t", "integrand": "y", "mode": "telescope", "expect_order": 0}"#,
    ]
    .join("\n");
    let rows = run_corpus(&parse_corpus(&text), 2, 20);
    let status: Vec<&str> = rows.iter().map(|r| r.status.as_str()).collect();
    assert_eq!(status, ["ok", "parse-error", "parse-error", "mismatch", "ok"]);
}

/// Random expression text over `x`, `y` (and `t`).
fn expr_text(param: bool) -> impl Strategy<Value = String> {
    let vars: Vec<&'static str> = if param { vec!["x", "y", "t"] } else { vec!["x", "y"] };
    let leaf = prop_oneof![(0i64..12).prop_map(|n| n.to_string()), proptest::sample::select(vars).prop_map(String::from)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})/({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_elements_parse_back(text in expr_text(false), curve in proptest::sample::select(vec!["y^2 - x", "y^3 - x^2 - 1", "3*y^2 - x^3 + 2"])) {
        let c = parse_curve::<Rat>(curve).unwrap();
        let Ok(f) = parse_element(&c, &text) else { return Ok(()) };
        let printed = f.to_expr_string();
        prop_assert_eq!(parse_element(&c, &printed).unwrap(), f);
    }

    #[test]
    fn printed_parametric_elements_parse_back(text in expr_text(true)) {
        let c = parse_curve::<Qt>("y^2 - x*(x - t)").unwrap();
        let Ok(f) = parse_element(&c, &text) else { return Ok(()) };
        let printed = f.to_expr_string();
        prop_assert_eq!(parse_element(&c, &printed).unwrap(), f);
        let printed = c.to_expr_string();
        let again = parse_curve::<Qt>(&printed).unwrap();
        prop_assert_eq!(again.defining_poly(), c.defining_poly());
    }

    #[test]
    fn printed_constants_parse_back(a in -20i64..20, b in 1i64..20, k in 0u32..4) {
        let text = format!("({a}*t^{k} - 1)/({b}*t + 3)");
        let c: Qt = parse_constant(&text).unwrap();
        prop_assert_eq!(parse_constant::<Qt>(&c.to_string()).unwrap(), c.clone());
        prop_assert_eq!(c.is_zero(), a == 1 && k == 0);
    }
}
