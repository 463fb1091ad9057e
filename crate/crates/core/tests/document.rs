use icat_core::document::{coring_document, from_value, internal_category_document, parse, serialize};
use icat_core::fixtures;
use icat_core::task::{run, verify_all};
use icat_core::{Error, Field};
use serde_json::json;

const Q: Field = Field::Rational;

#[test]
fn every_fixture_task_passes() {
    for (name, _) in fixtures::ALL {
        let doc = fixtures::load(name);
        assert!(verify_all(&doc).unwrap().passed(), "{name}");
        for task in doc.tasks.names() {
            let out = run(&doc, task).unwrap_or_else(|e| panic!("{name}/{task}: {e}"));
            assert!(out.report.passed(), "{name}/{task}\n{}", out.report.to_text());
        }
    }
}

#[test]
fn kleisli_task_emits_four_dimensional_category() {
    let doc = fixtures::load("F3");
    let out = run(&doc, "kleisli").unwrap();
    let emitted = from_value(out.output.unwrap(), None).unwrap();
    let k = emitted.internal_categories.get("ceiling_kleisli").unwrap();
    assert_eq!(k.dim(), 4);
    let oracle = run(&doc, "oracle-compare").unwrap();
    let classical = from_value(oracle.output.unwrap(), None).unwrap();
    assert_eq!(**classical.internal_categories.get("ceiling_classical_kleisli").unwrap(), **k);
}

#[test]
fn hopf_galois_task_tables() {
    let doc = fixtures::load("F6");
    let out = run(&doc, "hopf-galois").unwrap().output.unwrap();
    // basis 1⊗1, 1⊗g, g⊗1, g⊗g on both sides
    assert_eq!(
        out["can"],
        json!([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
    );
    assert_eq!(out["tau"], json!([[1, 0], [0, 0], [0, 0], [0, 1]]));
    assert_eq!(out["coinvariants"], json!([[1], [0]]));
    // A^B = A; 1 ◁ h = 1 and g ◁ h = g
    assert_eq!(
        out["mu_action"],
        json!([[[[1], [0]], [[1], [0]]], [[[0], [1]], [[0], [1]]]])
    );
}

#[test]
fn constructed_outputs_parse_back() {
    let f3 = fixtures::load("F3");
    let poset = f3.internal_categories.get("poset").unwrap();
    let doc = from_value(internal_category_document(Q, "x", poset), None).unwrap();
    assert_eq!(**doc.internal_categories.get("x").unwrap(), **poset);

    let f5 = fixtures::load("F5");
    for name in f5.corings.names() {
        let c = f5.corings.get(name).unwrap();
        let back = from_value(coring_document(Q, "c", c), None).unwrap();
        assert_eq!(back.corings.get("c").unwrap(), c);
    }
    let out = run(&f5, "sweedler").unwrap().output.unwrap();
    let back = from_value(out, None).unwrap();
    let (ctx, d) = f5.sweedler_data.get("g").unwrap();
    let kc = icat_core::coring::sweedler::sweedler_kleisli_coring(ctx, d).unwrap();
    assert_eq!(back.corings.get("g_kleisli").unwrap(), &kc);
}

#[test]
fn serialization_is_stable() {
    for (name, text) in fixtures::ALL {
        let doc = parse(text, None).unwrap();
        let once = serialize(&doc);
        let again = serialize(&parse(&once, None).unwrap());
        assert_eq!(once, again, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    let doc = fixtures::load("F5");
    let a = run(&doc, "twist").unwrap().report.to_json();
    let b = run(&fixtures::load("F5"), "twist").unwrap().report.to_json();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn input_errors() {
    let doc = fixtures::load("F3");
    assert!(matches!(run(&doc, "missing"), Err(Error::UnresolvedReference(_))));
    let bad_op = r#"{"tasks": {"x": {"op": "frobnicate"}}}"#;
    let d = parse(bad_op, None).unwrap();
    assert!(matches!(run(&d, "x"), Err(e) if e.is_input_error()));
    let bad_ref = r#"{"corings": {"c": {"trivial": "nope"}}}"#;
    assert!(matches!(parse(bad_ref, None), Err(Error::UnresolvedReference(n)) if n == "nope"));
    let bad_cat = r#"{"finite_categories": {"c": {"objects": ["a"], "morphisms": [{"name": "f", "dom": "a", "cod": "b"}], "identities": ["f"], "compose": []}}}"#;
    assert!(matches!(parse(bad_cat, None), Err(Error::UnresolvedReference(n)) if n == "b"));
}

#[test]
fn finite_prime_field_override() {
    let doc = parse(fixtures::F5, Some(Field::prime(3).unwrap())).unwrap();
    let out = run(&doc, "sweedler").unwrap();
    assert!(out.report.passed(), "{}", out.report.to_text());
}

#[test]
fn law_failure_is_reported_not_raised() {
    let text = r#"{
      "algebras": {"A": {"cyclic_group": 2}},
      "sweedler_data": {"odd": {"algebra": "A", "t": [0, 0, 0, 1], "m": [1, 0], "u": [1, 0]}},
      "tasks": {"s": {"op": "sweedler", "data": "odd"}}
    }"#;
    let doc = parse(text, None).unwrap();
    let out = run(&doc, "s").unwrap();
    assert!(!out.report.passed());
    assert!(out.output.is_none());
}
