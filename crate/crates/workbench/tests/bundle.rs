use fullfield_workbench::{parse_bundle, render_bundle, BundleError};

fn trivial_text() -> String {
    std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/trivial.json"
    ))
    .unwrap()
}

fn fusion_only(order: u32, weight: &str) -> String {
    format!(
        r#"{{"field_order": {order},
  "provenance": {{"generator": "test", "seed": null, "version": "0", "extra": {{}}}},
  "fusion": {{"labels": ["1", "s"], "unit": "1", "dual": ["1", "s"], "weights": ["0", "{weight}"],
    "fusion": [["1","1","1",1], ["1","s","s",1], ["s","1","s",1], ["s","s","1",1]]}}}}"#
    )
}

#[test]
fn trivial_bundle_loads_and_validates() {
    let b = parse_bundle(&trivial_text()).unwrap();
    assert!(b.fusion.validate().is_valid());
    assert_eq!(render_bundle(&b), trivial_text());
}

#[test]
fn weight_phase_outside_the_field_is_rejected() {
    // e^{πi/16} needs 32 | N
    assert!(parse_bundle(&fusion_only(4, "1/16")).is_err());
    assert!(parse_bundle(&fusion_only(32, "1/16")).is_ok());
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_bundle("{\n  \"field_order\": 8,\n  oops\n}").unwrap_err();
    match err {
        BundleError::Syntax { line, .. } => assert_eq!(line, 3),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn field_errors_name_the_field() {
    let text = fusion_only(8, "1/4").replace("\"unit\": \"1\"", "\"unit\": \"x\"");
    let err = parse_bundle(&text).unwrap_err().to_string();
    assert!(err.contains("fusion.unit"), "{err}");
    let text = trivial_text().replacen("\"1\"", "\"one-half\"", 1);
    assert!(parse_bundle(&text).is_err());
}

#[test]
fn ffa_without_chiral_is_rejected() {
    let text = fusion_only(8, "1/4").replacen("\"fusion\": {", "\"ffa\": {}, \"fusion\": {", 1);
    assert!(parse_bundle(&text).unwrap_err().to_string().contains("ffa"));
}
