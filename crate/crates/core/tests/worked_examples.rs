use lowerk::abelian::{amalgam_k_assemble, bundled_spec, bundled_spec_names, AssemblySpec, Degree, KError};
use lowerk::casebook::{case_b3, run_case};
use lowerk::CASES;

#[test]
fn every_case_passes_and_is_deterministic() {
    for name in CASES {
        let first = run_case(name).unwrap();
        assert!(first.pass, "{}", first.to_table());
        let again = run_case(name).unwrap();
        assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&again).unwrap());
    }
}

#[test]
fn reports_round_trip_through_json() {
    let r = case_b3().unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<lowerk::CaseReport>(&text).unwrap(), r);
    assert!(r.checks.iter().all(|c| !c.cite.is_empty()));
}

#[test]
fn bundled_specs_assemble() {
    assert_eq!(bundled_spec_names(), ["pb3rp2", "b3rp2", "mcg-rp2-3"]);
    for name in bundled_spec_names() {
        let a = amalgam_k_assemble(&bundled_spec(name).unwrap()).unwrap();
        assert!(a.degree(Degree::Km2).abelian.is_zero(), "{name}");
    }
}

#[test]
fn spec_without_cite_is_a_schema_error() {
    let text = r#"{"name":"x","A":"cyclic:2","B":"cyclic:2","C":"trivial",
        "maps":[{"degree":"Wh","source":"zero"}]}"#;
    assert!(matches!(AssemblySpec::from_json(text), Err(KError::Schema(_))));
}
