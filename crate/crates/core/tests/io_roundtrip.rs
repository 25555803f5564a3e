mod common;

use common::{preset, relabelled, CONCORDANT};
use concordia::cross::{build_omega_s, OmegaOptions};
use concordia::icc::Icc;
use concordia::io::{
    from_json, parse_category, parse_semigroup, to_json, CategoryJson, IccJson, IoError, OmegaJson, SOmegaJson,
    SemigroupJson,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn semigroup_json_round_trips((_, s, _) in relabelled()) {
        let text = to_json(&SemigroupJson::from_semigroup(&s));
        let back = parse_semigroup(&text).unwrap();
        prop_assert_eq!(back.table(), s.table());
        prop_assert_eq!(to_json(&SemigroupJson::from_semigroup(&back)), text);
    }

    #[test]
    fn adjoined_identity_survives((_, s, _) in relabelled()) {
        let t = s.with_identity();
        let back = parse_semigroup(&to_json(&SemigroupJson::from_semigroup(&t))).unwrap();
        prop_assert_eq!(back.has_adjoined_identity(), t.has_adjoined_identity());
        prop_assert_eq!(back.table(), t.table());
    }
}

#[test]
fn bad_tables_are_rejected() {
    let cases = [
        r#"{"order": 2, "table": [[0, 0], [1, 0]]}"#,
        r#"{"order": 2, "table": [[0, 2], [1, 1]]}"#,
        r#"{"order": 2, "table": [[0, 1]]}"#,
        r#"{"order": 2, "table": [[0, 1], [1, -1]]}"#,
        r#"{"order": 2, "table": [[0, 1], [1, 0]], "one": 0}"#,
        r#"{"table": [[0]]}"#,
        "not json",
    ];
    for c in cases {
        assert!(parse_semigroup(c).is_err(), "{c}");
    }
    // A cyclic group of order 2 is associative; the same table with a bad
    // product is not.
    assert!(parse_semigroup(r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#).is_ok());
    assert!(matches!(parse_semigroup(r#"{"order": 2, "table": [[1, 0], [0, 0]]}"#), Err(IoError::Semigroup(_))));
}

#[test]
fn categories_round_trip() {
    for name in CONCORDANT {
        let om = build_omega_s(&preset(name), &OmegaOptions::default()).unwrap();
        for cat in [&om.omega.c.category, &om.omega.d.category] {
            let text = to_json(&CategoryJson::from_category(cat));
            let back = parse_category(&text).unwrap();
            assert_eq!(back.to_spec(), cat.to_spec(), "{name}");
            assert_eq!(to_json(&CategoryJson::from_category(&back)), text);
        }
    }
}

#[test]
fn cross_connection_artifacts_round_trip() {
    for name in CONCORDANT {
        let om = build_omega_s(&preset(name), &OmegaOptions::default()).unwrap();
        let text = to_json(&OmegaJson::from_omega(&om.omega));
        let back = from_json::<OmegaJson>(&text).unwrap().to_omega().unwrap();
        assert_eq!(to_json(&OmegaJson::from_omega(&back)), text, "{name}");

        let so = back.linked_semigroup().unwrap();
        let so_text = to_json(&SOmegaJson::from_somega(&so));
        let so_back = from_json::<SOmegaJson>(&so_text).unwrap().verify(&back).unwrap();
        assert_eq!(so_back.pairs, so.pairs);

        let icc = Icc::build(&back, &so_back).unwrap();
        let icc_text = to_json(&IccJson::from_icc(&icc));
        let icc_back = from_json::<IccJson>(&icc_text).unwrap().verify(&back, &so_back).unwrap();
        assert_eq!(to_json(&IccJson::from_icc(&icc_back)), icc_text, "{name}");
    }
}

#[test]
fn tampered_artifacts_are_rejected() {
    let om = build_omega_s(&preset("brandt-B2"), &OmegaOptions::default()).unwrap();
    let so = om.omega.linked_semigroup().unwrap();

    let mut sj = SOmegaJson::from_somega(&so);
    sj.pairs.swap(0, 1);
    assert!(sj.verify(&om.omega).is_err());

    let icc = Icc::build(&om.omega, &so).unwrap();
    let mut ij = IccJson::from_icc(&icc);
    let strict = ij.order.iter().position(|&(a, b)| a != b).unwrap();
    ij.order.remove(strict);
    assert!(ij.verify(&om.omega, &so).is_err());

    let mut oj = OmegaJson::from_omega(&om.omega);
    oj.e_omega.pop();
    assert!(oj.to_omega().is_err());
}
