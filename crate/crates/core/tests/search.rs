mod common;

use std::collections::BTreeSet;

use common::preset;
use concordia::budget::Budget;
use concordia::io::to_json;
use concordia::search::{canonical_form, enumerate_semigroups, parse_query, run_census, to_semigroup, SearchSpec};
use concordia::semigroup::find_isomorphism;

/// Every n×n table over 0..n, kept when associative.
fn brute_force(n: usize) -> Vec<Vec<u8>> {
    let cells = n * n;
    let mut out = Vec::new();
    for code in 0..n.pow(cells as u32) {
        let mut k = code;
        let t: Vec<u8> = (0..cells)
            .map(|_| {
                let v = (k % n) as u8;
                k /= n;
                v
            })
            .collect();
        let m = |a: u8, b: u8| t[a as usize * n + b as usize];
        let assoc = (0..n as u8).all(|a| (0..n as u8).all(|b| (0..n as u8).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
        if assoc {
            out.push(t);
        }
    }
    out
}

#[test]
fn labelled_enumeration_matches_brute_force() {
    for n in 1..=3 {
        let mut expected = brute_force(n);
        expected.sort();
        let e = enumerate_semigroups(n, false, &Budget::unlimited()).unwrap();
        let mut got: Vec<Vec<u8>> = e.tables.into_iter().map(|(t, orbit)| {
            assert_eq!(orbit, 1);
            t
        }).collect();
        got.sort();
        assert_eq!(got, expected, "order {n}");
    }
}

#[test]
fn classes_are_pairwise_non_isomorphic_and_cover_everything() {
    for n in 1..=3 {
        let classes = enumerate_semigroups(n, true, &Budget::unlimited()).unwrap().tables;
        let forms: BTreeSet<Vec<u8>> = brute_force(n).iter().map(|t| canonical_form(t, n)).collect();
        assert_eq!(classes.len(), forms.len(), "order {n}");
        for (i, (a, _)) in classes.iter().enumerate() {
            assert!(forms.contains(&canonical_form(a, n)));
            for (b, _) in &classes[..i] {
                assert!(find_isomorphism(&to_semigroup(a, n), &to_semigroup(b, n)).is_none());
            }
        }
        let labelled: u64 = classes.iter().map(|(_, o)| o).sum();
        assert_eq!(labelled as usize, brute_force(n).len());
    }
}

#[test]
fn order_four_counts() {
    let e = enumerate_semigroups(4, true, &Budget::unlimited()).unwrap();
    assert_eq!(e.tables.len(), 188);
    assert_eq!(e.tables.iter().map(|(_, o)| o).sum::<u64>(), 3492);
}

#[test]
fn concordant_but_not_regular_at_order_four() {
    let spec = SearchSpec { max_order: 4, query: parse_query("concordant & !regular").unwrap(), ..Default::default() };
    let c = run_census(&spec, &Budget::unlimited()).unwrap();
    assert!(c.complete && c.concordant_not_regular_found);
    assert!(!c.abundant_not_weakly_reductive_found);
    let counts: Vec<u64> = c.orders.iter().map(|o| o.query.as_ref().unwrap().count).collect();
    assert_eq!(counts, vec![0, 0, 0, 1]);
    let w = &c.orders[3].query.as_ref().unwrap().witnesses[0];
    let t: Vec<u8> = w.iter().flatten().map(|&x| x as u8).collect();
    assert!(find_isomorphism(&to_semigroup(&t, 4), &preset("ample-a2")).is_some());
}

#[test]
fn census_output_is_deterministic() {
    let spec = SearchSpec { max_order: 3, ..Default::default() };
    let a = to_json(&run_census(&spec, &Budget::unlimited()).unwrap());
    let b = to_json(&run_census(&spec, &Budget::unlimited()).unwrap());
    assert_eq!(a, b);
}
