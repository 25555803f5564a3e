#![allow(dead_code)]

use std::sync::OnceLock;

use concordia::budget::Budget;
use concordia::preset::Preset;
use concordia::search::{enumerate_semigroups, relabel, to_semigroup, Table};
use concordia::semigroup::{Elem, FiniteSemigroup};
use proptest::prelude::*;

/// One representative per isomorphism class, orders 1 to 4.
pub fn census() -> &'static [(usize, Table)] {
    static CENSUS: OnceLock<Vec<(usize, Table)>> = OnceLock::new();
    CENSUS.get_or_init(|| {
        (1..=4)
            .flat_map(|n| {
                let e = enumerate_semigroups(n, true, &Budget::unlimited()).unwrap();
                assert!(e.complete);
                e.tables.into_iter().map(move |(t, _)| (n, t))
            })
            .collect()
    })
}

pub fn census_upto(n: usize) -> impl Iterator<Item = FiniteSemigroup> {
    census().iter().filter(move |(k, _)| *k <= n).map(|(k, t)| to_semigroup(t, *k))
}

/// A census table under a random relabelling, together with the original.
pub fn relabelled() -> impl Strategy<Value = (FiniteSemigroup, FiniteSemigroup, Vec<u8>)> {
    (0..census().len()).prop_flat_map(|i| {
        let (n, t) = &census()[i];
        let n = *n;
        Just((0..n as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(move |p| (to_semigroup(t, n), to_semigroup(&relabel(t, n, &p), n), p))
    })
}

pub fn preset(name: &str) -> FiniteSemigroup {
    name.parse::<Preset>().unwrap().build()
}

pub const CONCORDANT: [&str; 8] = [
    "cyclic:2",
    "cyclic:3",
    "semilattice-chain:2",
    "semilattice-chain:3",
    "left-zero:2",
    "full-transformation:2",
    "brandt-B2",
    "ample-a2",
];

/// S¹ as the elements of S followed by `None` for the identity.
fn s1(s: &FiniteSemigroup) -> Vec<Option<Elem>> {
    s.elements().map(Some).chain([None]).collect()
}

fn lmul(s: &FiniteSemigroup, a: Elem, x: Option<Elem>) -> Elem {
    x.map_or(a, |x| s.mul(a, x))
}

fn rmul(s: &FiniteSemigroup, x: Option<Elem>, a: Elem) -> Elem {
    x.map_or(a, |x| s.mul(x, a))
}

/// a ℒ* b straight from the definition: ax = ay ⟺ bx = by for x, y ∈ S¹.
pub fn l_star(s: &FiniteSemigroup, a: Elem, b: Elem) -> bool {
    let u = s1(s);
    u.iter().all(|&x| u.iter().all(|&y| (lmul(s, a, x) == lmul(s, a, y)) == (lmul(s, b, x) == lmul(s, b, y))))
}

pub fn r_star(s: &FiniteSemigroup, a: Elem, b: Elem) -> bool {
    let u = s1(s);
    u.iter().all(|&x| u.iter().all(|&y| (rmul(s, x, a) == rmul(s, y, a)) == (rmul(s, x, b) == rmul(s, y, b))))
}

/// S¹a = S¹b.
pub fn l_green(s: &FiniteSemigroup, a: Elem, b: Elem) -> bool {
    let ideal = |a| {
        let mut v: Vec<Elem> = s1(s).into_iter().map(|x| rmul(s, x, a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    ideal(a) == ideal(b)
}

pub fn r_green(s: &FiniteSemigroup, a: Elem, b: Elem) -> bool {
    let ideal = |a| {
        let mut v: Vec<Elem> = s1(s).into_iter().map(|x| lmul(s, a, x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    ideal(a) == ideal(b)
}

pub fn pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}
