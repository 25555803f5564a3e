mod common;

use common::{preset, r_star, l_star, CONCORDANT};
use concordia::ccmorphism::{omega_of_homomorphism, transport_homomorphism};
use concordia::cross::{build_omega_s, CrossError, OmegaOptions, OmegaS};
use concordia::icc::{check_icc_axioms, inductive_functor, Icc};
use concordia::semigroup::{find_isomorphism, FiniteSemigroup};
use concordia::workbench::biorder_transport;

fn omega(s: &FiniteSemigroup) -> OmegaS {
    build_omega_s(s, &OmegaOptions::default()).unwrap()
}

#[test]
fn linked_pairs_recover_the_semigroup() {
    for name in CONCORDANT {
        let s = preset(name);
        let om = omega(&s);
        assert_eq!(om.omega.e_omega().len(), s.idempotents().len(), "{name}");
        om.omega.chi_table().unwrap();
        om.check_gamma_factorisation().unwrap();
        let so = om.omega.linked_semigroup().unwrap();
        assert_eq!(so.len(), s.order(), "{name}");
        let phi = om.phi(&so).unwrap();
        for a in s.elements() {
            for b in s.elements() {
                assert_eq!(phi[s.mul(a, b)], so.semigroup.mul(phi[a], phi[b]), "{name}");
            }
        }
        assert!(find_isomorphism(&s, &so.semigroup).is_some());
        assert!(om.omega.somega_report(&so).unwrap().all_hold(), "{name}");
        let sf = om.omega.structure_functors(&so).unwrap();
        assert!(sf.f_iso.is_ok() && sf.g_iso.is_ok(), "{name}");
        biorder_transport(&om, &so).unwrap();
    }
}

#[test]
fn idempotents_map_to_e_omega() {
    for name in CONCORDANT {
        let s = preset(name);
        let om = omega(&s);
        let so = om.omega.linked_semigroup().unwrap();
        let phi = om.phi(&so).unwrap();
        for e in s.idempotents() {
            let x = phi[e];
            assert!(so.semigroup.is_idempotent(x));
            let (c, d) = so.object_pair(x).unwrap();
            assert!(om.omega.in_e_omega(c, d));
        }
    }
}

#[test]
fn opposite_semigroup_round_trips() {
    for name in ["full-transformation:2", "ample-a2", "left-zero:2"] {
        let op = preset(name).opposite();
        let so = omega(&op).omega.linked_semigroup().unwrap();
        assert!(find_isomorphism(&op, &so.semigroup).is_some(), "{name}");
    }
}

#[test]
fn non_concordant_inputs_are_rejected() {
    for name in ["monogenic:2,2", "upper-triangular-F2", "null:2"] {
        match build_omega_s(&preset(name), &OmegaOptions::default()) {
            Err(CrossError::NotConcordant(_)) => {}
            other => panic!("{name}: {:?}", other.map(|_| ())),
        }
    }
}

fn icc_of(s: &FiniteSemigroup) -> (OmegaS, concordia::cross::SOmega, Icc) {
    let om = omega(s);
    let so = om.omega.linked_semigroup().unwrap();
    let icc = Icc::build(&om.omega, &so).unwrap();
    (om, so, icc)
}

#[test]
fn icc_axioms_and_size() {
    for name in CONCORDANT {
        let s = preset(name);
        let (om, so, icc) = icc_of(&s);
        let r = check_icc_axioms(&icc, &om.omega, &so);
        assert!(r.all_pass(), "{name}: {:?}", r.first_failure());
        assert_eq!(icc.num_objects(), s.idempotents().len());

        // Triples e ℛ* a ℒ* f with e, f idempotent.
        let idem = s.idempotents();
        let triples = s
            .elements()
            .map(|a| {
                idem.iter().filter(|&&e| r_star(&s, e, a)).count() * idem.iter().filter(|&&f| l_star(&s, a, f)).count()
            })
            .sum::<usize>();
        assert_eq!(icc.morphisms.len(), triples, "{name}");

        for x in 0..icc.morphisms.len() {
            let d = icc.morphisms[x].dom;
            for e in 0..icc.num_objects() {
                assert_eq!(icc.restriction(e, x).is_some(), icc.omega(e, d), "{name}");
            }
        }
    }
}

#[test]
fn dropping_an_order_pair_breaks_the_axioms() {
    let s = preset("brandt-B2");
    let (om, so, icc) = icc_of(&s);
    let strict: Vec<(usize, usize)> = icc.order.iter().copied().filter(|&(a, b)| a != b).collect();
    assert!(!strict.is_empty());
    for pair in strict {
        let mut broken = icc.clone();
        broken.order.remove(&pair);
        let r = check_icc_axioms(&broken, &om.omega, &so);
        assert!(!r.all_pass(), "removing {pair:?} went unnoticed");
        let occ = ["OCC2", "OCC4", "order"].iter().any(|k| !r.results[*k].passed());
        assert!(occ, "removing {pair:?}: {:?}", r.first_failure());
    }
}

#[test]
fn inductive_functors_of_homomorphisms() {
    type Case = (&'static str, &'static str, fn(usize) -> usize);
    let cases: [Case; 3] = [
        ("direct-product:semilattice-chain:2*cyclic:3", "semilattice-chain:2", |x| x / 3),
        ("direct-product:semilattice-chain:2*cyclic:3", "cyclic:3", |x| x % 3),
        ("cyclic:3", "cyclic:1", |_| 0),
    ];
    for (src, tgt, h) in cases {
        let (s, t) = (preset(src), preset(tgt));
        let h: Vec<usize> = s.elements().map(h).collect();
        let (som, _, sicc) = icc_of(&s);
        let (tom, _, ticc) = icc_of(&t);
        let report = transport_homomorphism(&som, &tom, &h).unwrap();
        assert!(report.morphism.all_pass() && report.agrees_with_h, "{src} → {tgt}: {report:?}");
        let m = omega_of_homomorphism(&som, &tom, &h).unwrap();
        let r = inductive_functor(&sicc, &som.omega, &ticc, &tom.omega, &m).unwrap();
        assert!(r.all_pass(), "{src} → {tgt}: {r:?}");
    }
}
