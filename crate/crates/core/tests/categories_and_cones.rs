mod common;

use common::{preset, CONCORDANT};
use concordia::axioms::{check_consistent_axioms, normal_subcategory, principal_idempotent_cones, AxiomOptions};
use concordia::budget::Budget;
use concordia::category::{build_ideal_category, FactorisationKind, SubobjectCategory};
use concordia::cone::{normal_cones, ConeMode, ConeSemigroup, HFunctor};
use concordia::semigroup::{left_ideal, FiniteSemigroup, Side};

fn both_sides(s: &FiniteSemigroup) -> [(Side, SubobjectCategory); 2] {
    [(Side::Left, build_ideal_category(s, Side::Left)), (Side::Right, build_ideal_category(s, Side::Right))]
}

#[test]
fn objects_and_hom_sets_of_the_left_category() {
    for name in CONCORDANT {
        let s = preset(name);
        let cat = build_ideal_category(&s, Side::Left);
        let mut ideals: Vec<Vec<bool>> = s.idempotents().iter().map(|&e| left_ideal(&s, e)).collect();
        ideals.sort();
        ideals.dedup();
        assert_eq!(cat.num_objects(), ideals.len(), "{name}");

        let b = cat.backing().unwrap();
        for c in cat.objects() {
            for d in cat.objects() {
                let (e, f) = (b.object_rep[c], b.object_rep[d]);
                let mut esf: Vec<usize> = s.elements().map(|x| s.mul(s.mul(e, x), f)).collect();
                esf.sort_unstable();
                esf.dedup();
                assert_eq!(cat.hom(c, d).len(), esf.len(), "{name}: hom({c}, {d})");
            }
        }
    }
}

#[test]
fn consistent_factorisations_compose_back() {
    for name in CONCORDANT {
        for (side, cat) in both_sides(&preset(name)) {
            for f in cat.morphisms() {
                let fact = cat.consistent_factorisation(f).unwrap();
                assert_eq!(cat.compose_all(&[fact.q, fact.u, fact.j]), Some(f), "{name} {side:?}");
                assert!(cat.flags(fact.q).retraction && cat.flags(fact.u).bimorphism && cat.flags(fact.j).inclusion);
                assert_eq!(fact.kind, FactorisationKind::Consistent);
                assert!(cat.classify_morphism(f).unwrap().agrees, "{name} {side:?}: starred flags disagree");
            }
        }
    }
}

#[test]
fn axioms_hold_on_both_sides() {
    for name in CONCORDANT {
        for (side, cat) in both_sides(&preset(name)) {
            let cones = principal_idempotent_cones(&cat);
            let r = check_consistent_axioms(&cat, cones.as_deref(), &AxiomOptions::default());
            assert!(r.all_pass(), "{name} {side:?}: {:?}", r.first_failure());
        }
    }
}

#[test]
fn monogenic_category_fails_the_axioms() {
    let cat = build_ideal_category(&preset("monogenic:2,2"), Side::Left);
    let cones = principal_idempotent_cones(&cat);
    let r = check_consistent_axioms(&cat, cones.as_deref(), &AxiomOptions::default());
    assert!(!r.all_pass());
}

#[test]
fn regular_categories_are_normal() {
    for name in ["cyclic:3", "semilattice-chain:3", "left-zero:2", "full-transformation:2", "brandt-B2"] {
        for (side, cat) in both_sides(&preset(name)) {
            for f in cat.morphisms() {
                let fact = cat.normal_factorisation(f).unwrap_or_else(|| panic!("{name} {side:?}: {f}"));
                assert!(cat.flags(fact.u).isomorphism);
                assert_eq!(cat.compose_all(&[fact.q, fact.u, fact.j]), Some(f));
            }
            let (sub, emb) = normal_subcategory(&cat).unwrap();
            assert_eq!(sub.num_morphisms(), cat.num_morphisms());
            assert_eq!(emb.len(), cat.num_morphisms());
        }
    }
}

#[test]
fn principal_cones_multiply_like_the_semigroup() {
    for name in CONCORDANT {
        let s = preset(name);
        for (side, cat) in both_sides(&s) {
            let cs = ConeSemigroup::build(&cat, ConeMode::PrincipalOnly, &Budget::unlimited()).unwrap();
            let rho = cs.principal().unwrap();
            let ws = &cat.backing().unwrap().semigroup;
            for a in ws.elements() {
                for b in ws.elements() {
                    assert_eq!(cs.mul(rho[a], rho[b]), rho[ws.mul(a, b)], "{name} {side:?}");
                }
            }
            let mut distinct = rho.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            // One side alone need not separate points: ρ^a = ρ^b in a left-zero semigroup.
            assert_eq!(cs.len(), distinct.len(), "{name} {side:?}");
        }
    }
}

#[test]
fn h_functors_of_idempotent_cones() {
    for name in CONCORDANT {
        for (side, cat) in both_sides(&preset(name)) {
            let cs = ConeSemigroup::build(&cat, ConeMode::PrincipalOnly, &Budget::unlimited()).unwrap();
            for eps in cs.idempotents() {
                let h = HFunctor::new(&cat, &cs, eps).unwrap();
                h.check_functor(&cat).unwrap_or_else(|e| panic!("{name} {side:?}: {e}"));
                assert!(h.same_functor(&h));
            }
        }
    }
}

#[test]
fn normal_cones_of_regular_semigroups() {
    for name in ["semilattice-chain:2", "full-transformation:2", "brandt-B2"] {
        let cat = build_ideal_category(&preset(name), Side::Left);
        let cs = ConeSemigroup::build(&cat, ConeMode::PrincipalOnly, &Budget::unlimited()).unwrap();
        let r = normal_cones(&cat, &cs);
        assert!(r.closed && r.full && r.regular, "{name}: {r:?}");
        assert_eq!(r.elements.len(), cs.len());
    }
}

#[test]
fn z3_cones_form_a_group() {
    let cat = build_ideal_category(&preset("cyclic:3"), Side::Left);
    for mode in [ConeMode::PrincipalOnly, ConeMode::EpsilonStarU, ConeMode::FullEnumeration] {
        let cs = ConeSemigroup::build(&cat, mode, &Budget::unlimited()).unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs.idempotents().len(), 1);
        assert!(cs.semigroup().is_regular());
    }
}
