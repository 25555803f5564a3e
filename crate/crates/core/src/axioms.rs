//! Axiom checkers for consistent (CC1–CC6) and normal (NC1–NC4) categories.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::category::{CategoryError, MorId, SubobjectCategory};
use crate::cone::{idempotent_cones, principal_cone, Cone};
use crate::semigroup::Side;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn from_witness(w: Option<String>) -> Verdict {
        w.map_or(Verdict::Pass, Verdict::Fail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub results: BTreeMap<String, Verdict>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.values().all(Verdict::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.results.get(name)
    }

    /// First failing axiom with its witness.
    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.results.iter().find_map(|(k, v)| match v {
            Verdict::Fail(w) => Some((k.as_str(), w.as_str())),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AxiomOptions {
    /// Exhaustive idempotent-cone search is used only below these sizes when
    /// no cones are supplied.
    pub cone_search_objects: usize,
    pub cone_search_morphisms: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { cone_search_objects: 10, cone_search_morphisms: 200 }
    }
}

/// First witness in id order, computed in parallel.
fn first_witness<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Option<String> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().next()
}

fn check_cc1(cat: &SubobjectCategory) -> Verdict {
    let objs: Vec<usize> = cat.objects().collect();
    Verdict::from_witness(first_witness(&objs, |&a| {
        for b in cat.objects() {
            let Some(j) = cat.inclusion(a, b) else { continue };
            if !cat.flags(j).mono {
                return Some(format!("inclusion {} is not mono", cat.morphism_name(j)));
            }
            for c in cat.objects() {
                let Some(j2) = cat.inclusion(c, b) else { continue };
                for &h in cat.hom(a, c) {
                    if cat.compose(h, j2) == j && !cat.is_inclusion(h) {
                        return Some(format!(
                            "{} · {} = {} but {} is not an inclusion",
                            cat.morphism_name(h),
                            cat.morphism_name(j2),
                            cat.morphism_name(j),
                            cat.morphism_name(h)
                        ));
                    }
                }
            }
        }
        None
    }))
}

fn check_cc2(cat: &SubobjectCategory) -> Verdict {
    for a in cat.objects() {
        for b in cat.objects() {
            if a != b && cat.leq(a, b) && cat.retractions(b, a).is_empty() {
                return Verdict::Fail(format!(
                    "inclusion {} has no retraction",
                    cat.morphism_name(cat.inclusion(a, b).unwrap())
                ));
            }
        }
    }
    Verdict::Pass
}

fn check_factorisations(cat: &SubobjectCategory, normal: bool) -> Verdict {
    let ms: Vec<MorId> = cat.morphisms().collect();
    Verdict::from_witness(first_witness(&ms, |&f| {
        if normal {
            cat.normal_factorisation(f)
                .is_none()
                .then(|| format!("{} has no normal factorisation", cat.morphism_name(f)))
        } else {
            match cat.consistent_factorisation(f) {
                Ok(_) => None,
                Err(CategoryError::NotAbundant(u)) => Some(format!(
                    "{} has no consistent factorisation: element {} lacks a starred idempotent",
                    cat.morphism_name(f),
                    cat.backing().map(|b| b.semigroup.name(u)).unwrap_or_else(|| u.to_string())
                )),
                Err(_) => Some(format!("{} has no consistent factorisation", cat.morphism_name(f))),
            }
        }
    }))
}

fn check_cc4(cat: &SubobjectCategory) -> Verdict {
    let bims: Vec<MorId> = cat.morphisms().filter(|&f| cat.flags(f).bimorphism).collect();
    Verdict::from_witness(first_witness(&bims, |&u| match cat.is_consistent_bimorphism(u) {
        Ok(r) if r.consistent => None,
        Ok(r) => Some(format!("{}: {}", cat.morphism_name(u), r.failure.unwrap_or_default())),
        Err(e) => Some(e.to_string()),
    }))
}

fn check_cc5(cat: &SubobjectCategory) -> Verdict {
    let objs: Vec<usize> = cat.objects().collect();
    Verdict::from_witness(first_witness(&objs, |&a| {
        for b in cat.objects() {
            let Some(j) = cat.inclusion(a, b) else { continue };
            for c in cat.objects() {
                for q in cat.retractions(b, c) {
                    let f = cat.compose(j, q);
                    if cat.normal_factorisation(f).is_none() {
                        return Some(format!(
                            "{} · {} has no normal factorisation",
                            cat.morphism_name(j),
                            cat.morphism_name(q)
                        ));
                    }
                }
            }
        }
        None
    }))
}

/// Idempotent cones ρ^e of a semigroup-backed category, one per idempotent.
pub fn principal_idempotent_cones(cat: &SubobjectCategory) -> Option<Vec<Cone>> {
    let b = cat.backing()?;
    b.semigroup.idempotents().into_iter().map(|e| principal_cone(cat, e).ok()).collect()
}

fn check_cone_axiom(cat: &SubobjectCategory, supplied: Option<&[Cone]>, opts: &AxiomOptions, keep: impl Fn(&Cone) -> bool) -> Verdict {
    let supplied: Option<Vec<Cone>> = supplied.map(|s| s.to_vec()).or_else(|| principal_idempotent_cones(cat));
    for c in cat.objects() {
        let ok = match &supplied {
            Some(cones) => cones.iter().any(|g| g.vertex == c && g.is_idempotent(cat) && keep(g)),
            None => {
                if cat.num_objects() > opts.cone_search_objects || cat.num_morphisms() > opts.cone_search_morphisms {
                    return Verdict::Skipped("category too large for exhaustive cone search".into());
                }
                match idempotent_cones(cat, c, &Budget::unlimited()) {
                    Ok(cones) => cones.iter().any(&keep),
                    Err(e) => return Verdict::Skipped(e.to_string()),
                }
            }
        };
        if !ok {
            return Verdict::Fail(format!("no idempotent cone with vertex {}", cat.object_name(c)));
        }
    }
    Verdict::Pass
}

/// For a semigroup-backed category, whether the semigroup is abundant, with
/// an element lacking a starred idempotent as witness.
fn check_backing_abundance(cat: &SubobjectCategory) -> Option<Verdict> {
    let b = cat.backing()?;
    Some(match b.abundance.failure() {
        None => Verdict::Pass,
        Some((a, side)) => {
            let side = if b.side == Side::Right { side.dual() } else { side };
            let rel = if side == Side::Left { "ℒ*" } else { "ℛ*" };
            Verdict::Fail(format!("element {} has no idempotent in its {rel}-class", b.semigroup.name(a)))
        }
    })
}

/// CC1–CC6, plus `abundance` for semigroup-backed categories. CC6 uses `cones` when supplied, the principal idempotent cones
/// of a semigroup-backed category, or an exhaustive search on small categories.
pub fn check_consistent_axioms(cat: &SubobjectCategory, cones: Option<&[Cone]>, opts: &AxiomOptions) -> AxiomReport {
    let mut results = BTreeMap::new();
    results.insert("CC1".into(), check_cc1(cat));
    results.insert("CC2".into(), check_cc2(cat));
    results.insert("CC3".into(), check_factorisations(cat, false));
    results.insert("CC4".into(), check_cc4(cat));
    results.insert("CC5".into(), check_cc5(cat));
    results.insert("CC6".into(), check_cone_axiom(cat, cones, opts, |g| g.is_consistent(cat)));
    if let Some(v) = check_backing_abundance(cat) {
        results.insert("abundance".into(), v);
    }
    AxiomReport { results }
}

/// NC1–NC4.
pub fn check_normal_axioms(cat: &SubobjectCategory, cones: Option<&[Cone]>, opts: &AxiomOptions) -> AxiomReport {
    let mut results = BTreeMap::new();
    results.insert("NC1".into(), check_cc1(cat));
    results.insert("NC2".into(), check_cc2(cat));
    results.insert("NC3".into(), check_factorisations(cat, true));
    results.insert("NC4".into(), check_cone_axiom(cat, cones, opts, |g| g.is_normal(cat)));
    AxiomReport { results }
}

/// The subcategory of morphisms admitting a normal factorisation, with the
/// embedding of its morphism ids.
pub fn normal_subcategory(cat: &SubobjectCategory) -> Result<(SubobjectCategory, Vec<MorId>), CategoryError> {
    let keep: Vec<MorId> = cat.morphisms().filter(|&f| cat.normal_factorisation(f).is_some()).collect();
    cat.restrict_morphisms(&keep)
}

/// Normal subcategory together with its NC report; idempotent cones of the
/// ambient category are kept when all their components survive.
pub fn normal_subcategory_report(
    cat: &SubobjectCategory,
    opts: &AxiomOptions,
) -> Result<(SubobjectCategory, AxiomReport), CategoryError> {
    let (sub, emb) = normal_subcategory(cat)?;
    let mut index = vec![usize::MAX; cat.num_morphisms()];
    for (i, &f) in emb.iter().enumerate() {
        index[f] = i;
    }
    let cones: Option<Vec<Cone>> = principal_idempotent_cones(cat).map(|cs| {
        cs.into_iter()
            .filter(|g| g.components.iter().all(|&m| index[m] != usize::MAX))
            .map(|g| Cone { vertex: g.vertex, components: g.components.iter().map(|&m| index[m]).collect() })
            .collect()
    });
    let report = check_normal_axioms(&sub, cones.as_deref(), opts);
    Ok((sub, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::build_ideal_category;
    use crate::preset::Preset;

    #[test]
    fn ideal_categories_of_regular_presets_pass() {
        for p in [Preset::SemilatticeChain(3), Preset::BrandtB2, Preset::FullTransformation(2), Preset::LeftZero(2)] {
            let s = p.build();
            for side in [Side::Left, Side::Right] {
                let c = build_ideal_category(&s, side);
                let r = check_consistent_axioms(&c, None, &AxiomOptions::default());
                assert!(r.all_pass(), "{p} {side:?}: {:?}", r.first_failure());
                let n = check_normal_axioms(&c, None, &AxiomOptions::default());
                assert!(n.all_pass(), "{p} {side:?}: {:?}", n.first_failure());
            }
        }
    }

    #[test]
    fn non_abundant_fails_with_witness() {
        // 𝕃(S) itself is the one-object category Z2; the witness is the element a.
        let s = Preset::Monogenic { index: 2, period: 2 }.build();
        let c = build_ideal_category(&s, Side::Left);
        let r = check_consistent_axioms(&c, None, &AxiomOptions::default());
        assert!(!r.all_pass());
        match r.get("abundance") {
            Some(Verdict::Fail(w)) => assert!(w.starts_with("element a "), "{w}"),
            other => panic!("expected abundance failure, got {other:?}"),
        }
    }

    #[test]
    fn non_regular_concordant_has_proper_normal_part() {
        let s = Preset::AmpleA2.build();
        let c = build_ideal_category(&s, Side::Left);
        assert!(check_consistent_axioms(&c, None, &AxiomOptions::default()).all_pass());
        assert!(!check_normal_axioms(&c, None, &AxiomOptions::default()).all_pass());
        let (sub, report) = normal_subcategory_report(&c, &AxiomOptions::default()).unwrap();
        assert!(sub.num_morphisms() < c.num_morphisms());
        assert!(report.all_pass(), "{:?}", report.first_failure());
    }
}
