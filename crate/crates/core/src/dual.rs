//! The normal dual C*: H-functors of idempotent cones and the natural
//! transformations between them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::category::{
    build_ideal_category, check_isomorphism, CategoryError, CategorySpec, Functor, MorId, ObjId, SubobjectCategory,
};
use crate::cone::{ConeError, ConeId, ConeSemigroup, HFunctor};
use crate::semigroup::Side;

/// A natural transformation H(ε_dom) → H(ε_cod) induced by
/// `k ∈ C(c_{ε_cod}, c_{ε_dom})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTrans {
    pub dom: ObjId,
    pub cod: ObjId,
    pub k: MorId,
    /// `maps[c][i]` is the image of the i-th cone of H(ε_dom; c).
    pub maps: Vec<Vec<ConeId>>,
}

#[derive(Debug, Clone)]
pub struct DualCategory {
    pub category: SubobjectCategory,
    pub functors: Vec<HFunctor>,
    pub transformations: Vec<NatTrans>,
    /// Dual object of each idempotent cone (None for non-idempotents).
    pub object_of_cone: Vec<Option<ObjId>>,
    lookup: HashMap<(ObjId, ObjId, Vec<Vec<ConeId>>), MorId>,
}

/// η_ε at c: γ ↦ γ(c_ε)·j(c_γ, c).
pub fn eta(cat: &SubobjectCategory, cs: &ConeSemigroup, eps: ConeId, c: ObjId, gamma: ConeId) -> MorId {
    let g = cs.cone(gamma);
    let j = cat.inclusion(g.vertex, c).expect("cone vertex lies below c");
    cat.compose(g.components[cs.cone(eps).vertex], j)
}

/// The maps of the transformation γ ↦ ε_j ∗ (k·η_{ε_i}(γ))° on H(ε_i).
fn transformation_maps(
    cat: &SubobjectCategory,
    cs: &ConeSemigroup,
    source: &HFunctor,
    eps_i: ConeId,
    eps_j: ConeId,
    k: MorId,
) -> Result<Vec<Vec<ConeId>>, ConeError> {
    cat.objects()
        .map(|c| {
            source.sets[c]
                .iter()
                .map(|&gamma| cs.star_epi(cat, eps_j, cat.compose(k, eta(cat, cs, eps_i, c, gamma))))
                .collect()
        })
        .collect()
}

impl DualCategory {
    pub fn build(cat: &SubobjectCategory, cs: &ConeSemigroup) -> Result<DualCategory, ConeError> {
        let mut functors: Vec<HFunctor> = Vec::new();
        let mut object_of_cone = vec![None; cs.len()];
        for eps in cs.idempotents() {
            let h = HFunctor::new(cat, cs, eps)?;
            let id = match functors.iter().position(|f| f.same_functor(&h)) {
                Some(i) => i,
                None => {
                    h.check_functor(cat)?;
                    functors.push(h);
                    functors.len() - 1
                }
            };
            object_of_cone[eps] = Some(id);
        }
        let n = functors.len();
        let mut transformations: Vec<NatTrans> = Vec::new();
        let mut lookup = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (functors[i].epsilon, functors[j].epsilon);
                for &k in cat.hom(functors[j].vertex, functors[i].vertex) {
                    let maps = transformation_maps(cat, cs, &functors[i], ei, ej, k)?;
                    let t = NatTrans { dom: i, cod: j, k, maps };
                    check_naturality(cat, &functors[i], &functors[j], &t)?;
                    if lookup.insert((i, j, t.maps.clone()), transformations.len()).is_some() {
                        return Err(ConeError::NaturalityFailure(format!(
                            "two morphisms induce the same transformation H{i} → H{j}"
                        )));
                    }
                    transformations.push(t);
                }
            }
        }
        let m = transformations.len();
        let mut compose = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let (ta, tb) = (&transformations[a], &transformations[b]);
                if ta.cod != tb.dom {
                    continue;
                }
                let mid = &functors[ta.cod];
                let maps: Vec<Vec<ConeId>> = cat
                    .objects()
                    .map(|c| {
                        ta.maps[c]
                            .iter()
                            .map(|&g| tb.maps[c][mid.position(c, g).expect("transformation stays in H")])
                            .collect()
                    })
                    .collect();
                let h = *lookup
                    .get(&(ta.dom, tb.cod, maps))
                    .ok_or_else(|| ConeError::NaturalityFailure("composite transformation is missing".into()))?;
                compose.push((a, b, h));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        let mut inclusion_of = vec![None; m];
        for i in 0..n {
            for j in 0..n {
                let subset = cat
                    .objects()
                    .all(|c| functors[i].sets[c].iter().all(|&g| functors[j].contains(c, g)));
                if !subset {
                    continue;
                }
                let maps: Vec<Vec<ConeId>> = functors[i].sets.clone();
                if let Some(&t) = lookup.get(&(i, j, maps)) {
                    leq[i][j] = true;
                    inclusion_of[t] = Some((i, j));
                }
            }
        }
        let spec = CategorySpec {
            leq,
            morphisms: transformations.iter().enumerate().map(|(t, x)| (x.dom, x.cod, inclusion_of[t].is_some())).collect(),
            compose,
            object_names: Some(functors.iter().map(|f| format!("H(γ{})", f.epsilon)).collect()),
            morphism_names: Some(
                transformations
                    .iter()
                    .map(|t| format!("H(γ{})→H(γ{})[{}]", functors[t.dom].epsilon, functors[t.cod].epsilon, cat.morphism_name(t.k)))
                    .collect(),
            ),
        };
        let category = SubobjectCategory::from_spec_with(spec, false)?;
        Ok(DualCategory { category, functors, transformations, object_of_cone, lookup })
    }

    pub fn find(&self, dom: ObjId, cod: ObjId, maps: &[Vec<ConeId>]) -> Option<MorId> {
        self.lookup.get(&(dom, cod, maps.to_vec())).copied()
    }

    /// The dual morphism H(ε_i) → H(ε_j) induced by k ∈ C(c_{ε_j}, c_{ε_i}),
    /// for any idempotent representatives ε_i, ε_j.
    pub fn transformation(
        &self,
        cat: &SubobjectCategory,
        cs: &ConeSemigroup,
        eps_i: ConeId,
        eps_j: ConeId,
        k: MorId,
    ) -> Result<MorId, ConeError> {
        let (i, j) = (self.object(eps_i)?, self.object(eps_j)?);
        if cat.dom(k) != cs.cone(eps_j).vertex || cat.cod(k) != cs.cone(eps_i).vertex {
            return Err(ConeError::NotACone(format!("{} has the wrong ends", cat.morphism_name(k))));
        }
        let maps = transformation_maps(cat, cs, &self.functors[i], eps_i, eps_j, k)?;
        self.find(i, j, &maps)
            .ok_or_else(|| ConeError::MissingCone(format!("dual morphism induced by {}", cat.morphism_name(k))))
    }

    pub fn object(&self, eps: ConeId) -> Result<ObjId, ConeError> {
        self.object_of_cone
            .get(eps)
            .copied()
            .flatten()
            .ok_or(ConeError::NotIdempotentCone(eps))
    }

    /// Check that G: ℝ(Ĉ) → C*, λ(ε,γ,ε′) ↦ (γ(c_ε′)·j(c_γ, c_ε))-transformation,
    /// is an isomorphism.
    pub fn check_right_cone_isomorphism(
        &self,
        cat: &SubobjectCategory,
        cs: &ConeSemigroup,
    ) -> Result<Result<(), CategoryError>, ConeError> {
        let r = build_ideal_category(cs.semigroup(), Side::Right);
        let b = r.backing().expect("ideal categories are backed");
        let objects = b.object_rep.iter().map(|&e| self.object(e)).collect::<Result<Vec<_>, _>>()?;
        let morphisms = b
            .triples
            .iter()
            .map(|t| {
                let gamma = cs.cone(t.u);
                let j = cat
                    .inclusion(gamma.vertex, cs.cone(t.e).vertex)
                    .ok_or_else(|| ConeError::NotACone("cone vertex not below ε".into()))?;
                let k = cat.compose(gamma.components[cs.cone(t.f).vertex], j);
                self.transformation(cat, cs, t.e, t.f, k)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(check_isomorphism(&r, &self.category, &Functor { objects, morphisms }))
    }
}

fn check_naturality(cat: &SubobjectCategory, src: &HFunctor, tgt: &HFunctor, t: &NatTrans) -> Result<(), ConeError> {
    for g in cat.morphisms() {
        let (c, c1) = (cat.dom(g), cat.cod(g));
        for (i, &gamma) in src.sets[c].iter().enumerate() {
            let down = tgt.apply(cat, g, t.maps[c][i]);
            let across = src.apply(cat, g, gamma).and_then(|x| src.position(c1, x)).map(|p| t.maps[c1][p]);
            if down.is_none() || down != across {
                return Err(ConeError::NaturalityFailure(format!(
                    "transformation induced by {} is not natural at {}",
                    cat.morphism_name(t.k),
                    cat.morphism_name(g)
                )));
            }
        }
    }
    Ok(())
}
