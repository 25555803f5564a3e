//! Normal and consistent cones, the cone semigroup Ĉ and H-functors.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::category::{
    build_ideal_category, check_isomorphism, CategoryError, Functor, MorId, ObjId, SubobjectCategory,
};
use crate::semigroup::{is_concordant, starred_relation, ConcordanceReport, Elem, FiniteSemigroup, SemigroupError, Side};

pub type ConeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("not a cone: {0}")]
    NotACone(String),
    #[error("cone {0} is not idempotent")]
    NotIdempotentCone(ConeId),
    #[error("morphism {0} has no epimorphic component")]
    NoEpiComponent(MorId),
    #[error("cone not found in the cone semigroup: {0}")]
    MissingCone(String),
    #[error("principal cones need a semigroup-backed category")]
    NotBacked,
    #[error("not abundant: element {0}")]
    NotAbundant(Elem),
    #[error("naturality failure: {0}")]
    NaturalityFailure(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A cone γ with vertex `vertex`: `components[c] = γ(c) ∈ hom(c, vertex)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cone {
    pub vertex: ObjId,
    pub components: Vec<MorId>,
}

impl Cone {
    /// Validate ends and compatibility with inclusions.
    pub fn new(cat: &SubobjectCategory, vertex: ObjId, components: Vec<MorId>) -> Result<Cone, ConeError> {
        if components.len() != cat.num_objects() || vertex >= cat.num_objects() {
            return Err(ConeError::NotACone("wrong number of components".into()));
        }
        for (c, &m) in components.iter().enumerate() {
            if m >= cat.num_morphisms() || cat.dom(m) != c || cat.cod(m) != vertex {
                return Err(ConeError::NotACone(format!("component at {} has the wrong ends", cat.object_name(c))));
            }
        }
        for a in cat.objects() {
            for b in cat.objects() {
                if let Some(j) = cat.inclusion(a, b) {
                    if cat.compose(j, components[b]) != components[a] {
                        return Err(ConeError::NotACone(format!(
                            "components at {} and {} are incompatible",
                            cat.object_name(a),
                            cat.object_name(b)
                        )));
                    }
                }
            }
        }
        Ok(Cone { vertex, components })
    }

    pub fn at(&self, c: ObjId) -> MorId {
        self.components[c]
    }

    pub fn is_consistent(&self, cat: &SubobjectCategory) -> bool {
        self.components.iter().any(|&m| cat.flags(m).bimorphism)
    }

    pub fn is_normal(&self, cat: &SubobjectCategory) -> bool {
        self.components.iter().any(|&m| cat.flags(m).isomorphism)
    }

    pub fn is_idempotent(&self, cat: &SubobjectCategory) -> bool {
        self.components[self.vertex] == cat.identity(self.vertex)
    }

    /// M-set: objects where the component is an isomorphism.
    pub fn mset(&self, cat: &SubobjectCategory) -> Vec<ObjId> {
        cat.objects().filter(|&c| cat.flags(self.components[c]).isomorphism).collect()
    }

    /// γ∗f: c ↦ γ(c)·f, for f leaving the vertex.
    pub fn star(&self, cat: &SubobjectCategory, f: MorId) -> Result<Cone, ConeError> {
        if cat.dom(f) != self.vertex {
            return Err(ConeError::NotACone(format!(
                "{} does not start at the vertex",
                cat.morphism_name(f)
            )));
        }
        Ok(Cone { vertex: cat.cod(f), components: self.components.iter().map(|&m| cat.compose(m, f)).collect() })
    }

    /// γ·δ = γ ∗ (δ(c_γ))°.
    pub fn product(&self, other: &Cone, cat: &SubobjectCategory) -> Result<Cone, ConeError> {
        let m = other.components[self.vertex];
        let e = cat.epi_component(m).ok_or(ConeError::NoEpiComponent(m))?;
        self.star(cat, e)
    }
}

/// The principal cone ρ^a of a semigroup-backed category: vertex the object
/// of a*, component ρ(e, ea, a*) at the object of e.
pub fn principal_cone(cat: &SubobjectCategory, a: Elem) -> Result<Cone, ConeError> {
    let b = cat.backing().ok_or(ConeError::NotBacked)?;
    let t = &b.semigroup;
    let f = b.abundance.star[a].ok_or(ConeError::NotAbundant(a))?;
    let vertex = b.object_of(f).ok_or(ConeError::NotAbundant(a))?;
    let components = b
        .object_rep
        .iter()
        .map(|&e| {
            b.find(e, t.mul(e, a), f)
                .ok_or_else(|| ConeError::MissingCone(format!("principal component at {}", t.name(e))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Cone::new(cat, vertex, components)
}

/// All cones with vertex `d`, optionally with one component fixed.
pub fn enumerate_cones(
    cat: &SubobjectCategory,
    d: ObjId,
    fixed: Option<(ObjId, MorId)>,
    budget: &Budget,
) -> Result<Vec<Cone>, ConeError> {
    let order = cat.descending_order();
    let mut assignment: Vec<Option<MorId>> = vec![None; cat.num_objects()];
    let mut out = Vec::new();
    search_cones(cat, d, fixed, &order, 0, &mut assignment, &mut out, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_cones(
    cat: &SubobjectCategory,
    d: ObjId,
    fixed: Option<(ObjId, MorId)>,
    order: &[ObjId],
    i: usize,
    assignment: &mut Vec<Option<MorId>>,
    out: &mut Vec<Cone>,
    budget: &Budget,
) -> Result<(), ConeError> {
    if i == order.len() {
        budget.check(out.len())?;
        out.push(Cone { vertex: d, components: assignment.iter().map(|m| m.unwrap()).collect() });
        return Ok(());
    }
    let c = order[i];
    let mut forced: Option<MorId> = fixed.filter(|&(x, _)| x == c).map(|(_, m)| m);
    for b in cat.objects() {
        if b == c || !cat.leq(c, b) {
            continue;
        }
        let j = cat.inclusion(c, b).unwrap();
        let v = cat.compose(j, assignment[b].expect("objects above are assigned first"));
        match forced {
            Some(w) if w != v => return Ok(()),
            _ => forced = Some(v),
        }
    }
    let choices: Vec<MorId> = match forced {
        Some(m) if cat.cod(m) == d => vec![m],
        Some(_) => return Ok(()),
        None => cat.hom(c, d).to_vec(),
    };
    for m in choices {
        assignment[c] = Some(m);
        search_cones(cat, d, fixed, order, i + 1, assignment, out, budget)?;
    }
    assignment[c] = None;
    Ok(())
}

/// Idempotent cones (γ(d) = 1) with vertex `d`.
pub fn idempotent_cones(cat: &SubobjectCategory, d: ObjId, budget: &Budget) -> Result<Vec<Cone>, ConeError> {
    enumerate_cones(cat, d, Some((d, cat.identity(d))), budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeMode {
    /// The principal cones ρ^a of a semigroup-backed category.
    PrincipalOnly,
    /// {ε∗u : ε idempotent, u a bimorphism leaving c_ε}, closed under products.
    EpsilonStarU,
    /// Every consistent cone, by exhaustive enumeration.
    FullEnumeration,
}

/// A finite semigroup of cones under γ·δ = γ ∗ (δ(c_γ))°.
#[derive(Debug, Clone)]
pub struct ConeSemigroup {
    pub mode: ConeMode,
    cones: Vec<Cone>,
    index: HashMap<Cone, ConeId>,
    table: Vec<ConeId>,
    semigroup: FiniteSemigroup,
    principal: Option<Vec<ConeId>>,
    /// Cones that had to be added to close the generating set under products.
    pub closure_added: usize,
}

impl ConeSemigroup {
    pub fn build(cat: &SubobjectCategory, mode: ConeMode, budget: &Budget) -> Result<ConeSemigroup, ConeError> {
        let mut seeds: Vec<Cone> = Vec::new();
        let mut principal_cones = None;
        match mode {
            ConeMode::PrincipalOnly => {
                let b = cat.backing().ok_or(ConeError::NotBacked)?;
                let p = b
                    .semigroup
                    .elements()
                    .map(|a| principal_cone(cat, a))
                    .collect::<Result<Vec<_>, _>>()?;
                seeds.extend(p.iter().cloned());
                principal_cones = Some(p);
            }
            ConeMode::EpsilonStarU => {
                for d in cat.objects() {
                    for eps in idempotent_cones(cat, d, budget)? {
                        for x in cat.objects() {
                            for &u in cat.hom(d, x) {
                                if cat.flags(u).bimorphism {
                                    seeds.push(eps.star(cat, u)?);
                                    budget.check(seeds.len())?;
                                }
                            }
                        }
                    }
                }
            }
            ConeMode::FullEnumeration => {
                for d in cat.objects() {
                    seeds.extend(enumerate_cones(cat, d, None, budget)?.into_iter().filter(|g| g.is_consistent(cat)));
                }
            }
        }
        Self::close(cat, mode, seeds, principal_cones, budget)
    }

    /// Rebuild from an explicit cone list (as read back from JSON), closing it
    /// under products. `principal[a]` indexes into `cones`.
    pub fn from_cones(
        cat: &SubobjectCategory,
        mode: ConeMode,
        cones: Vec<Cone>,
        principal: Option<Vec<ConeId>>,
        budget: &Budget,
    ) -> Result<ConeSemigroup, ConeError> {
        let cones = cones
            .into_iter()
            .map(|c| Cone::new(cat, c.vertex, c.components))
            .collect::<Result<Vec<_>, _>>()?;
        let principal_cones = match principal {
            Some(p) => Some(
                p.iter()
                    .map(|&i| cones.get(i).cloned().ok_or_else(|| ConeError::MissingCone(format!("principal cone {i}"))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        Self::close(cat, mode, cones, principal_cones, budget)
    }

    fn close(
        cat: &SubobjectCategory,
        mode: ConeMode,
        seeds: Vec<Cone>,
        principal_cones: Option<Vec<Cone>>,
        budget: &Budget,
    ) -> Result<ConeSemigroup, ConeError> {
        let seed_set: BTreeSet<Cone> = seeds.into_iter().collect();
        let initial = seed_set.len();
        let mut all: BTreeSet<Cone> = seed_set;
        let mut frontier: Vec<Cone> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let snapshot: Vec<Cone> = all.iter().cloned().collect();
            let mut next = Vec::new();
            for g in &frontier {
                for h in &snapshot {
                    for p in [g.product(h, cat)?, h.product(g, cat)?] {
                        if !all.contains(&p) {
                            all.insert(p.clone());
                            next.push(p);
                            budget.check(all.len())?;
                        }
                    }
                }
            }
            frontier = next;
        }
        let closure_added = all.len() - initial;
        let cones: Vec<Cone> = all.into_iter().collect();
        let index: HashMap<Cone, ConeId> = cones.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let k = cones.len();
        let mut table = vec![0; k * k];
        for (i, g) in cones.iter().enumerate() {
            for (j, h) in cones.iter().enumerate() {
                table[i * k + j] = index[&g.product(h, cat)?];
            }
        }
        let semigroup = FiniteSemigroup::from_table(k, table.clone())?
            .with_names((0..k).map(|i| format!("γ{i}")).collect())?;
        let principal = principal_cones.map(|p| p.iter().map(|c| index[c]).collect());
        Ok(ConeSemigroup { mode, cones, index, table, semigroup, principal, closure_added })
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone(&self, id: ConeId) -> &Cone {
        &self.cones[id]
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn find(&self, c: &Cone) -> Option<ConeId> {
        self.index.get(c).copied()
    }

    pub fn require(&self, c: &Cone, what: &str) -> Result<ConeId, ConeError> {
        self.find(c).ok_or_else(|| ConeError::MissingCone(what.to_string()))
    }

    pub fn mul(&self, a: ConeId, b: ConeId) -> ConeId {
        self.table[a * self.cones.len() + b]
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    /// `a ↦ ρ^a`, when built from principal cones.
    pub fn principal(&self) -> Option<&[ConeId]> {
        self.principal.as_deref()
    }

    pub fn idempotents(&self) -> Vec<ConeId> {
        self.semigroup.idempotents()
    }

    /// ε ∗ f° for a morphism f leaving the vertex of ε.
    pub fn star_epi(&self, cat: &SubobjectCategory, eps: ConeId, f: MorId) -> Result<ConeId, ConeError> {
        let e = cat.epi_component(f).ok_or(ConeError::NoEpiComponent(f))?;
        let c = self.cones[eps].star(cat, e)?;
        self.require(&c, &format!("{} ∗ ({})°", eps, cat.morphism_name(f)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeConcordance {
    pub report: ConcordanceReport,
    /// Decompositions γ = ε∗u checked against idempotents δ with c_δ = c_γ.
    pub checked: usize,
    /// (γ, ε, δ) where ε ℛ* γ ℒ* δ fails.
    pub failures: Vec<(ConeId, ConeId, ConeId)>,
}

impl ConeConcordance {
    pub fn holds(&self) -> bool {
        self.report.concordant && self.failures.is_empty()
    }
}

/// Concordance of the cone table, plus ε ℛ* γ ℒ* δ for every γ = ε∗u with
/// ε idempotent, u a bimorphism, and every idempotent δ sharing γ's vertex.
pub fn concordance_of_cone_semigroup(cat: &SubobjectCategory, cs: &ConeSemigroup) -> Result<ConeConcordance, ConeError> {
    let sg = cs.semigroup();
    let report = is_concordant(sg);
    let (r_star, l_star) = (starred_relation(sg, Side::Right), starred_relation(sg, Side::Left));
    let idempotents = cs.idempotents();
    let (mut checked, mut failures) = (0, Vec::new());
    for &eps in &idempotents {
        let c = cs.cone(eps).vertex;
        for d in cat.objects() {
            for &u in cat.hom(c, d) {
                if !cat.flags(u).bimorphism {
                    continue;
                }
                let Some(gamma) = cs.find(&cs.cone(eps).star(cat, u)?) else {
                    continue;
                };
                for &delta in idempotents.iter().filter(|&&x| cs.cone(x).vertex == d) {
                    checked += 1;
                    if !(r_star.related(eps, gamma) && l_star.related(gamma, delta)) {
                        failures.push((gamma, eps, delta));
                    }
                }
            }
        }
    }
    failures.sort_unstable();
    failures.dedup();
    Ok(ConeConcordance { report, checked, failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalConeReport {
    pub elements: Vec<ConeId>,
    pub closed: bool,
    /// Contains every idempotent cone of the semigroup.
    pub full: bool,
    pub regular: bool,
}

/// The normal cones of a cone semigroup, with closure, fullness and regularity.
pub fn normal_cones(cat: &SubobjectCategory, cs: &ConeSemigroup) -> NormalConeReport {
    let elements: Vec<ConeId> = (0..cs.len()).filter(|&i| cs.cone(i).is_normal(cat)).collect();
    let closed = elements.iter().all(|&a| elements.iter().all(|&b| elements.binary_search(&cs.mul(a, b)).is_ok()));
    let full = cs.idempotents().iter().all(|e| elements.binary_search(e).is_ok());
    let regular = closed
        && cs
            .semigroup()
            .restrict(&elements)
            .map(|(sub, _)| sub.is_regular())
            .unwrap_or(false);
    NormalConeReport { elements, closed, full, regular }
}

/// The functor C → 𝕃(Ĉ): c ↦ Ĉε for an idempotent ε with vertex c,
/// f ↦ ρ(ε, ε∗f°, ε′).
#[derive(Debug, Clone)]
pub struct ConeEmbedding {
    pub target: SubobjectCategory,
    pub functor: Functor,
    pub isomorphism: Result<(), CategoryError>,
}

pub fn cone_embedding(cat: &SubobjectCategory, cs: &ConeSemigroup) -> Result<ConeEmbedding, ConeError> {
    let target = build_ideal_category(cs.semigroup(), Side::Left);
    let tb = target.backing().expect("ideal categories are backed");
    let idem = cs.idempotents();
    let rep: Vec<ConeId> = cat
        .objects()
        .map(|c| {
            idem.iter()
                .copied()
                .find(|&e| cs.cone(e).vertex == c)
                .ok_or_else(|| ConeError::MissingCone(format!("idempotent cone at {}", cat.object_name(c))))
        })
        .collect::<Result<_, _>>()?;
    let objects = rep.iter().map(|&e| tb.object_of(e).expect("idempotent")).collect();
    let morphisms = cat
        .morphisms()
        .map(|f| {
            let (a, b) = (rep[cat.dom(f)], rep[cat.cod(f)]);
            let u = cs.star_epi(cat, a, f)?;
            tb.find(a, u, b).ok_or_else(|| ConeError::MissingCone(format!("image of {}", cat.morphism_name(f))))
        })
        .collect::<Result<_, _>>()?;
    let functor = Functor { objects, morphisms };
    let isomorphism = check_isomorphism(cat, &target, &functor);
    Ok(ConeEmbedding { target, functor, isomorphism })
}

/// H(ε; −) as sets of cones, with its action on morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFunctor {
    pub epsilon: ConeId,
    pub vertex: ObjId,
    /// `sets[c]` = {ε∗f° : f ∈ hom(c_ε, c)}, sorted.
    pub sets: Vec<Vec<ConeId>>,
    /// `action[g][i]` is the image of `sets[dom g][i]` under H(ε; g).
    pub action: Vec<Vec<ConeId>>,
}

impl HFunctor {
    pub fn new(cat: &SubobjectCategory, cs: &ConeSemigroup, eps: ConeId) -> Result<HFunctor, ConeError> {
        let cone = cs.cone(eps);
        if !cone.is_idempotent(cat) {
            return Err(ConeError::NotIdempotentCone(eps));
        }
        let v = cone.vertex;
        let mut sets = Vec::with_capacity(cat.num_objects());
        for c in cat.objects() {
            let set: BTreeSet<ConeId> =
                cat.hom(v, c).iter().map(|&f| cs.star_epi(cat, eps, f)).collect::<Result<_, _>>()?;
            if set.len() != cat.hom(v, c).len() {
                return Err(ConeError::NaturalityFailure(format!(
                    "H at {} is not in bijection with hom(c_ε, c)",
                    cat.object_name(c)
                )));
            }
            sets.push(set.into_iter().collect::<Vec<_>>());
        }
        let mut h = HFunctor { epsilon: eps, vertex: v, sets, action: Vec::new() };
        let mut action = Vec::with_capacity(cat.num_morphisms());
        for g in cat.morphisms() {
            let (c, c1) = (cat.dom(g), cat.cod(g));
            let row = h.sets[c]
                .iter()
                .map(|&gamma| {
                    let f = h.eta(cat, cs, c, gamma);
                    let img = cs.star_epi(cat, eps, cat.compose(f, g))?;
                    if h.sets[c1].binary_search(&img).is_err() {
                        return Err(ConeError::NaturalityFailure(format!(
                            "H({}) leaves its target set",
                            cat.morphism_name(g)
                        )));
                    }
                    Ok(img)
                })
                .collect::<Result<Vec<_>, ConeError>>()?;
            action.push(row);
        }
        h.action = action;
        Ok(h)
    }

    /// η(c): ε∗f° ↦ f, i.e. γ ↦ γ(c_ε)·j(c_γ, c).
    pub fn eta(&self, cat: &SubobjectCategory, cs: &ConeSemigroup, c: ObjId, gamma: ConeId) -> MorId {
        let g = cs.cone(gamma);
        let j = cat.inclusion(g.vertex, c).expect("cone vertex lies below c");
        cat.compose(g.components[self.vertex], j)
    }

    pub fn contains(&self, c: ObjId, gamma: ConeId) -> bool {
        self.sets[c].binary_search(&gamma).is_ok()
    }

    pub fn position(&self, c: ObjId, gamma: ConeId) -> Option<usize> {
        self.sets[c].binary_search(&gamma).ok()
    }

    /// H(ε; g)(γ).
    pub fn apply(&self, cat: &SubobjectCategory, g: MorId, gamma: ConeId) -> Option<ConeId> {
        let i = self.position(cat.dom(g), gamma)?;
        Some(self.action[g][i])
    }

    /// Extensional equality: same sets and same action.
    pub fn same_functor(&self, other: &HFunctor) -> bool {
        self.sets == other.sets && self.action == other.action
    }

    pub fn mset(&self, cat: &SubobjectCategory, cs: &ConeSemigroup) -> Vec<ObjId> {
        cs.cone(self.epsilon).mset(cat)
    }

    /// Check functoriality: identities act trivially and composites compose.
    pub fn check_functor(&self, cat: &SubobjectCategory) -> Result<(), ConeError> {
        for c in cat.objects() {
            let id = cat.identity(c);
            if self.action[id] != self.sets[c] {
                return Err(ConeError::NaturalityFailure(format!("identity at {} acts non-trivially", cat.object_name(c))));
            }
        }
        for g in cat.morphisms() {
            for x in cat.objects() {
                for &h in cat.hom(cat.cod(g), x) {
                    let gh = cat.compose(g, h);
                    for i in 0..self.sets[cat.dom(g)].len() {
                        let via = self.apply(cat, h, self.action[g][i]);
                        if via != Some(self.action[gh][i]) {
                            return Err(ConeError::NaturalityFailure(format!(
                                "H does not preserve {} · {}",
                                cat.morphism_name(g),
                                cat.morphism_name(h)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::green_classes;

    fn backed(s: &FiniteSemigroup) -> SubobjectCategory {
        build_ideal_category(s, Side::Left)
    }

    fn sl2() -> FiniteSemigroup {
        FiniteSemigroup::from_fn(2, |i, j| i.min(j)).unwrap()
    }

    #[test]
    fn principal_cones_of_sl2() {
        let c = backed(&sl2());
        let r0 = principal_cone(&c, 0).unwrap();
        let r1 = principal_cone(&c, 1).unwrap();
        assert_eq!(r0.vertex, 0);
        assert_eq!(r1.vertex, 1);
        assert!(r0.is_idempotent(&c) && r1.is_idempotent(&c));
        assert_eq!(r1.product(&r0, &c).unwrap(), r0);
        assert_eq!(r0.mset(&c), vec![0]);
    }

    #[test]
    fn modes_agree_on_small_semigroups() {
        for s in [sl2(), FiniteSemigroup::from_fn(3, |i, j| (i + j) % 3).unwrap()] {
            let c = backed(&s);
            let p = ConeSemigroup::build(&c, ConeMode::PrincipalOnly, &Budget::unlimited()).unwrap();
            let e = ConeSemigroup::build(&c, ConeMode::EpsilonStarU, &Budget::unlimited()).unwrap();
            let f = ConeSemigroup::build(&c, ConeMode::FullEnumeration, &Budget::unlimited()).unwrap();
            assert_eq!(p.cones(), e.cones());
            assert_eq!(e.cones(), f.cones());
            assert_eq!(p.closure_added, 0);
        }
    }

    #[test]
    fn idempotent_cones_share_vertex_iff_l_related() {
        let s = FiniteSemigroup::from_fn(3, |i, j| i.min(j)).unwrap();
        let c = backed(&s);
        let cs = ConeSemigroup::build(&c, ConeMode::EpsilonStarU, &Budget::unlimited()).unwrap();
        let g = green_classes(cs.semigroup());
        let idem = cs.idempotents();
        for &a in &idem {
            for &b in &idem {
                assert_eq!(g.l.related(a, b), cs.cone(a).vertex == cs.cone(b).vertex);
            }
        }
    }

    #[test]
    fn h_functor_of_sl2() {
        let c = backed(&sl2());
        let cs = ConeSemigroup::build(&c, ConeMode::PrincipalOnly, &Budget::unlimited()).unwrap();
        let top = cs.principal().unwrap()[1];
        let h = HFunctor::new(&c, &cs, top).unwrap();
        h.check_functor(&c).unwrap();
        assert_eq!(h.sets[1].len(), 2);
        assert_eq!(h.sets[0].len(), 1);
        for c0 in c.objects() {
            for &g in &h.sets[c0] {
                let f = h.eta(&c, &cs, c0, g);
                assert_eq!(cs.star_epi(&c, top, f).unwrap(), g);
            }
        }
    }

    #[test]
    fn embedding_into_cone_category_is_iso() {
        let c = backed(&sl2());
        let cs = ConeSemigroup::build(&c, ConeMode::EpsilonStarU, &Budget::unlimited()).unwrap();
        let emb = cone_embedding(&c, &cs).unwrap();
        assert!(emb.isomorphism.is_ok());
    }

    #[test]
    fn budget_stops_enumeration() {
        let s = FiniteSemigroup::from_fn(3, |i, j| i.min(j)).unwrap();
        let c = backed(&s);
        let r = ConeSemigroup::build(&c, ConeMode::FullEnumeration, &Budget::items(1));
        assert!(matches!(r, Err(ConeError::Budget(_))));
    }

    #[test]
    fn epsilon_star_u_cones_are_concordant() {
        use crate::preset::Preset;
        for p in [Preset::FullTransformation(2), Preset::SemilatticeChain(2), Preset::BrandtB2] {
            let cat = backed(&p.build());
            let cs = ConeSemigroup::build(&cat, ConeMode::EpsilonStarU, &Budget::unlimited()).unwrap();
            let r = concordance_of_cone_semigroup(&cat, &cs).unwrap();
            assert!(r.holds() && r.checked > 0, "{p}: {r:?}");
        }
    }

    #[test]
    fn ample_cone_semigroup_is_not_e_regular() {
        let cat = backed(&crate::preset::Preset::AmpleA2.build());
        let cs = ConeSemigroup::build(&cat, ConeMode::EpsilonStarU, &Budget::unlimited()).unwrap();
        let r = concordance_of_cone_semigroup(&cat, &cs).unwrap();
        assert_eq!(cs.len(), 5);
        assert!(r.report.abundant && r.report.idempotent_connected && !r.report.e_regular);
        assert!(r.failures.is_empty());
    }
}
