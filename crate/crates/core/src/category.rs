//! Finite categories with subobjects and the ideal categories 𝕃(S), ℝ(S).
//!
//! Composition is written left to right: `compose(f, g)` is "f then g" and
//! requires `cod(f) == dom(g)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{biorder, is_abundant, Abundance, Elem, FiniteSemigroup, Side};

pub type ObjId = usize;
pub type MorId = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("object order is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("morphism {0} refers to an unknown object")]
    UnknownObject(MorId),
    #[error("composite of morphisms {0} and {1} is missing")]
    MissingComposite(MorId, MorId),
    #[error("composite of morphisms {0} and {1} is {2}, which has the wrong ends")]
    BadComposite(MorId, MorId, MorId),
    #[error("composition is not associative at ({0}, {1}, {2})")]
    NotAssociative(MorId, MorId, MorId),
    #[error("object {0} has no identity morphism")]
    NoIdentity(ObjId),
    #[error("inclusions do not match the object order at ({0}, {1})")]
    InclusionMismatch(ObjId, ObjId),
    #[error("morphism {0} is not in the category")]
    MorphismNotInCategory(String),
    #[error("not abundant: element {0} has no idempotent in one of its starred classes")]
    NotAbundant(Elem),
    #[error("morphism {0} is not a bimorphism")]
    NotBimorphism(MorId),
    #[error("morphism {0} has no consistent factorisation")]
    NoConsistentFactorisation(MorId),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
}

/// Literal categorical properties of one morphism.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFlags {
    pub mono: bool,
    pub epi: bool,
    pub bimorphism: bool,
    pub isomorphism: bool,
    pub inclusion: bool,
    pub retraction: bool,
}

/// A morphism ρ(e,u,f) of 𝕃(S) (side `Left`) or λ(e,u,f) of ℝ(S) (side `Right`),
/// with `e`, `f` the least idempotents of their classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphismTriple {
    pub e: Elem,
    pub u: Elem,
    pub f: Elem,
    pub side: Side,
}

/// The semigroup data behind an ideal category. ℝ(S) is built as 𝕃 of the
/// opposite semigroup, so `semigroup` is S for `Left` and S^op for `Right`;
/// element ids are shared with S either way.
#[derive(Debug, Clone)]
pub struct Backing {
    pub side: Side,
    pub semigroup: FiniteSemigroup,
    pub abundance: Abundance,
    pub object_rep: Vec<Elem>,
    pub triples: Vec<MorphismTriple>,
    object_of_idempotent: Vec<Option<ObjId>>,
    lookup: HashMap<(ObjId, Elem, ObjId), MorId>,
}

impl Backing {
    /// Object whose representative is ℒ-related (in the working semigroup) to `e`.
    pub fn object_of(&self, e: Elem) -> Option<ObjId> {
        self.object_of_idempotent.get(e).copied().flatten()
    }

    /// Canonicalise and look up the morphism with triple (e, u, f).
    pub fn find(&self, e: Elem, u: Elem, f: Elem) -> Option<MorId> {
        let t = &self.semigroup;
        let (a, b) = (self.object_of(e)?, self.object_of(f)?);
        if t.mul(t.mul(e, u), f) != u {
            return None;
        }
        let u = t.mul(self.object_rep[a], u);
        self.lookup.get(&(a, u, b)).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorisationKind {
    Consistent,
    Normal,
}

/// `m = q·u·j` with q a retraction, u a bimorphism (an isomorphism when
/// `Normal`) and j an inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorisation {
    pub q: MorId,
    pub u: MorId,
    pub j: MorId,
    pub kind: FactorisationKind,
    /// The epimorphic component q·u.
    pub epi: MorId,
    pub image: ObjId,
}

/// Result of classifying a morphism of a semigroup-backed category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub flags: MorphismFlags,
    /// e ℛ* u, computed in the working semigroup.
    pub starred_mono: bool,
    /// u ℒ* f.
    pub starred_epi: bool,
    /// The alternative reading e ℒ* u ℛ* f of the bimorphism criterion.
    pub alternative_bimorphism: bool,
    /// Whether the starred criteria agree with literal cancellability.
    pub agrees: bool,
}

/// Data of a functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

/// The functor T: ⟨c⟩ → ⟨d⟩ extending a bimorphism u: c → d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFunctor {
    pub bimorphism: MorId,
    pub objects: Vec<(ObjId, ObjId)>,
    pub morphisms: Vec<(MorId, MorId)>,
    /// Components c′ ↦ (j(c′,c)·u)°.
    pub components: Vec<(ObjId, MorId)>,
    /// Whether every component is an isomorphism.
    pub components_iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub functor: Option<ExtensionFunctor>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SubobjectCategory {
    leq: Vec<Vec<bool>>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    homs: Vec<Vec<Vec<MorId>>>,
    comp: Vec<u32>,
    identity: Vec<MorId>,
    inclusion: Vec<Vec<Option<MorId>>>,
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    backing: Option<Backing>,
    flags: Vec<MorphismFlags>,
    inverse: Vec<Option<MorId>>,
    epi_component: Vec<Option<MorId>>,
    warnings: Vec<String>,
}

/// Raw description of a category, as read from JSON or built by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub leq: Vec<Vec<bool>>,
    /// `(dom, cod, is_inclusion)` per morphism.
    pub morphisms: Vec<(ObjId, ObjId, bool)>,
    /// `(f, g, f·g)` triples.
    pub compose: Vec<(MorId, MorId, MorId)>,
    pub object_names: Option<Vec<String>>,
    pub morphism_names: Option<Vec<String>>,
}

impl SubobjectCategory {
    /// Validate and build a category from raw data, checking the category
    /// axioms and that inclusions match the object order.
    pub fn from_spec(spec: CategorySpec) -> Result<Self, CategoryError> {
        Self::from_spec_with(spec, true)
    }

    /// As [`from_spec`](Self::from_spec), optionally skipping the associativity
    /// check for compositions known to be associative.
    pub fn from_spec_with(spec: CategorySpec, verify_associativity: bool) -> Result<Self, CategoryError> {
        let m = spec.morphisms.len();
        let mut comp = vec![NONE; m * m];
        for &(f, g, h) in &spec.compose {
            if f >= m || g >= m || h >= m {
                return Err(CategoryError::MorphismNotInCategory(format!("{f}, {g} or {h}")));
            }
            comp[f * m + g] = h as u32;
        }
        let n = spec.leq.len();
        let object_names = spec
            .object_names
            .unwrap_or_else(|| (0..n).map(|i| format!("c{i}")).collect());
        let morphism_names = spec
            .morphism_names
            .unwrap_or_else(|| (0..m).map(|i| format!("m{i}")).collect());
        Self::assemble(spec.leq, spec.morphisms, comp, object_names, morphism_names, None, verify_associativity)
    }

    fn assemble(
        leq: Vec<Vec<bool>>,
        morphisms: Vec<(ObjId, ObjId, bool)>,
        comp: Vec<u32>,
        object_names: Vec<String>,
        morphism_names: Vec<String>,
        backing: Option<Backing>,
        verify_associativity: bool,
    ) -> Result<Self, CategoryError> {
        let n = leq.len();
        let m = morphisms.len();
        check_partial_order(&leq)?;
        let mut homs = vec![vec![Vec::new(); n]; n];
        let mut dom = Vec::with_capacity(m);
        let mut cod = Vec::with_capacity(m);
        let mut inclusion = vec![vec![None; n]; n];
        for (id, &(a, b, inc)) in morphisms.iter().enumerate() {
            if a >= n || b >= n {
                return Err(CategoryError::UnknownObject(id));
            }
            dom.push(a);
            cod.push(b);
            homs[a][b].push(id);
            if inc {
                if !leq[a][b] || inclusion[a][b].is_some() {
                    return Err(CategoryError::InclusionMismatch(a, b));
                }
                inclusion[a][b] = Some(id);
            }
        }
        for f in 0..m {
            for &g in &outgoing(&homs, cod[f]) {
                let h = comp[f * m + g];
                if h == NONE {
                    return Err(CategoryError::MissingComposite(f, g));
                }
                let h = h as usize;
                if h >= m || dom[h] != dom[f] || cod[h] != cod[g] {
                    return Err(CategoryError::BadComposite(f, g, h));
                }
            }
        }
        let mut identity = Vec::with_capacity(n);
        for (a, row) in homs.iter().enumerate() {
            let id = row[a].iter().copied().find(|&i| {
                (0..m).all(|f| {
                    (dom[f] != a || comp[i * m + f] as usize == f)
                        && (cod[f] != a || comp[f * m + i] as usize == f)
                })
            });
            identity.push(id.ok_or(CategoryError::NoIdentity(a))?);
        }
        if verify_associativity {
            for f in 0..m {
                for &g in &outgoing(&homs, cod[f]) {
                    let fg = comp[f * m + g] as usize;
                    for &h in &outgoing(&homs, cod[g]) {
                        let gh = comp[g * m + h] as usize;
                        if comp[fg * m + h] != comp[f * m + gh] {
                            return Err(CategoryError::NotAssociative(f, g, h));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if leq[a][b] != inclusion[a][b].is_some() {
                    return Err(CategoryError::InclusionMismatch(a, b));
                }
            }
            if inclusion[a][a] != Some(identity[a]) {
                return Err(CategoryError::InclusionMismatch(a, a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if let (Some(x), Some(y)) = (inclusion[a][b], inclusion[b][c]) {
                        if comp[x * m + y] as usize != inclusion[a][c].unwrap_or(usize::MAX) {
                            return Err(CategoryError::InclusionMismatch(a, c));
                        }
                    }
                }
            }
        }
        let mut cat = SubobjectCategory {
            leq,
            dom,
            cod,
            homs,
            comp,
            identity,
            inclusion,
            object_names,
            morphism_names,
            backing,
            flags: Vec::new(),
            inverse: Vec::new(),
            epi_component: Vec::new(),
            warnings: Vec::new(),
        };
        cat.derive_flags();
        Ok(cat)
    }

    fn derive_flags(&mut self) {
        let m = self.num_morphisms();
        let n = self.num_objects();
        let mut flags = vec![MorphismFlags::default(); m];
        let mut inverse = vec![None; m];
        for f in 0..m {
            let (a, b) = (self.dom[f], self.cod[f]);
            let mono = (0..n).all(|c| {
                let mut seen = HashSet::new();
                self.homs[c][a].iter().all(|&x| seen.insert(self.compose(x, f)))
            });
            let epi = (0..n).all(|c| {
                let mut seen = HashSet::new();
                self.homs[b][c].iter().all(|&y| seen.insert(self.compose(f, y)))
            });
            inverse[f] = self.homs[b][a].iter().copied().find(|&g| {
                self.compose(f, g) == self.identity[a] && self.compose(g, f) == self.identity[b]
            });
            let retraction = self.leq[b][a]
                && self.inclusion[b][a].is_some_and(|j| self.compose(j, f) == self.identity[b]);
            flags[f] = MorphismFlags {
                mono,
                epi,
                bimorphism: mono && epi,
                isomorphism: inverse[f].is_some(),
                inclusion: self.inclusion[a][b] == Some(f),
                retraction,
            };
        }
        self.flags = flags;
        self.inverse = inverse;

        let mut candidates: Vec<Vec<MorId>> = vec![Vec::new(); m];
        for g in 0..m {
            if !self.flags[g].epi {
                continue;
            }
            let b0 = self.cod[g];
            for b in 0..n {
                if let Some(j) = self.inclusion[b0][b] {
                    candidates[self.compose(g, j)].push(g);
                }
            }
        }
        let mut warnings = Vec::new();
        self.epi_component = candidates
            .into_iter()
            .enumerate()
            .map(|(f, c)| {
                if c.len() > 1 {
                    warnings.push(format!(
                        "morphism {} has {} candidate epimorphic components",
                        self.morphism_names[f],
                        c.len()
                    ));
                }
                c.into_iter().min()
            })
            .collect();
        self.warnings = warnings;
    }

    pub fn num_objects(&self) -> usize {
        self.leq.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.dom.len()
    }

    pub fn leq(&self, a: ObjId, b: ObjId) -> bool {
        self.leq[a][b]
    }

    pub fn leq_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.dom[f]
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.cod[f]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a][b]
    }

    /// f·g (f first). Panics if the pair is not composable.
    #[inline]
    pub fn compose(&self, f: MorId, g: MorId) -> MorId {
        let h = self.comp[f * self.num_morphisms() + g];
        assert!(h != NONE, "morphisms {f} and {g} are not composable");
        h as usize
    }

    pub fn try_compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        if self.cod[f] != self.dom[g] {
            return None;
        }
        Some(self.compose(f, g))
    }

    pub fn compose_all(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.try_compose(acc, g))
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a]
    }

    pub fn inclusion(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.inclusion[a][b]
    }

    pub fn flags(&self, f: MorId) -> MorphismFlags {
        self.flags[f]
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.inverse[f]
    }

    /// f°: the unique epimorphism g with f = g·j for an inclusion j.
    pub fn epi_component(&self, f: MorId) -> Option<MorId> {
        self.epi_component[f]
    }

    pub fn image(&self, f: MorId) -> Option<ObjId> {
        self.epi_component[f].map(|g| self.cod[g])
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.object_names[a]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphism_names[f]
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphism_names
    }

    pub fn backing(&self) -> Option<&Backing> {
        self.backing.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.num_morphisms()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.num_objects()
    }

    pub fn is_inclusion(&self, f: MorId) -> bool {
        self.flags[f].inclusion
    }

    /// Objects `a` with `a ⊆ c`.
    pub fn subobjects(&self, c: ObjId) -> Vec<ObjId> {
        self.objects().filter(|&a| self.leq[a][c]).collect()
    }

    /// Objects ordered so that every object comes after all objects above it.
    pub fn descending_order(&self) -> Vec<ObjId> {
        let mut objs: Vec<ObjId> = self.objects().collect();
        objs.sort_by_key(|&a| (self.objects().filter(|&b| self.leq[a][b]).count(), a));
        objs
    }

    pub fn retractions(&self, from: ObjId, to: ObjId) -> Vec<MorId> {
        self.homs[from][to].iter().copied().filter(|&f| self.flags[f].retraction).collect()
    }

    /// The morphisms of ⟨c⟩: the subcategory generated by inclusions and
    /// retractions among subobjects of c.
    pub fn ideal_morphisms(&self, c: ObjId) -> Vec<MorId> {
        let subs = self.subobjects(c);
        let mut gens: Vec<MorId> = Vec::new();
        for &a in &subs {
            for &b in &subs {
                gens.extend(self.homs[a][b].iter().copied().filter(|&f| {
                    self.flags[f].inclusion || self.flags[f].retraction
                }));
            }
        }
        let mut set: BTreeSet<MorId> = gens.iter().copied().collect();
        let mut frontier: Vec<MorId> = set.iter().copied().collect();
        while let Some(f) = frontier.pop() {
            for &g in &gens {
                for h in [self.try_compose(f, g), self.try_compose(g, f)].into_iter().flatten() {
                    if set.insert(h) {
                        frontier.push(h);
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Classification with both literal and starred-relation flags.
    pub fn classify_morphism(&self, f: MorId) -> Result<Classification, CategoryError> {
        if f >= self.num_morphisms() {
            return Err(CategoryError::MorphismNotInCategory(f.to_string()));
        }
        let flags = self.flags[f];
        let Some(b) = &self.backing else {
            return Ok(Classification {
                flags,
                starred_mono: flags.mono,
                starred_epi: flags.epi,
                alternative_bimorphism: flags.bimorphism,
                agrees: true,
            });
        };
        let t = &b.triples[f];
        let ab = &b.abundance;
        let starred_mono = ab.r_star.related(t.e, t.u);
        let starred_epi = ab.l_star.related(t.u, t.f);
        let alternative_bimorphism = ab.l_star.related(t.e, t.u) && ab.r_star.related(t.u, t.f);
        Ok(Classification {
            flags,
            starred_mono,
            starred_epi,
            alternative_bimorphism,
            agrees: starred_mono == flags.mono && starred_epi == flags.epi,
        })
    }

    /// A factorisation q·u·j with q a retraction, u a bimorphism and j an inclusion.
    pub fn consistent_factorisation(&self, f: MorId) -> Result<Factorisation, CategoryError> {
        if let Some(b) = &self.backing {
            return self.backed_consistent_factorisation(b, f);
        }
        let g = self.epi_component[f].ok_or(CategoryError::NoConsistentFactorisation(f))?;
        self.search_factorisation(f, g, |u| self.flags[u].bimorphism, FactorisationKind::Consistent)
            .ok_or(CategoryError::NoConsistentFactorisation(f))
    }

    fn backed_consistent_factorisation(&self, b: &Backing, f: MorId) -> Result<Factorisation, CategoryError> {
        let t = b.triples[f];
        let s = &b.semigroup;
        let (g1, h1) = b.abundance.witnesses(t.u).map_err(|_| CategoryError::NotAbundant(t.u))?;
        let g = s.mul(g1, t.e);
        let h = s.mul(t.f, h1);
        let missing = || CategoryError::NoConsistentFactorisation(f);
        let q = b.find(t.e, g, g).ok_or_else(missing)?;
        let u = b.find(g, t.u, h).ok_or_else(missing)?;
        let j = b.find(h, h, t.f).ok_or_else(missing)?;
        let ok = self.flags[q].retraction
            && self.flags[u].bimorphism
            && self.flags[j].inclusion
            && self.compose_all(&[q, u, j]) == Some(f);
        if !ok {
            return Err(missing());
        }
        Ok(Factorisation {
            q,
            u,
            j,
            kind: FactorisationKind::Consistent,
            epi: self.compose(q, u),
            image: self.cod[u],
        })
    }

    fn search_factorisation(
        &self,
        f: MorId,
        epi: MorId,
        middle: impl Fn(MorId) -> bool,
        kind: FactorisationKind,
    ) -> Option<Factorisation> {
        let (a, im) = (self.dom[f], self.cod[epi]);
        let j = self.inclusion[im][self.cod[f]]?;
        for c in self.subobjects(a) {
            for q in self.retractions(a, c) {
                for &u in &self.homs[c][im] {
                    if middle(u) && self.compose(q, u) == epi {
                        return Some(Factorisation { q, u, j, kind, epi, image: im });
                    }
                }
            }
        }
        None
    }

    /// A normal factorisation q·u·j with u an isomorphism, if one exists.
    pub fn normal_factorisation(&self, f: MorId) -> Option<Factorisation> {
        if let Some(fact) = self.sandwich_factorisation(f) {
            return Some(fact);
        }
        let g = self.epi_component[f]?;
        self.search_factorisation(f, g, |u| self.flags[u].isomorphism, FactorisationKind::Normal)
    }

    /// For f = j·q (inclusion then retraction) in a semigroup-backed category,
    /// the factorisation ρ(e,eh,eh)·ρ(eh,eg,hg)·ρ(hg,hg,g) for h ∈ 𝒮(e,g).
    pub fn sandwich_factorisation(&self, f: MorId) -> Option<Factorisation> {
        let b = self.backing.as_ref()?;
        let s = &b.semigroup;
        let a = self.dom[f];
        let q0 = self.objects().find_map(|mid| {
            let j = self.inclusion[a][mid]?;
            self.homs[mid][self.cod[f]]
                .iter()
                .copied()
                .find(|&q| self.flags[q].retraction && self.compose(j, q) == f)
        })?;
        let e = b.object_rep[a];
        let g = b.triples[q0].u;
        let bi = biorder(s);
        let (ie, ig) = (bi.position(e)?, bi.position(g)?);
        for &h in &bi.sandwich[ie][ig] {
            let (eh, eg, hg) = (s.mul(e, h), s.mul(e, g), s.mul(h, g));
            let (Some(q), Some(u), Some(j)) = (b.find(e, eh, eh), b.find(eh, eg, hg), b.find(hg, hg, g))
            else {
                continue;
            };
            if self.flags[q].retraction
                && self.flags[u].isomorphism
                && self.flags[j].inclusion
                && self.compose_all(&[q, u, j]) == Some(f)
            {
                return Some(Factorisation {
                    q,
                    u,
                    j,
                    kind: FactorisationKind::Normal,
                    epi: self.compose(q, u),
                    image: self.cod[u],
                });
            }
        }
        None
    }

    /// Whether the bimorphism `u: c → d` extends to an isomorphism T: ⟨c⟩ → ⟨d⟩
    /// with T(c′) = im(j(c′,c)·u), natural through the components (j(c′,c)·u)°.
    pub fn is_consistent_bimorphism(&self, u: MorId) -> Result<ConsistencyReport, CategoryError> {
        if !self.flags[u].bimorphism {
            return Err(CategoryError::NotBimorphism(u));
        }
        let (c, d) = (self.dom[u], self.cod[u]);
        let fail = |msg: String| ConsistencyReport { consistent: false, functor: None, failure: Some(msg) };
        let mut theta: HashMap<ObjId, MorId> = HashMap::new();
        for c1 in self.subobjects(c) {
            let j = self.inclusion[c1][c].expect("subobject inclusion");
            match self.epi_component[self.compose(j, u)] {
                Some(g) => {
                    theta.insert(c1, g);
                }
                None => return Ok(fail(format!("no image for {} under the restriction", self.object_names[c1]))),
            }
        }
        let object_map: HashMap<ObjId, ObjId> = theta.iter().map(|(&a, &g)| (a, self.cod[g])).collect();
        let targets: BTreeSet<ObjId> = object_map.values().copied().collect();
        let d_subs: BTreeSet<ObjId> = self.subobjects(d).into_iter().collect();
        if targets != d_subs || targets.len() != object_map.len() {
            return Ok(fail("object map is not a bijection σ(c) → σ(d)".into()));
        }
        let source = self.ideal_morphisms(c);
        let target: BTreeSet<MorId> = self.ideal_morphisms(d).into_iter().collect();
        let mut morphism_map: HashMap<MorId, MorId> = HashMap::new();
        for &k in &source {
            let (a, b) = (self.dom[k], self.cod[k]);
            let lhs = self.compose(k, theta[&b]);
            let found: Vec<MorId> = self.homs[object_map[&a]][object_map[&b]]
                .iter()
                .copied()
                .filter(|&t| self.compose(theta[&a], t) == lhs)
                .collect();
            match found.as_slice() {
                [t] => {
                    morphism_map.insert(k, *t);
                }
                [] => return Ok(fail(format!("no image for {} under the extension", self.morphism_names[k]))),
                _ => return Ok(fail(format!("image of {} is not unique", self.morphism_names[k]))),
            }
        }
        for &k in &source {
            let t = morphism_map[&k];
            if !target.contains(&t) {
                return Ok(fail(format!("{} leaves the target ideal", self.morphism_names[t])));
            }
            if self.flags[k].inclusion && !self.flags[t].inclusion {
                return Ok(fail(format!("inclusion {} not sent to an inclusion", self.morphism_names[k])));
            }
        }
        for &k in &source {
            for &l in &source {
                if let Some(kl) = self.try_compose(k, l) {
                    if morphism_map.get(&kl).copied() != Some(self.compose(morphism_map[&k], morphism_map[&l])) {
                        return Ok(fail("extension does not preserve composition".into()));
                    }
                }
            }
        }
        let image: BTreeSet<MorId> = morphism_map.values().copied().collect();
        if image != target || image.len() != source.len() {
            return Ok(fail("extension is not a bijection ⟨c⟩ → ⟨d⟩".into()));
        }
        let mut objects: Vec<(ObjId, ObjId)> = object_map.into_iter().collect();
        objects.sort_unstable();
        let mut morphisms: Vec<(MorId, MorId)> = morphism_map.into_iter().collect();
        morphisms.sort_unstable();
        let mut components: Vec<(ObjId, MorId)> = theta.into_iter().collect();
        components.sort_unstable();
        let components_iso = components.iter().all(|&(_, g)| self.flags[g].isomorphism);
        Ok(ConsistencyReport {
            consistent: true,
            functor: Some(ExtensionFunctor { bimorphism: u, objects, morphisms, components, components_iso }),
            failure: None,
        })
    }

    /// The wide subcategory on the given morphism set, renumbered in
    /// increasing id order. Returns the subcategory and the embedding of its
    /// morphism ids.
    pub fn restrict_morphisms(&self, keep: &[MorId]) -> Result<(SubobjectCategory, Vec<MorId>), CategoryError> {
        let kept: Vec<MorId> = keep.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut index = vec![usize::MAX; self.num_morphisms()];
        for (i, &f) in kept.iter().enumerate() {
            index[f] = i;
        }
        let k = kept.len();
        let mut comp = vec![NONE; k * k];
        for (i, &f) in kept.iter().enumerate() {
            for (j, &g) in kept.iter().enumerate() {
                if let Some(h) = self.try_compose(f, g) {
                    if index[h] == usize::MAX {
                        return Err(CategoryError::AxiomFailure(format!(
                            "{} · {} = {} leaves the subcategory",
                            self.morphism_names[f], self.morphism_names[g], self.morphism_names[h]
                        )));
                    }
                    comp[i * k + j] = index[h] as u32;
                }
            }
        }
        let morphisms = kept.iter().map(|&f| (self.dom[f], self.cod[f], self.flags[f].inclusion)).collect();
        let names = kept.iter().map(|&f| self.morphism_names[f].clone()).collect();
        let sub = Self::assemble(self.leq.clone(), morphisms, comp, self.object_names.clone(), names, None, false)?;
        Ok((sub, kept))
    }

    /// Re-export as a raw spec (object order, morphisms, full composition).
    pub fn to_spec(&self) -> CategorySpec {
        let mut compose = Vec::new();
        for f in self.morphisms() {
            for &g in &outgoing(&self.homs, self.cod[f]) {
                compose.push((f, g, self.compose(f, g)));
            }
        }
        CategorySpec {
            leq: self.leq.clone(),
            morphisms: self.morphisms().map(|f| (self.dom[f], self.cod[f], self.flags[f].inclusion)).collect(),
            compose,
            object_names: Some(self.object_names.clone()),
            morphism_names: Some(self.morphism_names.clone()),
        }
    }
}

fn outgoing(homs: &[Vec<Vec<MorId>>], a: ObjId) -> Vec<MorId> {
    homs[a].iter().flatten().copied().collect()
}

fn check_partial_order(leq: &[Vec<bool>]) -> Result<(), CategoryError> {
    let n = leq.len();
    for (a, row) in leq.iter().enumerate() {
        if row.len() != n {
            return Err(CategoryError::NotPartialOrder(format!("row {a} has the wrong length")));
        }
        if !row[a] {
            return Err(CategoryError::NotPartialOrder(format!("object {a} is not ⊆ itself")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(CategoryError::NotPartialOrder(format!("objects {a} and {b} are ⊆ each other")));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(CategoryError::NotPartialOrder(format!("{a} ⊆ {b} ⊆ {c} but not {a} ⊆ {c}")));
                }
            }
        }
    }
    Ok(())
}

/// 𝕃(S) for `Left`, ℝ(S) for `Right`.
///
/// Objects are the ℒ-classes (ℛ-classes) of idempotents keyed by their least
/// idempotent; hom(Se, Sf) = {ρ(e,u,f) : u ∈ eSf}.
pub fn build_ideal_category(s: &FiniteSemigroup, side: Side) -> SubobjectCategory {
    let t = match side {
        Side::Left => s.clone(),
        Side::Right => s.opposite(),
    };
    let idem = t.idempotents();
    let mut object_rep: Vec<Elem> = Vec::new();
    let mut object_of_idempotent = vec![None; t.order()];
    for &e in &idem {
        let pos = object_rep.iter().position(|&r| t.mul(e, r) == e && t.mul(r, e) == r);
        let id = pos.unwrap_or_else(|| {
            object_rep.push(e);
            object_rep.len() - 1
        });
        object_of_idempotent[e] = Some(id);
    }
    let n = object_rep.len();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| t.mul(object_rep[a], object_rep[b]) == object_rep[a]).collect())
        .collect();

    let mut morphisms = Vec::new();
    let mut triples = Vec::new();
    let mut lookup = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let (e, f) = (object_rep[a], object_rep[b]);
            let set: BTreeSet<Elem> = t.elements().map(|x| t.mul(t.mul(e, x), f)).collect();
            for u in set {
                lookup.insert((a, u, b), morphisms.len());
                morphisms.push((a, b, u == e && leq[a][b]));
                triples.push(MorphismTriple { e, u, f, side });
            }
        }
    }
    let m = morphisms.len();
    let mut comp = vec![NONE; m * m];
    for x in 0..m {
        for y in 0..m {
            let (tx, ty) = (&triples[x], &triples[y]);
            if morphisms[x].1 == morphisms[y].0 {
                let a = morphisms[x].0;
                let c = morphisms[y].1;
                comp[x * m + y] = lookup[&(a, t.mul(tx.u, ty.u), c)] as u32;
            }
        }
    }
    let (letter, obj_name): (&str, fn(&str) -> String) = match side {
        Side::Left => ("ρ", |e| format!("S{e}")),
        Side::Right => ("λ", |e| format!("{e}S")),
    };
    let object_names = object_rep.iter().map(|&e| obj_name(&s.name(e))).collect();
    let morphism_names = triples
        .iter()
        .map(|tr| format!("{letter}({},{},{})", s.name(tr.e), s.name(tr.u), s.name(tr.f)))
        .collect();
    let abundance = is_abundant(&t);
    let backing = Backing { side, semigroup: t, abundance, object_rep, triples, object_of_idempotent, lookup };
    SubobjectCategory::assemble(leq, morphisms, comp, object_names, morphism_names, Some(backing), false)
        .expect("ideal categories satisfy the category axioms")
}

/// Check that `f` is a functor `src → tgt`.
pub fn check_functor(src: &SubobjectCategory, tgt: &SubobjectCategory, f: &Functor) -> Result<(), CategoryError> {
    if f.objects.len() != src.num_objects() || f.morphisms.len() != src.num_morphisms() {
        return Err(CategoryError::NotAFunctor("map sizes do not match the source".into()));
    }
    if f.objects.iter().any(|&o| o >= tgt.num_objects()) || f.morphisms.iter().any(|&m| m >= tgt.num_morphisms()) {
        return Err(CategoryError::NotAFunctor("map leaves the target".into()));
    }
    for g in src.morphisms() {
        let h = f.morphisms[g];
        if tgt.dom(h) != f.objects[src.dom(g)] || tgt.cod(h) != f.objects[src.cod(g)] {
            return Err(CategoryError::NotAFunctor(format!("{} has the wrong ends", src.morphism_name(g))));
        }
    }
    for a in src.objects() {
        if f.morphisms[src.identity(a)] != tgt.identity(f.objects[a]) {
            return Err(CategoryError::NotAFunctor(format!("identity at {} not preserved", src.object_name(a))));
        }
    }
    for g in src.morphisms() {
        for a in src.objects() {
            for &h in src.hom(src.cod(g), a) {
                if f.morphisms[src.compose(g, h)] != tgt.compose(f.morphisms[g], f.morphisms[h]) {
                    return Err(CategoryError::NotAFunctor(format!(
                        "composite {} · {} not preserved",
                        src.morphism_name(g),
                        src.morphism_name(h)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// An isomorphism of categories with subobjects: a functor, bijective on
/// objects and morphisms, preserving and reflecting inclusions.
pub fn check_isomorphism(src: &SubobjectCategory, tgt: &SubobjectCategory, f: &Functor) -> Result<(), CategoryError> {
    check_functor(src, tgt, f)?;
    let bijective = |v: &[usize], n: usize| {
        v.len() == n && v.iter().copied().collect::<HashSet<_>>().len() == n
    };
    if !bijective(&f.objects, tgt.num_objects()) || !bijective(&f.morphisms, tgt.num_morphisms()) {
        return Err(CategoryError::NotAFunctor("not bijective".into()));
    }
    for g in src.morphisms() {
        if src.is_inclusion(g) != tgt.is_inclusion(f.morphisms[g]) {
            return Err(CategoryError::NotAFunctor(format!(
                "inclusion status of {} not preserved",
                src.morphism_name(g)
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalIsoReport {
    pub holds: bool,
    pub witness: Option<String>,
}

/// Inclusion preserving, bijective on every hom-set, and an isomorphism
/// ⟨c⟩ → ⟨F(c)⟩ for every object c.
pub fn is_local_isomorphism(
    src: &SubobjectCategory,
    tgt: &SubobjectCategory,
    f: &Functor,
) -> Result<LocalIsoReport, CategoryError> {
    check_functor(src, tgt, f)?;
    let fail = |w: String| Ok(LocalIsoReport { holds: false, witness: Some(w) });
    for g in src.morphisms() {
        if src.is_inclusion(g) && !tgt.is_inclusion(f.morphisms[g]) {
            return fail(format!("inclusion {} not preserved", src.morphism_name(g)));
        }
    }
    for a in src.objects() {
        for b in src.objects() {
            let image: HashSet<MorId> = src.hom(a, b).iter().map(|&g| f.morphisms[g]).collect();
            let target = tgt.hom(f.objects[a], f.objects[b]);
            if image.len() != src.hom(a, b).len() || image.len() != target.len() {
                return fail(format!(
                    "hom({}, {}) is not mapped bijectively",
                    src.object_name(a),
                    src.object_name(b)
                ));
            }
        }
    }
    for c in src.objects() {
        let objs: HashSet<ObjId> = src.subobjects(c).into_iter().map(|a| f.objects[a]).collect();
        let target_objs: HashSet<ObjId> = tgt.subobjects(f.objects[c]).into_iter().collect();
        let mors: Vec<MorId> = src.ideal_morphisms(c);
        let image: HashSet<MorId> = mors.iter().map(|&g| f.morphisms[g]).collect();
        let target: HashSet<MorId> = tgt.ideal_morphisms(f.objects[c]).into_iter().collect();
        if objs != target_objs || objs.len() != src.subobjects(c).len() || image != target || image.len() != mors.len() {
            return fail(format!("restriction to ⟨{}⟩ is not an isomorphism", src.object_name(c)));
        }
    }
    Ok(LocalIsoReport { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> FiniteSemigroup {
        FiniteSemigroup::from_fn(2, |i, j| i.min(j)).unwrap()
    }

    fn z3() -> FiniteSemigroup {
        FiniteSemigroup::from_fn(3, |i, j| (i + j) % 3).unwrap()
    }

    fn find(c: &SubobjectCategory, e: Elem, u: Elem, f: Elem) -> MorId {
        c.backing().unwrap().find(e, u, f).unwrap()
    }

    #[test]
    fn sl2_left_category() {
        let c = build_ideal_category(&sl2(), Side::Left);
        assert_eq!(c.num_objects(), 2);
        assert_eq!(c.num_morphisms(), 5);
        assert!(c.leq(0, 1) && !c.leq(1, 0));
        let inc = find(&c, 0, 0, 1);
        assert_eq!(c.inclusion(0, 1), Some(inc));
        let f = c.flags(inc);
        assert!(f.mono && f.inclusion && !f.epi);
        let ret = find(&c, 1, 0, 0);
        let f = c.flags(ret);
        assert!(f.epi && f.retraction && !f.mono);
        let cl = c.classify_morphism(ret).unwrap();
        assert!(cl.agrees);
    }

    #[test]
    fn z3_is_a_group_category() {
        let c = build_ideal_category(&z3(), Side::Left);
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 3));
        assert!(c.morphisms().all(|m| c.flags(m).isomorphism));
        let (one, two) = (find(&c, 0, 1, 0), find(&c, 0, 2, 0));
        assert_eq!(c.compose(one, two), c.identity(0));
    }

    #[test]
    fn left_zero_sides() {
        let lz2 = FiniteSemigroup::from_fn(2, |i, _| i).unwrap();
        let l = build_ideal_category(&lz2, Side::Left);
        assert_eq!((l.num_objects(), l.num_morphisms()), (1, 1));
        let r = build_ideal_category(&lz2, Side::Right);
        assert_eq!(r.num_objects(), 2);
        assert!(!r.leq(0, 1) && !r.leq(1, 0));
        assert!(r.hom(0, 1).iter().all(|&m| r.flags(m).isomorphism));
        assert_eq!(r.hom(0, 1).len(), 1);
    }

    #[test]
    fn sl2_factorisations() {
        let c = build_ideal_category(&sl2(), Side::Left);
        let m = find(&c, 1, 0, 1);
        let fact = c.consistent_factorisation(m).unwrap();
        assert_eq!(fact.q, find(&c, 1, 0, 0));
        assert_eq!(fact.u, c.identity(0));
        assert_eq!(fact.j, find(&c, 0, 0, 1));
        let normal = c.normal_factorisation(m).unwrap();
        assert_eq!((normal.q, normal.u, normal.j), (fact.q, fact.u, fact.j));
        let id = c.identity(1);
        let fact = c.consistent_factorisation(id).unwrap();
        assert_eq!((fact.q, fact.u, fact.j), (id, id, id));
    }

    #[test]
    fn identity_bimorphism_is_consistent() {
        let c = build_ideal_category(&sl2(), Side::Left);
        let r = c.is_consistent_bimorphism(c.identity(1)).unwrap();
        assert!(r.consistent);
        let t = r.functor.unwrap();
        assert!(t.objects.iter().all(|(a, b)| a == b));
        assert!(t.morphisms.iter().all(|(a, b)| a == b));
        assert!(matches!(
            c.is_consistent_bimorphism(find(&c, 0, 0, 1)),
            Err(CategoryError::NotBimorphism(_))
        ));
    }

    #[test]
    fn spec_round_trip_and_validation() {
        let c = build_ideal_category(&sl2(), Side::Left);
        let again = SubobjectCategory::from_spec(c.to_spec()).unwrap();
        assert_eq!(again.num_morphisms(), 5);
        assert!(again.morphisms().all(|m| again.flags(m) == c.flags(m)));

        // Two objects, only identities and an inclusion: a valid category.
        let spec = CategorySpec {
            leq: vec![vec![true, true], vec![false, true]],
            morphisms: vec![(0, 0, true), (1, 1, true), (0, 1, true)],
            compose: vec![(0, 0, 0), (1, 1, 1), (0, 2, 2), (2, 1, 2)],
            ..Default::default()
        };
        let c = SubobjectCategory::from_spec(spec.clone()).unwrap();
        assert!(c.retractions(1, 0).is_empty());

        let mut bad = spec;
        bad.compose.pop();
        assert!(matches!(SubobjectCategory::from_spec(bad), Err(CategoryError::MissingComposite(2, 1))));
    }

    #[test]
    fn ideal_of_top_object_contains_retractions() {
        let c = build_ideal_category(&sl2(), Side::Left);
        let ideal = c.ideal_morphisms(1);
        assert_eq!(ideal.len(), 5);
        assert!(ideal.contains(&find(&c, 1, 0, 1)));
        assert_eq!(c.ideal_morphisms(0), vec![c.identity(0)]);
    }
}
