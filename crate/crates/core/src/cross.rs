//! Cross-connections Ω = (D, C; Γ, Δ), the semigroup 𝕊Ω of linked cone pairs,
//! and the round trips S → Ω_S → 𝕊Ω_S and Ω → 𝕊Ω → Ω_{𝕊Ω}.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::category::{
    build_ideal_category, check_isomorphism, is_local_isomorphism, CategoryError, Functor, MorId, ObjId,
    SubobjectCategory,
};
use crate::cone::{principal_cone, ConeError, ConeId, ConeMode, ConeSemigroup};
use crate::dual::{eta, DualCategory};
use crate::semigroup::{is_concordant, Elem, FiniteSemigroup, SemigroupError, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossError {
    #[error("not a local isomorphism: {0}")]
    NotLocalIsomorphism(String),
    #[error("cross-connection condition fails: {0}")]
    CrossConnectionViolation(String),
    #[error("({0}, {1}) is not in E_Ω")]
    PairNotInEOmega(ObjId, ObjId),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("several solutions: {0}")]
    MultipleSolutions(String),
    #[error("linked pairs are not closed under products: {0}")]
    LinkageClosureFailure(String),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("naturality failure: {0}")]
    NaturalityFailure(String),
    #[error("not concordant: {0}")]
    NotConcordant(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// One side of a cross-connection: a category, its cone semigroup and its dual.
#[derive(Debug, Clone)]
pub struct ConeSide {
    pub category: SubobjectCategory,
    pub cones: ConeSemigroup,
    pub dual: DualCategory,
}

impl ConeSide {
    pub fn build(category: SubobjectCategory, mode: ConeMode, budget: &Budget) -> Result<ConeSide, CrossError> {
        let cones = ConeSemigroup::build(&category, mode, budget)?;
        let dual = DualCategory::build(&category, &cones)?;
        Ok(ConeSide { category, cones, dual })
    }

    /// γ∗f° as a cone id.
    fn star_epi(&self, gamma: ConeId, f: MorId) -> Result<ConeId, CrossError> {
        Ok(self.cones.star_epi(&self.category, gamma, f)?)
    }
}

/// A cross-connection with C = `c.category`, D = `d.category`,
/// Γ: D → C* and Δ: C → D*.
#[derive(Debug, Clone)]
pub struct CrossConnection {
    pub c: ConeSide,
    pub d: ConeSide,
    pub gamma: Functor,
    pub delta: Functor,
    m_gamma: Vec<Vec<ObjId>>,
    m_delta: Vec<Vec<ObjId>>,
    e_omega: Vec<(ObjId, ObjId)>,
    gamma_cd: HashMap<(ObjId, ObjId), ConeId>,
    delta_cd: HashMap<(ObjId, ObjId), ConeId>,
}

impl CrossConnection {
    pub fn new(c: ConeSide, d: ConeSide, gamma: Functor, delta: Functor) -> Result<CrossConnection, CrossError> {
        for (name, src, tgt, f) in [
            ("Γ", &d.category, &c.dual.category, &gamma),
            ("Δ", &c.category, &d.dual.category, &delta),
        ] {
            let r = is_local_isomorphism(src, tgt, f)?;
            if !r.holds {
                return Err(CrossError::NotLocalIsomorphism(format!("{name}: {}", r.witness.unwrap_or_default())));
            }
        }
        let m_gamma = m_sets(&c, &gamma)?;
        let m_delta = m_sets(&d, &delta)?;
        let mut e_omega = Vec::new();
        for x in c.category.objects() {
            for y in d.category.objects() {
                let left = m_gamma[y].contains(&x);
                if left != m_delta[x].contains(&y) {
                    return Err(CrossError::CrossConnectionViolation(format!(
                        "{} ∈ MΓ({}) but {} ∉ MΔ({}) or vice versa",
                        c.category.object_name(x),
                        d.category.object_name(y),
                        d.category.object_name(y),
                        c.category.object_name(x)
                    )));
                }
                if left {
                    e_omega.push((x, y));
                }
            }
        }
        let mut omega = CrossConnection {
            c,
            d,
            gamma,
            delta,
            m_gamma,
            m_delta,
            e_omega,
            gamma_cd: HashMap::new(),
            delta_cd: HashMap::new(),
        };
        for &(x, y) in &omega.e_omega.clone() {
            let g = omega.solve_idempotent(&omega.c, omega.gamma.objects[y], x)?;
            let h = omega.solve_idempotent(&omega.d, omega.delta.objects[x], y)?;
            omega.gamma_cd.insert((x, y), g);
            omega.delta_cd.insert((x, y), h);
        }
        Ok(omega)
    }

    /// The unique idempotent cone with vertex `at` whose H-functor is the dual
    /// object `obj`: ε∗ε(at)⁻¹ for the representative ε.
    fn solve_idempotent(&self, side: &ConeSide, obj: ObjId, at: ObjId) -> Result<ConeId, CrossError> {
        let cat = &side.category;
        let eps = side.dual.functors[obj].epsilon;
        let u = side.cones.cone(eps).components[at];
        let inv = cat.inverse(u).ok_or_else(|| CrossError::NoSolution(format!("component at {} is not invertible", cat.object_name(at))))?;
        let xi = side.cones.cone(eps).star(cat, inv)?;
        let xi = side.cones.require(&xi, "ε ∗ ε(c)⁻¹")?;
        let matches: Vec<ConeId> = side
            .cones
            .idempotents()
            .into_iter()
            .filter(|&z| side.cones.cone(z).vertex == at && side.dual.object_of_cone[z] == Some(obj))
            .collect();
        match matches.as_slice() {
            [z] if *z == xi => Ok(xi),
            [] | [_] => Err(CrossError::NoSolution(format!("idempotent cone at {}", cat.object_name(at)))),
            _ => Err(CrossError::MultipleSolutions(format!("idempotent cone at {}", cat.object_name(at)))),
        }
    }

    pub fn e_omega(&self) -> &[(ObjId, ObjId)] {
        &self.e_omega
    }

    pub fn in_e_omega(&self, c: ObjId, d: ObjId) -> bool {
        self.gamma_cd.contains_key(&(c, d))
    }

    /// MΓ(d) ⊆ vC.
    pub fn m_gamma(&self, d: ObjId) -> &[ObjId] {
        &self.m_gamma[d]
    }

    /// MΔ(c) ⊆ vD.
    pub fn m_delta(&self, c: ObjId) -> &[ObjId] {
        &self.m_delta[c]
    }

    pub fn gamma_cone(&self, c: ObjId, d: ObjId) -> Result<ConeId, CrossError> {
        self.gamma_cd.get(&(c, d)).copied().ok_or(CrossError::PairNotInEOmega(c, d))
    }

    pub fn delta_cone(&self, c: ObjId, d: ObjId) -> Result<ConeId, CrossError> {
        self.delta_cd.get(&(c, d)).copied().ok_or(CrossError::PairNotInEOmega(c, d))
    }

    /// Γ(c, d) = Γ(d)(c).
    pub fn gamma_set(&self, c: ObjId, d: ObjId) -> &[ConeId] {
        &self.c.dual.functors[self.gamma.objects[d]].sets[c]
    }

    /// Δ(c, d) = Δ(c)(d).
    pub fn delta_set(&self, c: ObjId, d: ObjId) -> &[ConeId] {
        &self.d.dual.functors[self.delta.objects[c]].sets[d]
    }

    /// The transpose f‡ ∈ D(d1, d) of f: c′ → c, with d1 ∈ MΔ(c), d ∈ MΔ(c′).
    pub fn transpose(&self, f: MorId, d1: ObjId, d: ObjId) -> Result<MorId, CrossError> {
        let (c0, c) = (self.c.category.dom(f), self.c.category.cod(f));
        let src = self.delta_cone(c0, d)?;
        let anchor = self.delta_cone(c, d1)?;
        let h = &self.d.dual.functors[self.delta.objects[c0]];
        let t = &self.d.dual.transformations[self.delta.morphisms[f]];
        let pos = h
            .position(d, src)
            .ok_or_else(|| CrossError::CertificateFailure("δ(c′,d) is not in Δ(c′)(d)".into()))?;
        let zeta = t.maps[d][pos];
        Ok(eta(&self.d.category, &self.d.cones, anchor, d, zeta))
    }

    /// Check D(f‡, −) = η⁻¹_{δ(c′,d)} · Δ(f) · η_{δ(c,d1)} on every object.
    pub fn verify_transpose(&self, f: MorId, d1: ObjId, d: ObjId) -> Result<(), CrossError> {
        let g = self.transpose(f, d1, d)?;
        let dc = &self.d.category;
        let (c0, c) = (self.c.category.dom(f), self.c.category.cod(f));
        let src = self.delta_cone(c0, d)?;
        let anchor = self.delta_cone(c, d1)?;
        let h = &self.d.dual.functors[self.delta.objects[c0]];
        let t = &self.d.dual.transformations[self.delta.morphisms[f]];
        for x in dc.objects() {
            for &k in dc.hom(d, x) {
                let cone = self.d.star_epi(src, k)?;
                let pos = h.position(x, cone).ok_or_else(|| CrossError::CertificateFailure("δ∗h° outside Δ(c′)".into()))?;
                if eta(dc, &self.d.cones, anchor, x, t.maps[x][pos]) != dc.compose(g, k) {
                    return Err(CrossError::CertificateFailure(format!(
                        "transpose of {} fails at {}",
                        self.c.category.morphism_name(f),
                        dc.morphism_name(k)
                    )));
                }
            }
        }
        Ok(())
    }

    /// χ(c, d) on Γ(c, d), aligned with [`gamma_set`](Self::gamma_set).
    /// Every choice of c′ ∈ MΓ(d), d′ ∈ MΔ(c) is tried and must agree.
    pub fn chi(&self, c: ObjId, d: ObjId) -> Result<Vec<ConeId>, CrossError> {
        let cc = &self.c.category;
        let mut out = Vec::new();
        for &gamma in self.gamma_set(c, d) {
            let mut value: Option<ConeId> = None;
            for &c0 in self.m_gamma(d) {
                let anchor = self.gamma_cone(c0, d)?;
                let f = eta(cc, &self.c.cones, anchor, c, gamma);
                if self.c.star_epi(anchor, f)? != gamma {
                    return Err(CrossError::CertificateFailure("γ ≠ γ(c′,d) ∗ η(γ)°".into()));
                }
                for &d1 in self.m_delta(c) {
                    let g = self.transpose(f, d1, d)?;
                    let v = self.d.star_epi(self.delta_cone(c, d1)?, g)?;
                    match value {
                        Some(w) if w != v => {
                            return Err(CrossError::CertificateFailure(format!(
                                "χ({}, {}) depends on the anchor",
                                cc.object_name(c),
                                self.d.category.object_name(d)
                            )))
                        }
                        _ => value = Some(v),
                    }
                }
            }
            let v = value.ok_or_else(|| CrossError::NoSolution("empty M-set".into()))?;
            out.push(v);
        }
        Ok(out)
    }

    /// χ for every (c, d), with bijectivity onto Δ(c, d) and naturality in both
    /// arguments checked.
    pub fn chi_table(&self) -> Result<BTreeMap<(ObjId, ObjId), Vec<ConeId>>, CrossError> {
        let (cc, dc) = (&self.c.category, &self.d.category);
        let mut table = BTreeMap::new();
        for c in cc.objects() {
            for d in dc.objects() {
                let row = self.chi(c, d)?;
                let image: BTreeSet<ConeId> = row.iter().copied().collect();
                let target: BTreeSet<ConeId> = self.delta_set(c, d).iter().copied().collect();
                if image != target || image.len() != row.len() {
                    return Err(CrossError::CertificateFailure(format!(
                        "χ({}, {}) is not a bijection",
                        cc.object_name(c),
                        dc.object_name(d)
                    )));
                }
                table.insert((c, d), row);
            }
        }
        let chi_at = |c: ObjId, d: ObjId, gamma: ConeId| -> Option<ConeId> {
            let i = self.gamma_set(c, d).binary_search(&gamma).ok()?;
            Some(table[&(c, d)][i])
        };
        for f in cc.morphisms() {
            let (c, c1) = (cc.dom(f), cc.cod(f));
            let tf = &self.d.dual.transformations[self.delta.morphisms[f]];
            let hc = &self.d.dual.functors[self.delta.objects[c]];
            for d in dc.objects() {
                let hg = &self.c.dual.functors[self.gamma.objects[d]];
                for (i, &gamma) in self.gamma_set(c, d).iter().enumerate() {
                    let lhs = hg.apply(cc, f, gamma).and_then(|x| chi_at(c1, d, x));
                    let chi = table[&(c, d)][i];
                    let rhs = hc.position(d, chi).map(|p| tf.maps[d][p]);
                    if lhs.is_none() || lhs != rhs {
                        return Err(CrossError::NaturalityFailure(format!("χ is not natural at {}", cc.morphism_name(f))));
                    }
                }
            }
        }
        for g in dc.morphisms() {
            let (d, d1) = (dc.dom(g), dc.cod(g));
            let tg = &self.c.dual.transformations[self.gamma.morphisms[g]];
            let hd = &self.c.dual.functors[self.gamma.objects[d]];
            for c in cc.objects() {
                let hc = &self.d.dual.functors[self.delta.objects[c]];
                for (i, &gamma) in self.gamma_set(c, d).iter().enumerate() {
                    let moved = hd.position(c, gamma).map(|p| tg.maps[c][p]);
                    let lhs = moved.and_then(|x| chi_at(c, d1, x));
                    let rhs = hc.apply(dc, g, table[&(c, d)][i]);
                    if lhs.is_none() || lhs != rhs {
                        return Err(CrossError::NaturalityFailure(format!("χ is not natural at {}", dc.morphism_name(g))));
                    }
                }
            }
        }
        Ok(table)
    }

    /// The semigroup of linked cone pairs.
    pub fn linked_semigroup(&self) -> Result<SOmega, CrossError> {
        let table = self.chi_table()?;
        let mut anchors: BTreeMap<(ConeId, ConeId), (ObjId, ObjId)> = BTreeMap::new();
        for (&(c, d), row) in &table {
            for (&g, &h) in self.gamma_set(c, d).iter().zip(row) {
                anchors.entry((g, h)).or_insert((c, d));
            }
        }
        let pairs: Vec<(ConeId, ConeId)> = anchors.keys().copied().collect();
        let index: HashMap<(ConeId, ConeId), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let k = pairs.len();
        let mut mul = vec![0; k * k];
        for (i, &(g1, d1)) in pairs.iter().enumerate() {
            for (j, &(g2, d2)) in pairs.iter().enumerate() {
                let p = (self.c.cones.mul(g1, g2), self.d.cones.mul(d2, d1));
                mul[i * k + j] = *index
                    .get(&p)
                    .ok_or_else(|| CrossError::LinkageClosureFailure(format!("(γ{g1},δ{d1})·(γ{g2},δ{d2})")))?;
            }
        }
        let names = pairs.iter().map(|(g, h)| format!("(γ{g},δ{h})")).collect();
        let semigroup = FiniteSemigroup::from_table(k, mul)?.with_names(names)?;
        let mut idempotent_of = BTreeMap::new();
        for &(c, d) in &self.e_omega {
            let p = (self.gamma_cone(c, d)?, self.delta_cone(c, d)?);
            let id = *index
                .get(&p)
                .ok_or_else(|| CrossError::CertificateFailure("(γ(c,d), δ(c,d)) is not linked".into()))?;
            idempotent_of.insert((c, d), id);
        }
        let anchors = pairs.iter().map(|p| anchors[p]).collect();
        Ok(SOmega { pairs, anchors, index, semigroup, idempotent_of })
    }

    /// Checks on 𝕊Ω: concordance, its idempotents and biorder, the shape of
    /// Γ̂, and its normal part.
    pub fn somega_report(&self, s: &SOmega) -> Result<SOmegaReport, CrossError> {
        let sg = &s.semigroup;
        let concordance = is_concordant(sg);
        let idem: BTreeSet<usize> = sg.idempotents().into_iter().collect();
        let expected: BTreeSet<usize> = s.idempotent_of.values().copied().collect();
        let idempotents_match = idem == expected && expected.len() == self.e_omega.len();
        let mut biorder_matches = true;
        for (&(c, d), &x) in &s.idempotent_of {
            for (&(c1, d1), &y) in &s.idempotent_of {
                let omega_l = sg.mul(x, y) == x;
                let omega_r = sg.mul(y, x) == x;
                biorder_matches &= omega_l == self.c.category.leq(c, c1) && omega_r == self.d.category.leq(d, d1);
            }
        }
        let gamma_hat: BTreeSet<ConeId> = s.pairs.iter().map(|p| p.0).collect();
        let mut generated: BTreeSet<ConeId> = BTreeSet::new();
        let cc = &self.c.category;
        for &(c, d) in &self.e_omega {
            let g = self.gamma_cone(c, d)?;
            for x in cc.objects() {
                for &u in cc.hom(c, x) {
                    if cc.flags(u).bimorphism {
                        let cone = self.c.cones.cone(g).star(cc, u)?;
                        if let Some(id) = self.c.cones.find(&cone) {
                            generated.insert(id);
                        } else {
                            generated.insert(usize::MAX);
                        }
                    }
                }
            }
        }
        let gamma_hat_generated = generated == gamma_hat;
        let idem_gamma: BTreeSet<ConeId> =
            gamma_hat.iter().copied().filter(|&g| self.c.cones.cone(g).is_idempotent(cc)).collect();
        let expected_gamma: BTreeSet<ConeId> = self.gamma_cd.values().copied().collect();
        let gamma_hat_idempotents = idem_gamma == expected_gamma;
        let normal: Vec<usize> = (0..s.len())
            .filter(|&i| {
                let (g, h) = s.pairs[i];
                self.c.cones.cone(g).is_normal(cc) && self.d.cones.cone(h).is_normal(&self.d.category)
            })
            .collect();
        let (normal_part_regular, normal_part_idempotents) = match sg.restrict(&normal) {
            Ok((sub, emb)) => {
                let sub_idem: BTreeSet<usize> = sub.idempotents().into_iter().map(|i| emb[i]).collect();
                (sub.is_regular(), sub_idem == idem)
            }
            Err(_) => (false, false),
        };
        Ok(SOmegaReport {
            order: s.len(),
            concordant: concordance.concordant,
            regular: sg.is_regular(),
            idempotents_match,
            biorder_matches,
            gamma_hat_generated,
            gamma_hat_idempotents,
            normal_part_size: normal.len(),
            normal_part_regular,
            normal_part_idempotents,
        })
    }

    /// F_Ω: C → 𝕃(𝕊Ω) and G_Ω: D → ℝ(𝕊Ω), each checked to be an isomorphism.
    pub fn structure_functors(&self, s: &SOmega) -> Result<StructureFunctors, CrossError> {
        let l = build_ideal_category(&s.semigroup, Side::Left);
        let r = build_ideal_category(&s.semigroup, Side::Right);
        let (cc, dc) = (&self.c.category, &self.d.category);
        let sg = &s.semigroup;
        let lb = l.backing().expect("backed");
        let rb = r.backing().expect("backed");

        let x_c: Vec<usize> = cc
            .objects()
            .map(|c| {
                let choices: BTreeSet<ObjId> = self
                    .m_delta(c)
                    .iter()
                    .map(|&d| lb.object_of(s.idempotent_of[&(c, d)]).expect("idempotent"))
                    .collect();
                if choices.len() != 1 {
                    return Err(CrossError::CertificateFailure(format!("F_Ω at {} depends on d", cc.object_name(c))));
                }
                Ok(s.idempotent_of[&(c, self.m_delta(c)[0])])
            })
            .collect::<Result<_, _>>()?;
        let f_objects = x_c.iter().map(|&x| lb.object_of(x).unwrap()).collect();
        let f_morphisms = cc
            .morphisms()
            .map(|f| {
                let (a, b) = (cc.dom(f), cc.cod(f));
                let g = self.c.star_epi(self.gamma_cone(a, self.m_delta(a)[0])?, f)?;
                let p = unique_pair(s, |i| s.pairs[i].0 == g && sg.mul(sg.mul(x_c[a], i), x_c[b]) == i)?;
                lb.find(x_c[a], p, x_c[b]).ok_or_else(|| CrossError::NoSolution("F_Ω morphism".into()))
            })
            .collect::<Result<_, _>>()?;
        let f = Functor { objects: f_objects, morphisms: f_morphisms };

        let x_d: Vec<usize> = dc
            .objects()
            .map(|d| {
                let choices: BTreeSet<ObjId> = self
                    .m_gamma(d)
                    .iter()
                    .map(|&c| rb.object_of(s.idempotent_of[&(c, d)]).expect("idempotent"))
                    .collect();
                if choices.len() != 1 {
                    return Err(CrossError::CertificateFailure(format!("G_Ω at {} depends on c", dc.object_name(d))));
                }
                Ok(s.idempotent_of[&(self.m_gamma(d)[0], d)])
            })
            .collect::<Result<_, _>>()?;
        let g_objects = x_d.iter().map(|&x| rb.object_of(x).unwrap()).collect();
        let g_morphisms = dc
            .morphisms()
            .map(|g| {
                let (a, b) = (dc.dom(g), dc.cod(g));
                let h = self.d.star_epi(self.delta_cone(self.m_gamma(a)[0], a)?, g)?;
                let p = unique_pair(s, |i| s.pairs[i].1 == h && sg.mul(sg.mul(x_d[b], i), x_d[a]) == i)?;
                rb.find(x_d[a], p, x_d[b]).ok_or_else(|| CrossError::NoSolution("G_Ω morphism".into()))
            })
            .collect::<Result<_, _>>()?;
        let g = Functor { objects: g_objects, morphisms: g_morphisms };
        let f_iso = check_isomorphism(cc, &l, &f).map_err(|e| e.to_string());
        let g_iso = check_isomorphism(dc, &r, &g).map_err(|e| e.to_string());
        Ok(StructureFunctors { left: l, right: r, f, g, f_iso, g_iso })
    }
}

fn unique_pair(s: &SOmega, pred: impl Fn(usize) -> bool) -> Result<usize, CrossError> {
    let found: Vec<usize> = (0..s.len()).filter(|&i| pred(i)).collect();
    match found.as_slice() {
        [p] => Ok(*p),
        [] => Err(CrossError::NoSolution("no linked pair with the required component".into())),
        _ => Err(CrossError::MultipleSolutions("several linked pairs with the required component".into())),
    }
}

fn m_sets(side: &ConeSide, f: &Functor) -> Result<Vec<Vec<ObjId>>, CrossError> {
    let cat = &side.category;
    f.objects
        .iter()
        .map(|&obj| {
            let eps = side.dual.functors[obj].epsilon;
            let direct = side.cones.cone(eps).mset(cat);
            let via_vertices: BTreeSet<ObjId> = side
                .cones
                .idempotents()
                .into_iter()
                .filter(|&z| side.dual.object_of_cone[z] == Some(obj))
                .map(|z| side.cones.cone(z).vertex)
                .collect();
            if via_vertices.into_iter().collect::<Vec<_>>() != direct {
                return Err(CrossError::CertificateFailure("M-set disagrees with vertices of ℛ-related idempotents".into()));
            }
            Ok(direct)
        })
        .collect()
}

/// 𝕊Ω: linked pairs (γ, δ) under (γ,δ)(γ′,δ′) = (γγ′, δ′δ).
#[derive(Debug, Clone)]
pub struct SOmega {
    pub pairs: Vec<(ConeId, ConeId)>,
    /// Least (c, d) with the pair in Γ(c,d) × Δ(c,d).
    pub anchors: Vec<(ObjId, ObjId)>,
    index: HashMap<(ConeId, ConeId), usize>,
    pub semigroup: FiniteSemigroup,
    /// (c, d) ∈ E_Ω ↦ (γ(c,d), δ(c,d)).
    pub idempotent_of: BTreeMap<(ObjId, ObjId), usize>,
}

impl SOmega {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn find(&self, gamma: ConeId, delta: ConeId) -> Option<usize> {
        self.index.get(&(gamma, delta)).copied()
    }

    /// The E_Ω pair of an idempotent.
    pub fn object_pair(&self, x: usize) -> Option<(ObjId, ObjId)> {
        self.idempotent_of.iter().find(|(_, &v)| v == x).map(|(&k, _)| k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SOmegaReport {
    pub order: usize,
    pub concordant: bool,
    pub regular: bool,
    pub idempotents_match: bool,
    pub biorder_matches: bool,
    pub gamma_hat_generated: bool,
    pub gamma_hat_idempotents: bool,
    pub normal_part_size: usize,
    pub normal_part_regular: bool,
    pub normal_part_idempotents: bool,
}

impl SOmegaReport {
    pub fn all_hold(&self) -> bool {
        self.concordant
            && self.idempotents_match
            && self.biorder_matches
            && self.gamma_hat_generated
            && self.gamma_hat_idempotents
            && self.normal_part_regular
            && self.normal_part_idempotents
    }
}

#[derive(Debug, Clone)]
pub struct StructureFunctors {
    pub left: SubobjectCategory,
    pub right: SubobjectCategory,
    pub f: Functor,
    pub g: Functor,
    pub f_iso: Result<(), String>,
    pub g_iso: Result<(), String>,
}

/// Ω_S with its side data.
#[derive(Debug, Clone)]
pub struct OmegaS {
    pub semigroup: FiniteSemigroup,
    pub omega: CrossConnection,
    /// a ↦ ρ^a in the left cone semigroup.
    pub rho: Vec<ConeId>,
    /// a ↦ λ^a in the right cone semigroup.
    pub lambda: Vec<ConeId>,
}

#[derive(Debug, Clone, Copy)]
pub struct OmegaOptions {
    pub mode: ConeMode,
    pub budget: Budget,
}

impl Default for OmegaOptions {
    fn default() -> Self {
        OmegaOptions { mode: ConeMode::PrincipalOnly, budget: Budget::unlimited() }
    }
}

/// Build Ω_S = (ℝ(S), 𝕃(S); Γ_S, Δ_S) for a concordant semigroup.
pub fn build_omega_s(s: &FiniteSemigroup, opts: &OmegaOptions) -> Result<OmegaS, CrossError> {
    let report = is_concordant(s);
    if !report.concordant {
        let why = if !report.abundant {
            "not abundant"
        } else if !report.idempotent_connected {
            "not idempotent-connected"
        } else {
            "idempotent-generated part is not regular"
        };
        return Err(CrossError::NotConcordant(why.into()));
    }
    let left = ConeSide::build(build_ideal_category(s, Side::Left), opts.mode, &opts.budget)?;
    let right = ConeSide::build(build_ideal_category(s, Side::Right), opts.mode, &opts.budget)?;
    let principal = |side: &ConeSide| -> Result<Vec<ConeId>, CrossError> {
        s.elements()
            .map(|a| {
                let cone = principal_cone(&side.category, a)?;
                Ok(side.cones.require(&cone, "principal cone")?)
            })
            .collect()
    };
    let rho = principal(&left)?;
    let lambda = principal(&right)?;
    let gamma = ideal_functor(&right, &left, &rho)?;
    let delta = ideal_functor(&left, &right, &lambda)?;
    let omega = CrossConnection::new(left, right, gamma, delta)?;
    Ok(OmegaS { semigroup: s.clone(), omega, rho, lambda })
}

/// The functor `src` → `tgt`* sending the object of e to H(π^e) and the
/// morphism (e,u,f) to the transformation induced by (f,u,e) of `tgt`.
fn ideal_functor(src: &ConeSide, tgt: &ConeSide, principal: &[ConeId]) -> Result<Functor, CrossError> {
    let sb = src.category.backing().expect("backed");
    let tb = tgt.category.backing().expect("backed");
    let objects = sb
        .object_rep
        .iter()
        .map(|&e| tgt.dual.object(principal[e]))
        .collect::<Result<Vec<_>, _>>()?;
    let morphisms = sb
        .triples
        .iter()
        .map(|t| {
            let k = tb
                .find(t.f, t.u, t.e)
                .ok_or_else(|| CrossError::NoSolution(format!("dual triple of {}", src.category.morphism_name(0))))?;
            Ok(tgt.dual.transformation(&tgt.category, &tgt.cones, principal[t.e], principal[t.f], k)?)
        })
        .collect::<Result<Vec<_>, CrossError>>()?;
    Ok(Functor { objects, morphisms })
}

impl OmegaS {
    /// Γ_S = G ∘ FS_ρ: the object of eS goes to H(ρ^e) and λ(e,u,f) to the
    /// transformation induced by ρ^u(c_{ρ^f})·j.
    pub fn check_gamma_factorisation(&self) -> Result<(), CrossError> {
        let side = &self.omega.c;
        let cat = &side.category;
        let rb = self.omega.d.category.backing().expect("backed");
        for (m, t) in rb.triples.iter().enumerate() {
            let (re, ru, rf) = (self.rho[t.e], self.rho[t.u], self.rho[t.f]);
            let cs = &side.cones;
            if cs.mul(cs.mul(rf, ru), re) != ru {
                return Err(CrossError::CertificateFailure(format!("ρ^u ∉ ρ^f Ĉ ρ^e for {}", self.omega.d.category.morphism_name(m))));
            }
            let gamma = cs.cone(ru);
            let j = cat
                .inclusion(gamma.vertex, cs.cone(re).vertex)
                .ok_or_else(|| CrossError::CertificateFailure("vertex of ρ^u not below ρ^e".into()))?;
            let k = cat.compose(gamma.components[cs.cone(rf).vertex], j);
            let via = side.dual.transformation(cat, cs, re, rf, k)?;
            if via != self.omega.gamma.morphisms[m] {
                return Err(CrossError::CertificateFailure(format!(
                    "Γ_S and G∘FS_ρ differ at {}",
                    self.omega.d.category.morphism_name(m)
                )));
            }
        }
        Ok(())
    }

    /// φ: a ↦ (ρ^a, λ^a), checked to be an isomorphism S → 𝕊Ω_S.
    pub fn phi(&self, s_omega: &SOmega) -> Result<Vec<usize>, CrossError> {
        let s = &self.semigroup;
        let image = s
            .elements()
            .map(|a| {
                s_omega
                    .find(self.rho[a], self.lambda[a])
                    .ok_or_else(|| CrossError::CertificateFailure(format!("(ρ^{0}, λ^{0}) is not linked", s.name(a))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for a in s.elements() {
            for b in s.elements() {
                if image[s.mul(a, b)] != s_omega.semigroup.mul(image[a], image[b]) {
                    return Err(CrossError::CertificateFailure(format!("φ is not multiplicative at ({}, {})", s.name(a), s.name(b))));
                }
            }
        }
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        if distinct.len() != s.order() || s_omega.len() != s.order() {
            return Err(CrossError::CertificateFailure(format!(
                "φ is not bijective: |S| = {}, |𝕊Ω| = {}, |φ(S)| = {}",
                s.order(),
                s_omega.len(),
                distinct.len()
            )));
        }
        Ok(image)
    }
}

/// Element of S corresponding to an idempotent pair, via the inverse of φ.
pub fn phi_inverse(phi: &[usize], x: usize) -> Option<Elem> {
    phi.iter().position(|&y| y == x)
}
