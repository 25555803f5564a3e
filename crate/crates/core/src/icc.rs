//! The inductive cancellative category 𝓘(Ω) of a cross-connection.
//!
//! Objects are the pairs of E_Ω, morphisms are bimorphisms of C between their
//! first coordinates, and each morphism carries the connecting bijection of its
//! linked pair in 𝕊Ω, which drives the order, restrictions and corestrictions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::axioms::Verdict;
use crate::category::{MorId, ObjId};
use crate::ccmorphism::CcMorphism;
use crate::cross::{CrossConnection, CrossError, SOmega};
use crate::semigroup::{connecting_bijection, is_abundant, singular_squares};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IccMorphism {
    pub dom: usize,
    pub cod: usize,
    /// Underlying bimorphism of C.
    pub u: MorId,
}

#[derive(Debug, Clone)]
pub struct Icc {
    pub objects: Vec<(ObjId, ObjId)>,
    /// Element of 𝕊Ω for each object.
    pub idempotent: Vec<usize>,
    pub morphisms: Vec<IccMorphism>,
    /// `upsilon[x]`: the connecting bijection ω(d x) → ω(r x) on object ids.
    pub upsilon: Vec<BTreeMap<usize, usize>>,
    /// Pairs (u, v) with u ≤ v.
    pub order: BTreeSet<(usize, usize)>,
    /// Distinguished morphisms [e, f] for e ℛ f or e ℒ f.
    pub distinguished: BTreeMap<(usize, usize), usize>,
    pub warnings: Vec<String>,
    obj_index: HashMap<(ObjId, ObjId), usize>,
    lookup: HashMap<(usize, usize, MorId), usize>,
    identity: Vec<usize>,
    product: Vec<usize>,
    k: usize,
}

impl Icc {
    pub fn build(omega: &CrossConnection, s: &SOmega) -> Result<Icc, CrossError> {
        let cc = &omega.c.category;
        let sg = &s.semigroup;
        let objects: Vec<(ObjId, ObjId)> = omega.e_omega().to_vec();
        let obj_index: HashMap<(ObjId, ObjId), usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let idempotent: Vec<usize> = objects.iter().map(|p| s.idempotent_of[p]).collect();
        let of_elem: HashMap<usize, usize> = idempotent.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = objects.len();
        let mut product = vec![usize::MAX; k * k];
        for i in 0..k {
            for j in 0..k {
                if let Some(&p) = of_elem.get(&sg.mul(idempotent[i], idempotent[j])) {
                    product[i * k + j] = p;
                }
            }
        }
        let abundance = is_abundant(sg);
        let mut morphisms = Vec::new();
        let mut lookup = HashMap::new();
        let mut upsilon = Vec::new();
        let mut warnings = Vec::new();
        for (i, &(c, d)) in objects.iter().enumerate() {
            for (j, &(c1, d1)) in objects.iter().enumerate() {
                for &u in cc.hom(c, c1) {
                    if !cc.flags(u).bimorphism {
                        continue;
                    }
                    let g = omega.c.cones.cone(omega.gamma_cone(c, d)?).star(cc, u)?;
                    let g = omega.c.cones.require(&g, "γ(c,d) ∗ u")?;
                    let t = omega.transpose(u, d1, d)?;
                    let h = omega.d.cones.star_epi(&omega.d.category, omega.delta_cone(c1, d1)?, t)?;
                    let x = s
                        .find(g, h)
                        .ok_or_else(|| CrossError::CertificateFailure(format!("linked pair of {} is missing", cc.morphism_name(u))))?;
                    let (e, f) = (idempotent[i], idempotent[j]);
                    if !abundance.r_star.related(x, e) || !abundance.l_star.related(x, f) {
                        return Err(CrossError::CertificateFailure(format!(
                            "linked pair of {} is not starred-related to its ends",
                            cc.morphism_name(u)
                        )));
                    }
                    let map = connecting_bijection(sg, x, e, f).ok_or_else(|| {
                        CrossError::CertificateFailure(format!("no connecting bijection for {}", cc.morphism_name(u)))
                    })?;
                    if !map.forced {
                        warnings.push(format!("connecting bijection of {} is not unique", cc.morphism_name(u)));
                    }
                    let ups = map.pairs.iter().map(|&(a, b)| (of_elem[&a], of_elem[&b])).collect();
                    lookup.insert((i, j, u), morphisms.len());
                    morphisms.push(IccMorphism { dom: i, cod: j, u });
                    upsilon.push(ups);
                }
            }
        }
        let identity = (0..k)
            .map(|i| lookup.get(&(i, i, cc.identity(objects[i].0))).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CrossError::CertificateFailure("identity missing".into()))?;
        let mut icc = Icc {
            objects,
            idempotent,
            morphisms,
            upsilon,
            order: BTreeSet::new(),
            distinguished: BTreeMap::new(),
            warnings,
            obj_index,
            lookup,
            identity,
            product,
            k,
        };
        for x in 0..icc.morphisms.len() {
            let d = icc.morphisms[x].dom;
            for e in 0..k {
                if icc.omega(e, d) {
                    if let Some(y) = icc.restriction_in(omega, e, x) {
                        icc.order.insert((y, x));
                    }
                }
            }
        }
        for e in 0..k {
            for f in 0..k {
                if icc.r_related(e, f) || icc.l_related(e, f) {
                    let (c, _) = icc.objects[e];
                    let g = omega.c.cones.cone(omega.gamma_cone(icc.objects[f].0, icc.objects[f].1)?);
                    if let Some(&m) = icc.lookup.get(&(e, f, g.components[c])) {
                        icc.distinguished.insert((e, f), m);
                    }
                }
            }
        }
        Ok(icc)
    }

    pub fn num_objects(&self) -> usize {
        self.k
    }

    pub fn object_id(&self, c: ObjId, d: ObjId) -> Option<usize> {
        self.obj_index.get(&(c, d)).copied()
    }

    pub fn find(&self, dom: usize, cod: usize, u: MorId) -> Option<usize> {
        self.lookup.get(&(dom, cod, u)).copied()
    }

    pub fn identity(&self, e: usize) -> usize {
        self.identity[e]
    }

    /// Product of idempotents in 𝕊Ω, when it is again an object.
    pub fn mul(&self, e: usize, f: usize) -> Option<usize> {
        let p = self.product[e * self.k + f];
        (p != usize::MAX).then_some(p)
    }

    pub fn omega(&self, e: usize, f: usize) -> bool {
        self.mul(e, f) == Some(e) && self.mul(f, e) == Some(e)
    }

    pub fn omega_l(&self, e: usize, f: usize) -> bool {
        self.mul(e, f) == Some(e)
    }

    pub fn omega_r(&self, e: usize, f: usize) -> bool {
        self.mul(f, e) == Some(e)
    }

    pub fn r_related(&self, e: usize, f: usize) -> bool {
        self.omega_r(e, f) && self.omega_r(f, e)
    }

    pub fn l_related(&self, e: usize, f: usize) -> bool {
        self.omega_l(e, f) && self.omega_l(f, e)
    }

    pub fn compose(&self, omega: &CrossConnection, x: usize, y: usize) -> Option<usize> {
        let (a, b) = (self.morphisms[x], self.morphisms[y]);
        if a.cod != b.dom {
            return None;
        }
        self.find(a.dom, b.cod, omega.c.category.compose(a.u, b.u))
    }

    /// e↿x = (j(c_e, c_{d x})·x)° from e to eυ_x.
    fn restriction_in(&self, omega: &CrossConnection, e: usize, x: usize) -> Option<usize> {
        let cc = &omega.c.category;
        let m = self.morphisms[x];
        let target = *self.upsilon[x].get(&e)?;
        let j = cc.inclusion(self.objects[e].0, self.objects[m.dom].0)?;
        let r = cc.epi_component(cc.compose(j, m.u))?;
        self.find(e, target, r)
    }

    /// The unique y ≤ x with d(y) = e.
    pub fn restriction(&self, e: usize, x: usize) -> Option<usize> {
        let found: Vec<usize> = self.below(x).filter(|&y| self.morphisms[y].dom == e).collect();
        (found.len() == 1).then(|| found[0])
    }

    /// The unique y ≤ x with r(y) = f.
    pub fn corestriction(&self, x: usize, f: usize) -> Option<usize> {
        let found: Vec<usize> = self.below(x).filter(|&y| self.morphisms[y].cod == f).collect();
        (found.len() == 1).then(|| found[0])
    }

    fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().filter(move |&&(_, b)| b == x).map(|&(a, _)| a)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.contains(&(x, y))
    }

    pub fn dist(&self, e: usize, f: usize) -> Option<usize> {
        self.distinguished.get(&(e, f)).copied()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IccReport {
    pub results: BTreeMap<String, Verdict>,
}

impl IccReport {
    pub fn all_pass(&self) -> bool {
        self.results.values().all(Verdict::passed)
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.results.iter().find_map(|(k, v)| match v {
            Verdict::Fail(w) => Some((k.as_str(), w.as_str())),
            _ => None,
        })
    }
}

fn verdict(w: Option<String>) -> Verdict {
    w.map_or(Verdict::Pass, Verdict::Fail)
}

/// OCC1–OCC5, the order axioms, distinguished-morphism axioms (i)–(iii),
/// ICC1, its dual and ICC2.
pub fn check_icc_axioms(icc: &Icc, omega: &CrossConnection, s: &SOmega) -> IccReport {
    let cc = &omega.c.category;
    let n = icc.morphisms.len();
    let name = |x: usize| {
        let m = icc.morphisms[x];
        format!("{}: {}→{}", cc.morphism_name(m.u), m.dom, m.cod)
    };
    let mut results = BTreeMap::new();

    // OCC1: every morphism is cancellable on both sides in 𝓘.
    let occ1 = (0..n).find_map(|x| {
        let m = icc.morphisms[x];
        let mut seen_l = HashMap::new();
        let mut seen_r = HashMap::new();
        for y in 0..n {
            if icc.morphisms[y].cod == m.dom {
                let p = icc.compose(omega, y, x)?;
                if seen_l.insert(p, y).is_some() {
                    return Some(format!("{} is not right-cancellable", name(x)));
                }
            }
            if icc.morphisms[y].dom == m.cod {
                let p = icc.compose(omega, x, y)?;
                if seen_r.insert(p, y).is_some() {
                    return Some(format!("{} is not left-cancellable", name(x)));
                }
            }
        }
        None
    });
    let closed = (0..n).all(|x| (0..n).all(|y| icc.morphisms[x].cod != icc.morphisms[y].dom || icc.compose(omega, x, y).is_some()));
    results.insert("OCC1".into(), verdict(if closed { occ1 } else { Some("composition leaves 𝓘".into()) }));

    // ≤ is a partial order and agrees with ω on identities.
    let mut order_w = None;
    for x in 0..n {
        if !icc.leq(x, x) {
            order_w = Some(format!("{} is not ≤ itself", name(x)));
            break;
        }
    }
    if order_w.is_none() {
        'o: for &(a, b) in &icc.order {
            if a != b && icc.leq(b, a) {
                order_w = Some(format!("{} and {} are ≤ each other", name(a), name(b)));
                break;
            }
            for &(b2, c) in icc.order.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b2, b);
                if !icc.leq(a, c) {
                    order_w = Some(format!("≤ is not transitive at {}", name(a)));
                    break 'o;
                }
            }
        }
    }
    if order_w.is_none() {
        for e in 0..icc.k {
            for f in 0..icc.k {
                if icc.leq(icc.identity(e), icc.identity(f)) != icc.omega(e, f) {
                    order_w = Some(format!("1_{e} ≤ 1_{f} disagrees with ω"));
                }
                let (ce, de) = icc.objects[e];
                let (cf, df) = icc.objects[f];
                let pointwise = cc.leq(ce, cf) && omega.d.category.leq(de, df);
                if pointwise != icc.omega(e, f) {
                    order_w = Some(format!("ω on objects {e}, {f} disagrees with ⊆"));
                }
            }
        }
    }
    results.insert("order".into(), verdict(order_w));

    // OCC2
    let mut by_dom: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &(v, y) in &icc.order {
        by_dom.entry(icc.morphisms[v].dom).or_default().push((v, y));
    }
    let mut occ2 = None;
    'a: for &(u, x) in &icc.order {
        for &(v, y) in by_dom.get(&icc.morphisms[u].cod).map(Vec::as_slice).unwrap_or(&[]) {
            if icc.morphisms[x].cod != icc.morphisms[y].dom {
                continue;
            }
            let (Some(uv), Some(xy)) = (icc.compose(omega, u, v), icc.compose(omega, x, y)) else {
                occ2 = Some("composite missing".into());
                break 'a;
            };
            if !icc.leq(uv, xy) {
                occ2 = Some(format!("{} ≤ {} and {} ≤ {} but not uv ≤ xy", name(u), name(x), name(v), name(y)));
                break 'a;
            }
        }
    }
    results.insert("OCC2".into(), verdict(occ2));

    // OCC3
    let occ3 = icc.order.iter().find_map(|&(x, y)| {
        let (a, b) = (icc.morphisms[x], icc.morphisms[y]);
        (!icc.leq(icc.identity(a.dom), icc.identity(b.dom)) || !icc.leq(icc.identity(a.cod), icc.identity(b.cod)))
            .then(|| format!("{} ≤ {} but identities are not ordered", name(x), name(y)))
    });
    results.insert("OCC3".into(), verdict(occ3));

    // OCC4 / OCC5
    let mut occ4 = None;
    let mut occ5 = None;
    for x in 0..n {
        let m = icc.morphisms[x];
        for e in 0..icc.k {
            if occ4.is_none() && icc.leq(icc.identity(e), icc.identity(m.dom)) && icc.restriction(e, x).is_none() {
                occ4 = Some(format!("no unique restriction of {} to {e}", name(x)));
            }
            if occ5.is_none() && icc.leq(icc.identity(e), icc.identity(m.cod)) && icc.corestriction(x, e).is_none() {
                occ5 = Some(format!("no unique corestriction of {} to {e}", name(x)));
            }
        }
    }
    results.insert("OCC4".into(), verdict(occ4));
    results.insert("OCC5".into(), verdict(occ5));

    // Distinguished morphisms.
    let k = icc.k;
    let mut dist_w = None;
    for e in 0..k {
        for f in 0..k {
            if (icc.r_related(e, f) || icc.l_related(e, f)) && icc.dist(e, f).is_none() {
                dist_w = Some(format!("[{e},{f}] is missing"));
            }
        }
        if icc.dist(e, e) != Some(icc.identity(e)) {
            dist_w = Some(format!("[{e},{e}] is not the identity"));
        }
    }
    results.insert("dist(i)".into(), verdict(dist_w));
    let mut dist2 = None;
    for e in 0..k {
        for f in 0..k {
            for g in 0..k {
                let chain = (icc.r_related(e, f) && icc.r_related(f, g)) || (icc.l_related(e, f) && icc.l_related(f, g));
                if !chain {
                    continue;
                }
                let comp = icc.dist(e, f).zip(icc.dist(f, g)).and_then(|(a, b)| icc.compose(omega, a, b));
                if comp.is_none() || comp != icc.dist(e, g) {
                    dist2 = Some(format!("[{e},{f}][{f},{g}] ≠ [{e},{g}]"));
                }
            }
        }
    }
    results.insert("dist(ii)".into(), verdict(dist2));
    let mut dist3 = None;
    for (&(g, h), &gh) in &icc.distinguished {
        for e in 0..k {
            if !icc.omega(e, g) {
                continue;
            }
            let f = icc.mul(h, e).and_then(|he| icc.mul(he, h));
            let ok = f.and_then(|f| icc.dist(e, f)).is_some_and(|ef| icc.leq(ef, gh));
            if !ok {
                dist3 = Some(format!("[{e},heh] missing or not below [{g},{h}]"));
            }
        }
    }
    results.insert("dist(iii)".into(), verdict(dist3));

    // ICC1 and its dual.
    let mut icc1 = None;
    let mut icc1d = None;
    for x in 0..n {
        let m = icc.morphisms[x];
        for e1 in 0..k {
            for e2 in 0..k {
                if icc1.is_none() && icc.omega(e1, m.dom) && icc.omega(e2, m.dom) && icc.omega_r(e1, e2) {
                    icc1 = icc1_instance(icc, omega, x, e1, e2).err().map(|w| format!("{}: {w}", name(x)));
                }
                if icc1d.is_none() && icc.omega(e1, m.cod) && icc.omega(e2, m.cod) && icc.omega_l(e1, e2) {
                    icc1d = icc1_dual_instance(icc, omega, x, e1, e2).err().map(|w| format!("{}: {w}", name(x)));
                }
            }
        }
    }
    results.insert("ICC1".into(), verdict(icc1));
    results.insert("ICC1-dual".into(), verdict(icc1d));

    // ICC2 over singular squares of idempotents.
    let of_elem: HashMap<usize, usize> = icc.idempotent.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut icc2 = None;
    for sq in singular_squares(&s.semigroup) {
        let (e, f, g, h) = (of_elem[&sq.e], of_elem[&sq.f], of_elem[&sq.g], of_elem[&sq.h]);
        let lhs = icc.dist(e, f).zip(icc.dist(f, h)).and_then(|(a, b)| icc.compose(omega, a, b));
        let rhs = icc.dist(e, g).zip(icc.dist(g, h)).and_then(|(a, b)| icc.compose(omega, a, b));
        if lhs.is_none() || lhs != rhs {
            icc2 = Some(format!("singular square ({e},{f},{g},{h}) does not commute"));
            break;
        }
    }
    results.insert("ICC2".into(), verdict(icc2));
    IccReport { results }
}

fn icc1_instance(icc: &Icc, omega: &CrossConnection, x: usize, e1: usize, e2: usize) -> Result<(), String> {
    let r1 = icc.restriction(e1, x).ok_or("restriction to e1 missing")?;
    let r2 = icc.restriction(e2, x).ok_or("restriction to e2 missing")?;
    let (f1, f2) = (icc.morphisms[r1].cod, icc.morphisms[r2].cod);
    if !icc.omega_r(f1, f2) {
        return Err(format!("{e1} ω^r {e2} but not {f1} ω^r {f2}"));
    }
    let e12 = icc.mul(e1, e2).ok_or("e1e2 is not an object")?;
    let f12 = icc.mul(f1, f2).ok_or("f1f2 is not an object")?;
    let r12 = icc.restriction(e12, x).ok_or("restriction to e1e2 missing")?;
    let lhs = icc.dist(e1, e12).and_then(|d| icc.compose(omega, d, r12));
    let rhs = icc.dist(f1, f12).and_then(|d| icc.compose(omega, r1, d));
    if lhs.is_none() || lhs != rhs {
        return Err(format!("[e1,e1e2](e1e2↿x) ≠ (e1↿x)[f1,f1f2] for e1={e1}, e2={e2}"));
    }
    Ok(())
}

fn icc1_dual_instance(icc: &Icc, omega: &CrossConnection, x: usize, f1: usize, f2: usize) -> Result<(), String> {
    let c1 = icc.corestriction(x, f1).ok_or("corestriction to f1 missing")?;
    let c2 = icc.corestriction(x, f2).ok_or("corestriction to f2 missing")?;
    let (e1, e2) = (icc.morphisms[c1].dom, icc.morphisms[c2].dom);
    if !icc.omega_l(e1, e2) {
        return Err(format!("{f1} ω^l {f2} but not {e1} ω^l {e2}"));
    }
    let f21 = icc.mul(f2, f1).ok_or("f2f1 is not an object")?;
    let e21 = icc.mul(e2, e1).ok_or("e2e1 is not an object")?;
    let c21 = icc.corestriction(x, f21).ok_or("corestriction to f2f1 missing")?;
    let lhs = icc.dist(f21, f1).and_then(|d| icc.compose(omega, c21, d));
    let rhs = icc.dist(e21, e1).and_then(|d| icc.compose(omega, d, c1));
    if lhs.is_none() || lhs != rhs {
        return Err(format!("(x⇂f2f1)[f2f1,f1] ≠ [e2e1,e1](x⇂f1) for f1={f1}, f2={f2}"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductiveFunctorReport {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub functor: Verdict,
    pub order_preserving: Verdict,
    pub distinguished: Verdict,
    pub restrictions: Verdict,
}

impl InductiveFunctorReport {
    pub fn all_pass(&self) -> bool {
        self.functor.passed() && self.order_preserving.passed() && self.distinguished.passed() && self.restrictions.passed()
    }
}

/// 𝓘(m): (c,d) ↦ (Fc, Gd), u ↦ F(u), with its inductive-functor checks.
pub fn inductive_functor(
    src: &Icc,
    src_omega: &CrossConnection,
    tgt: &Icc,
    tgt_omega: &CrossConnection,
    m: &CcMorphism,
) -> Result<InductiveFunctorReport, CrossError> {
    let objects = src
        .objects
        .iter()
        .map(|&(c, d)| {
            tgt.object_id(m.f.objects[c], m.g.objects[d]).ok_or(CrossError::PairNotInEOmega(m.f.objects[c], m.g.objects[d]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let morphisms = src
        .morphisms
        .iter()
        .map(|x| {
            tgt.find(objects[x.dom], objects[x.cod], m.f.morphisms[x.u])
                .ok_or_else(|| CrossError::CertificateFailure("image of an 𝓘 morphism is missing".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = src.morphisms.len();
    let functor = verdict((0..n).find_map(|x| {
        (0..n).find_map(|y| {
            let xy = src.compose(src_omega, x, y)?;
            (tgt.compose(tgt_omega, morphisms[x], morphisms[y]) != Some(morphisms[xy])).then(|| "composition not preserved".to_string())
        })
    }));
    let order_preserving = verdict(
        src.order
            .iter()
            .find(|&&(x, y)| !tgt.leq(morphisms[x], morphisms[y]))
            .map(|_| "order not preserved".to_string()),
    );
    let distinguished = verdict(
        src.distinguished
            .iter()
            .find(|(&(e, f), &d)| tgt.dist(objects[e], objects[f]) != Some(morphisms[d]))
            .map(|_| "distinguished morphism not preserved".to_string()),
    );
    let restrictions = verdict((0..n).find_map(|x| {
        (0..src.num_objects()).find_map(|e| {
            let r = src.restriction(e, x)?;
            (tgt.restriction(objects[e], morphisms[x]) != Some(morphisms[r])).then(|| "restriction not preserved".to_string())
        })
    }));
    Ok(InductiveFunctorReport { objects, morphisms, functor, order_preserving, distinguished, restrictions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccmorphism::omega_of_homomorphism;
    use crate::cross::{build_omega_s, OmegaOptions};
    use crate::preset::Preset;

    fn icc_of(p: Preset) -> (crate::cross::OmegaS, SOmega, Icc) {
        let om = build_omega_s(&p.build(), &OmegaOptions::default()).unwrap();
        let s = om.omega.linked_semigroup().unwrap();
        let icc = Icc::build(&om.omega, &s).unwrap();
        (om, s, icc)
    }

    #[test]
    fn z3_is_one_object_three_loops() {
        let (om, s, icc) = icc_of(Preset::Cyclic(3));
        assert_eq!((icc.num_objects(), icc.morphisms.len()), (1, 3));
        let r = check_icc_axioms(&icc, &om.omega, &s);
        assert!(r.all_pass(), "{:?}", r.first_failure());
    }

    #[test]
    fn axioms_hold_on_small_presets() {
        for p in [Preset::SemilatticeChain(3), Preset::BrandtB2, Preset::FullTransformation(2), Preset::LeftZero(2), Preset::AmpleA2] {
            let (om, s, icc) = icc_of(p.clone());
            let r = check_icc_axioms(&icc, &om.omega, &s);
            assert!(r.all_pass(), "{p}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn identity_gives_identity_inductive_functor() {
        let (om, _s, icc) = icc_of(Preset::BrandtB2);
        let id: Vec<usize> = (0..5).collect();
        let m = omega_of_homomorphism(&om, &om, &id).unwrap();
        let r = inductive_functor(&icc, &om.omega, &icc, &om.omega, &m).unwrap();
        assert!(r.all_pass());
        assert!(r.objects.iter().enumerate().all(|(i, &j)| i == j));
    }
}
