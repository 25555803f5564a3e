//! Morphisms of cross-connections and the semigroup maps they induce.

use serde::{Deserialize, Serialize};

use crate::axioms::Verdict;
use crate::category::{check_functor, Functor, SubobjectCategory};
use crate::cross::{CrossConnection, CrossError, OmegaS, SOmega};
use crate::dual::eta;
use crate::semigroup::{is_good_homomorphism, Elem, SemigroupMap};

/// m = (F, G) with F: C → C′ and G: D → D′.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcMorphism {
    pub f: Functor,
    pub g: Functor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcMorphismReport {
    pub m1: Verdict,
    pub m2: Verdict,
    pub m3: Verdict,
}

impl CcMorphismReport {
    pub fn all_pass(&self) -> bool {
        self.m1.passed() && self.m2.passed() && self.m3.passed()
    }
}

fn preserves_structure(src: &SubobjectCategory, tgt: &SubobjectCategory, f: &Functor) -> Option<String> {
    for m in src.morphisms() {
        let flags = tgt.flags(f.morphisms[m]);
        if src.is_inclusion(m) && !flags.inclusion {
            return Some(format!("inclusion {} not preserved", src.morphism_name(m)));
        }
        if src.flags(m).bimorphism && !flags.bimorphism {
            return Some(format!("bimorphism {} not preserved", src.morphism_name(m)));
        }
    }
    None
}

/// M1 (inclusions and bimorphisms preserved), M2 (γ(c,d) transported) and
/// M3 (transposes transported).
pub fn check_cc_morphism(
    src: &CrossConnection,
    tgt: &CrossConnection,
    m: &CcMorphism,
) -> Result<CcMorphismReport, CrossError> {
    check_functor(&src.c.category, &tgt.c.category, &m.f)?;
    check_functor(&src.d.category, &tgt.d.category, &m.g)?;
    let m1 = preserves_structure(&src.c.category, &tgt.c.category, &m.f)
        .or_else(|| preserves_structure(&src.d.category, &tgt.d.category, &m.g));

    let cc = &src.c.category;
    let mut m2 = None;
    for &(c, d) in src.e_omega() {
        let (fc, gd) = (m.f.objects[c], m.g.objects[d]);
        if !tgt.in_e_omega(fc, gd) {
            m2 = Some(format!("({}, {}) leaves E_Ω", cc.object_name(c), src.d.category.object_name(d)));
            break;
        }
        let (g, g1) = (src.c.cones.cone(src.gamma_cone(c, d)?), tgt.c.cones.cone(tgt.gamma_cone(fc, gd)?));
        if let Some(x) = cc.objects().find(|&x| m.f.morphisms[g.components[x]] != g1.components[m.f.objects[x]]) {
            m2 = Some(format!(
                "γ({}, {}) at {} is not transported",
                cc.object_name(c),
                src.d.category.object_name(d),
                cc.object_name(x)
            ));
            break;
        }
    }

    let mut m3 = None;
    'outer: for f in cc.morphisms() {
        let (c0, c) = (cc.dom(f), cc.cod(f));
        for &d1 in src.m_delta(c) {
            for &d in src.m_delta(c0) {
                let lhs = m.g.morphisms[src.transpose(f, d1, d)?];
                let rhs = tgt.transpose(m.f.morphisms[f], m.g.objects[d1], m.g.objects[d])?;
                if lhs != rhs {
                    m3 = Some(format!("transpose of {} is not transported", cc.morphism_name(f)));
                    break 'outer;
                }
            }
        }
    }
    let v = |w: Option<String>| w.map_or(Verdict::Pass, Verdict::Fail);
    Ok(CcMorphismReport { m1: v(m1), m2: v(m2), m3: v(m3) })
}

/// 𝕊m: (γ(c′,d)∗f°, δ(c,d′)∗(f‡)°) ↦ (γ(Fc′,Gd)∗(Ff)°, δ(Fc,Gd′)∗(G f‡)°),
/// checked independent of c′ and d′, multiplicative and good.
pub fn induced_map(
    src: &CrossConnection,
    s_src: &SOmega,
    tgt: &CrossConnection,
    s_tgt: &SOmega,
    m: &CcMorphism,
) -> Result<Vec<usize>, CrossError> {
    let cc = &src.c.category;
    let mut image = Vec::with_capacity(s_src.len());
    for (p, &(gamma, delta)) in s_src.pairs.iter().enumerate() {
        let (c, d) = s_src.anchors[p];
        let mut value: Option<usize> = None;
        for &c0 in src.m_gamma(d) {
            let anchor = src.gamma_cone(c0, d)?;
            let f = eta(cc, &src.c.cones, anchor, c, gamma);
            for &d1 in src.m_delta(c) {
                let t = src.transpose(f, d1, d)?;
                let expected = src.d.cones.star_epi(&src.d.category, src.delta_cone(c, d1)?, t)?;
                if expected != delta {
                    return Err(CrossError::CertificateFailure("linked pair does not match its transpose form".into()));
                }
                let (fc0, fc, gd, gd1) = (m.f.objects[c0], m.f.objects[c], m.g.objects[d], m.g.objects[d1]);
                let g1 = tgt.c.cones.star_epi(&tgt.c.category, tgt.gamma_cone(fc0, gd)?, m.f.morphisms[f])?;
                let h1 = tgt.d.cones.star_epi(&tgt.d.category, tgt.delta_cone(fc, gd1)?, m.g.morphisms[t])?;
                let q = s_tgt
                    .find(g1, h1)
                    .ok_or_else(|| CrossError::CertificateFailure("image pair is not linked".into()))?;
                match value {
                    Some(v) if v != q => {
                        return Err(CrossError::CertificateFailure("𝕊m depends on the choice of anchors".into()))
                    }
                    _ => value = Some(q),
                }
            }
        }
        image.push(value.ok_or_else(|| CrossError::NoSolution("empty M-set".into()))?);
    }
    let map = SemigroupMap::new(&s_src.semigroup, &s_tgt.semigroup, image.clone())?;
    map.check_homomorphism()?;
    if !is_good_homomorphism(&map)? {
        return Err(CrossError::CertificateFailure("𝕊m is not a good homomorphism".into()));
    }
    Ok(image)
}

/// Ωh = (F_h, G_h) for a good homomorphism h: S → S′, with
/// F_h(ρ(e,u,f)) = ρ(eh,uh,fh) and G_h(λ(e,u,f)) = λ(eh,uh,fh).
pub fn omega_of_homomorphism(src: &OmegaS, tgt: &OmegaS, h: &[Elem]) -> Result<CcMorphism, CrossError> {
    let map = SemigroupMap::new(&src.semigroup, &tgt.semigroup, h.to_vec())?;
    if !is_good_homomorphism(&map)? {
        return Err(CrossError::CertificateFailure("h is not a good homomorphism".into()));
    }
    let side = |a: &SubobjectCategory, b: &SubobjectCategory| -> Result<Functor, CrossError> {
        let (ab, bb) = (a.backing().expect("backed"), b.backing().expect("backed"));
        let objects = ab
            .object_rep
            .iter()
            .map(|&e| bb.object_of(h[e]).ok_or_else(|| CrossError::NoSolution("image of an idempotent".into())))
            .collect::<Result<_, _>>()?;
        let morphisms = ab
            .triples
            .iter()
            .map(|t| {
                bb.find(h[t.e], h[t.u], h[t.f])
                    .ok_or_else(|| CrossError::NoSolution(format!("image of ({}, {}, {})", t.e, t.u, t.f)))
            })
            .collect::<Result<_, _>>()?;
        Ok(Functor { objects, morphisms })
    };
    Ok(CcMorphism {
        f: side(&src.omega.c.category, &tgt.omega.c.category)?,
        g: side(&src.omega.d.category, &tgt.omega.d.category)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportReport {
    pub morphism: CcMorphismReport,
    pub induced: Vec<usize>,
    /// 𝕊(Ωh)∘φ′ = φ∘h on every element.
    pub agrees_with_h: bool,
}

/// Build Ωh, check M1–M3, compute 𝕊(Ωh) and compare it with h through φ.
pub fn transport_homomorphism(src: &OmegaS, tgt: &OmegaS, h: &[Elem]) -> Result<TransportReport, CrossError> {
    let m = omega_of_homomorphism(src, tgt, h)?;
    let morphism = check_cc_morphism(&src.omega, &tgt.omega, &m)?;
    let (s1, s2) = (src.omega.linked_semigroup()?, tgt.omega.linked_semigroup()?);
    let (phi1, phi2) = (src.phi(&s1)?, tgt.phi(&s2)?);
    let induced = induced_map(&src.omega, &s1, &tgt.omega, &s2, &m)?;
    let agrees_with_h = src.semigroup.elements().all(|a| induced[phi1[a]] == phi2[h[a]]);
    Ok(TransportReport { morphism, induced, agrees_with_h })
}
