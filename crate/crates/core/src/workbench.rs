//! The analysis battery and the full round-trip pipeline, producing every
//! artifact and certificate the command-line tool writes out.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::axioms::{check_consistent_axioms, principal_idempotent_cones, AxiomOptions, Verdict};
use crate::cross::{build_omega_s, CrossError, OmegaOptions, OmegaS, SOmega};
use crate::icc::{check_icc_axioms, Icc};
use crate::io::{CategoryJson, IccJson, OmegaJson, PhiJson, SOmegaJson, SemigroupJson};
use crate::semigroup::{
    biorder, green_classes, idempotent_generated, is_concordant, starred_relation, BiorderedSet, ConcordanceReport,
    EqRelation, FiniteSemigroup, GreenRelations, IdempotentGenerated, Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarredRelations {
    pub l_star: EqRelation,
    pub r_star: EqRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub semigroup: SemigroupJson,
    pub green: GreenRelations,
    pub starred: StarredRelations,
    pub concordance: ConcordanceReport,
    pub biorder: BiorderedSet,
    pub idempotent_generated: IdempotentGenerated,
    pub biorder_regular: bool,
}

pub fn analyze(s: &FiniteSemigroup) -> Analysis {
    let b = biorder(s);
    Analysis {
        semigroup: SemigroupJson::from_semigroup(s),
        green: green_classes(s),
        starred: StarredRelations { l_star: starred_relation(s, Side::Left), r_star: starred_relation(s, Side::Right) },
        concordance: is_concordant(s),
        biorder_regular: b.is_regular(),
        biorder: b,
        idempotent_generated: idempotent_generated(s),
    }
}

impl Analysis {
    pub fn render_text(&self) -> String {
        let c = &self.concordance;
        let names = self.semigroup.names.clone().unwrap_or_else(|| (0..c.order).map(|i| i.to_string()).collect());
        let classes = |r: &EqRelation| {
            r.classes
                .iter()
                .map(|cl| format!("{{{}}}", cl.iter().map(|&a| names[a].as_str()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        writeln!(out, "order            {}", c.order).unwrap();
        writeln!(out, "L-classes        {}", classes(&self.green.l)).unwrap();
        writeln!(out, "R-classes        {}", classes(&self.green.r)).unwrap();
        writeln!(out, "D-classes        {}", classes(&self.green.d)).unwrap();
        writeln!(out, "L*-classes       {}", classes(&self.starred.l_star)).unwrap();
        writeln!(out, "R*-classes       {}", classes(&self.starred.r_star)).unwrap();
        writeln!(out, "idempotents      {}", self.biorder.idempotents.iter().map(|&e| names[e].as_str()).collect::<Vec<_>>().join(" ")).unwrap();
        writeln!(out, "abundant         {}", c.abundant).unwrap();
        if let Some((a, side)) = c.abundance_failure {
            let rel = match side {
                Side::Left => "L*",
                Side::Right => "R*",
            };
            writeln!(out, "  witness        {rel}-class of {} has no idempotent", names[a]).unwrap();
        }
        writeln!(out, "IC               {}", c.idempotent_connected).unwrap();
        if let Some(a) = c.ic_failure {
            writeln!(out, "  witness        no connecting bijection for {}", names[a]).unwrap();
        }
        writeln!(out, "E-regular        {}", c.e_regular).unwrap();
        if let Some(w) = &c.e_regular_witness {
            let f: Vec<&str> = w.factors.iter().map(|&e| names[e].as_str()).collect();
            writeln!(out, "  witness        {} = {} is not regular in <E>", names[w.element], f.join("·")).unwrap();
        }
        writeln!(out, "concordant       {}", c.concordant).unwrap();
        writeln!(out, "regular          {}", c.regular).unwrap();
        writeln!(out, "weakly reductive {}", c.weakly_reductive).unwrap();
        writeln!(out, "biorder regular  {}", self.biorder_regular).unwrap();
        for w in &c.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct RoundtripBundle {
    pub analysis: Analysis,
    pub lcat: CategoryJson,
    pub rcat: CategoryJson,
    pub omega: OmegaJson,
    pub somega: SOmegaJson,
    pub phi: PhiJson,
    pub icc: IccJson,
    pub certificates: Vec<Certificate>,
    pub somega_order: usize,
    pub cone_counts: (usize, usize),
}

impl RoundtripBundle {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.verdict.passed())
    }

    pub fn render_report(&self) -> String {
        let mut out = String::new();
        writeln!(out, "|S| = {}, |SΩ| = {}", self.analysis.concordance.order, self.somega_order).unwrap();
        writeln!(out, "cones: {} left, {} right", self.cone_counts.0, self.cone_counts.1).unwrap();
        writeln!(out, "E_Ω: {} pairs; I(Ω): {} morphisms", self.icc.objects.len(), self.icc.morphisms.len()).unwrap();
        for c in &self.certificates {
            match &c.verdict {
                Verdict::Pass => writeln!(out, "PASS {}", c.name),
                Verdict::Fail(w) => writeln!(out, "FAIL {}: {w}", c.name),
                Verdict::Skipped(w) => writeln!(out, "SKIP {}: {w}", c.name),
            }
            .unwrap();
        }
        writeln!(out, "{}", if self.all_pass() { "all certificates pass" } else { "certificate failure" }).unwrap();
        out
    }
}

fn cert(name: &str, r: Result<(), String>) -> Certificate {
    Certificate { name: name.into(), verdict: r.map_or_else(Verdict::Fail, |_| Verdict::Pass) }
}

/// ω^l and ω^r of E_Ω, read both from the object orders and from products in
/// 𝕊Ω, against those of E(S) under e ↦ (Se, eS).
pub fn biorder_transport(om: &OmegaS, s: &SOmega) -> Result<(), String> {
    let sg = &om.semigroup;
    let b = biorder(sg);
    let (lc, rc) = (&om.omega.c.category, &om.omega.d.category);
    let (lb, rb) = (lc.backing().expect("backed"), rc.backing().expect("backed"));
    let pair = |e| -> Result<(usize, usize), String> {
        let p = (lb.object_of(e).ok_or("no left object")?, rb.object_of(e).ok_or("no right object")?);
        if !om.omega.in_e_omega(p.0, p.1) {
            return Err(format!("(S{0}, {0}S) is not in E_Ω", sg.name(e)));
        }
        Ok(p)
    };
    let pairs = b.idempotents.iter().map(|&e| pair(e)).collect::<Result<Vec<_>, _>>()?;
    let mut distinct = pairs.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != pairs.len() || distinct.len() != om.omega.e_omega().len() {
        return Err("e ↦ (Se, eS) is not a bijection onto E_Ω".into());
    }
    let ss = &s.semigroup;
    for (i, &(c, d)) in pairs.iter().enumerate() {
        for (j, &(c1, d1)) in pairs.iter().enumerate() {
            let (x, y) = (s.idempotent_of[&(c, d)], s.idempotent_of[&(c1, d1)]);
            let (e, f) = (sg.name(b.idempotents[i]), sg.name(b.idempotents[j]));
            if b.omega_l[i][j] != lc.leq(c, c1) || b.omega_l[i][j] != (ss.mul(x, y) == x) {
                return Err(format!("ω^l differs at ({e}, {f})"));
            }
            if b.omega_r[i][j] != rc.leq(d, d1) || b.omega_r[i][j] != (ss.mul(y, x) == x) {
                return Err(format!("ω^r differs at ({e}, {f})"));
            }
        }
    }
    Ok(())
}

/// Ω_S, 𝕊Ω_S, φ, the structure functors and 𝓘(Ω_S), with every certificate.
/// Fails only when S is not concordant or a construction step breaks.
pub fn roundtrip(s: &FiniteSemigroup, opts: &OmegaOptions) -> Result<RoundtripBundle, CrossError> {
    let analysis = analyze(s);
    let om = build_omega_s(s, opts)?;
    let mut certificates = Vec::new();
    let axiom_opts = AxiomOptions::default();
    for (name, side) in [("cc-axioms-left", &om.omega.c), ("cc-axioms-right", &om.omega.d)] {
        let cones = principal_idempotent_cones(&side.category);
        let r = check_consistent_axioms(&side.category, cones.as_deref(), &axiom_opts);
        certificates.push(cert(name, r.first_failure().map_or(Ok(()), |(k, w)| Err(format!("{k}: {w}")))));
    }
    certificates.push(cert("gamma-factorisation", om.check_gamma_factorisation().map_err(|e| e.to_string())));
    let so = om.omega.linked_semigroup()?;
    let phi = om.phi(&so);
    certificates.push(cert("phi-isomorphism", phi.as_ref().map(|_| ()).map_err(|e| e.to_string())));
    let report = om.omega.somega_report(&so)?;
    certificates.push(cert(
        "somega-concordant",
        if report.all_hold() { Ok(()) } else { Err(format!("{report:?}")) },
    ));
    let sf = om.omega.structure_functors(&so)?;
    certificates.push(cert("psi-left", sf.f_iso.clone()));
    certificates.push(cert("psi-right", sf.g_iso.clone()));
    certificates.push(cert("biorder-transport", biorder_transport(&om, &so)));
    let icc = Icc::build(&om.omega, &so)?;
    let icc_report = check_icc_axioms(&icc, &om.omega, &so);
    for (k, v) in &icc_report.results {
        certificates.push(Certificate { name: format!("icc-{}", k.to_lowercase()), verdict: v.clone() });
    }
    let phi_vec = phi.unwrap_or_default();
    let inverse = (0..so.len()).map(|x| crate::cross::phi_inverse(&phi_vec, x).unwrap_or(usize::MAX)).collect();
    let phi_json = PhiJson {
        isomorphism: certificates.iter().any(|c| c.name == "phi-isomorphism" && c.verdict.passed()),
        phi: phi_vec,
        inverse,
        gamma_factorisation: certificates.iter().any(|c| c.name == "gamma-factorisation" && c.verdict.passed()),
        f_omega_iso: sf.f_iso.is_ok(),
        g_omega_iso: sf.g_iso.is_ok(),
    };
    Ok(RoundtripBundle {
        analysis,
        lcat: CategoryJson::from_category(&om.omega.c.category),
        rcat: CategoryJson::from_category(&om.omega.d.category),
        omega: OmegaJson::from_omega(&om.omega),
        somega: SOmegaJson::from_somega(&so),
        phi: phi_json,
        icc: IccJson::from_icc(&icc),
        certificates,
        somega_order: so.len(),
        cone_counts: (om.omega.c.cones.len(), om.omega.d.cones.len()),
    })
}
